import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thickness_lab.discgeom import (
    DiscSet,
    Sector,
    cluster_bounds,
    image_is_net,
    net_check,
    roots_chord_radius,
    roots_exact_net_radius,
    run_all_suites,
    sector_rotations,
)
from thickness_lab.errors import AnnulusError
from thickness_lab.groups import parse_group_spec

TAU = 1e-9


def test_cluster_bounds_aligned_pair():
    check = cluster_bounds([1.0, 1.0], 1e-9)
    assert check.precondition_ok and check.conclusions_ok
    assert check.max_pair_distance == 0.0


def test_cluster_bounds_worked_example():
    eps = 1 - math.sqrt(5) / 3
    check = cluster_bounds([1, 1, 1j], eps)
    assert check.precondition_ok
    assert check.sum_modulus == pytest.approx(math.sqrt(5))
    assert check.max_modulus_deficit == pytest.approx(0.0)
    assert check.max_pair_distance == pytest.approx(math.sqrt(2))
    assert check.pair_bound == pytest.approx(6 * math.sqrt(eps))
    assert check.conclusions_ok


def test_cluster_bounds_precondition_verdict():
    check = cluster_bounds([1.0, -1.0], 0.1)
    assert not check.precondition_ok


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_cluster_bounds_random(data):
    n = data.draw(st.integers(2, 6))
    base = data.draw(st.floats(0, 2 * math.pi))
    zs = []
    for _ in range(n):
        ang = base + data.draw(st.floats(-0.4, 0.4))
        rad = data.draw(st.floats(0.75, 1.0))
        zs.append(rad * cmath.exp(1j * ang))
    eps = max(1e-12, 1 - abs(sum(zs)) / n + 1e-12)
    check = cluster_bounds(zs, eps)
    assert check.precondition_ok and check.conclusions_ok


def test_sector_rotations_formula():
    res = sector_rotations([Sector(0.0, math.pi), Sector(0.0, math.pi)])
    assert abs(res.rotations[0] - 1) < TAU
    assert abs(res.rotations[1] - cmath.exp(1j * math.pi)) < TAU


def test_sector_rotations_single_full_sector():
    res = sector_rotations([Sector(0.0, 2 * math.pi)], [DiscSet(())])
    assert abs(res.rotations[0] - 1) < TAU
    assert res.intersection_empty is True


def test_sector_rotations_width_error():
    with pytest.raises(ValueError):
        sector_rotations([Sector(0.0, math.pi), Sector(0.0, 0.5)])


def test_net_check_roots_of_unity():
    for m in (3, 6, 12, 40):
        roots = DiscSet(tuple(cmath.exp(2j * math.pi * k / m) for k in range(m)))
        check = net_check(roots, 0.0, 2 * math.pi / m + 1e-12, delta=0.0)
        assert check.hypothesis_ok
        assert check.within_bound
        assert check.measured_radius == pytest.approx(roots_exact_net_radius(m), abs=1e-3)
        assert check.measured_radius <= roots_chord_radius(m) + TAU
        assert check.bound == pytest.approx(2 * math.pi / m, abs=1e-9)


def test_net_check_single_point_fails_hypothesis():
    check = net_check(DiscSet((1 + 0j,)), 0.0, 1.0, delta=0.0)
    assert not check.hypothesis_ok
    full = net_check(DiscSet((1 + 0j,)), 0.0, 2 * math.pi, delta=0.0)
    assert full.hypothesis_ok


def test_net_check_annulus_violation():
    with pytest.raises(AnnulusError):
        net_check(DiscSet((0.3 + 0j, 1.0 + 0j)), 0.1, 1.0, delta=0.1)


def test_disc_set_validation():
    with pytest.raises(ValueError):
        DiscSet((1.5 + 0j,))


def test_image_is_net_examples():
    g = parse_group_spec("Z6 x Z4 x Z5")
    chi6 = parse_group_spec("Z6").character((1,))
    assert image_is_net(chi6, 2.0)
    assert image_is_net(chi6, 1.0)  # 2 sin(pi/6) = 1
    chi4 = parse_group_spec("Z4").character((1,))
    assert not image_is_net(chi4, 0.5)  # 2 sin(pi/4) > 0.5
    # soundness vs brute force: whenever the certified radius accepts,
    # the true farthest distance also fits
    for m, eps in [(2, 2.0), (3, 1.8), (8, 0.8), (60, 0.2)]:
        chi = parse_group_spec(f"Z{m}").character((1,))
        if image_is_net(chi, eps):
            image = chi.image()
            worst = max(
                min(abs(cmath.exp(2j * math.pi * t / 720) - w) for w in image)
                for t in range(720)
            )
            assert worst <= eps + 1e-6


def test_suites_zero_violations():
    for res in run_all_suites(300, seed=123):
        assert res.ok, res
        assert res.trials == 300
        assert res.seed == 123
