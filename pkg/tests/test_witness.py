import itertools
import math

import numpy as np
import pytest

from thickness_lab.errors import (
    AlignmentError,
    ConstructionError,
    FreshCoordinateError,
    FrequencyHeadroomError,
    InsufficientTailsError,
)
from thickness_lab.groups import parse_group_spec
from thickness_lab.trigpoly import TrigPolynomial, random_unit_polynomial, sup_norm
from thickness_lab.witness import (
    GroupSpace,
    LpSpace,
    thickness_lower_bound,
    witness_block_basis,
    witness_fresh_coordinate,
    witness_general,
    witness_high_frequency,
    witness_lp,
)


def _rademacher_group():
    g = parse_group_spec("Z2^12")
    window = [g.character(tuple(1 if j == i else 0 for j in range(12))) for i in range(12)]
    head = [
        g.character(tuple(e) + (0,) * 8)
        for e in itertools.product(range(2), repeat=4)
    ]
    return g, window, head


# ---------------------------------------------------------------------------
# sequence-space witness


def test_lp_basis_example():
    cert = witness_lp([{0: 1.0}], p=1.0)
    assert cert.per_function[0].achieved == pytest.approx(2.0, abs=1e-15)
    assert cert.witness == 1


def test_lp_orthogonal_distance():
    vec = {i: 1 / math.sqrt(10) for i in range(10)}
    cert = witness_lp([vec], p=2.0)
    assert cert.per_function[0].achieved == pytest.approx(math.sqrt(2.0), abs=1e-12)
    assert cert.witness == 10


@pytest.mark.parametrize("p", [1.0, 4.0, 16.0])
def test_lp_random_family_exact(p):
    rng = np.random.default_rng(11)
    fam = []
    for _ in range(20):
        size = int(rng.integers(1, 8))
        idx = rng.choice(30, size=size, replace=False)
        vals = rng.normal(size=size) + 1j * rng.normal(size=size)
        norm = float(np.sum(np.abs(vals) ** p) ** (1.0 / p))
        fam.append({int(i): complex(v / norm) for i, v in zip(idx, vals)})
    cert = witness_lp(fam, p=p)
    for bound in cert.per_function:
        assert abs(bound.achieved - 2.0 ** (1.0 / p)) <= 1e-12


def test_lp_rejects_non_unit():
    with pytest.raises(ConstructionError):
        witness_lp([{0: 0.5}], p=1.0)


# ---------------------------------------------------------------------------
# fresh coordinate


def test_fresh_coordinate_z2xz2():
    g = parse_group_spec("Z2 x Z2")
    f = TrigPolynomial.from_character(g.character((1, 0)))
    cert = witness_fresh_coordinate([f], [g.character((0, 1))], 0.5)
    assert cert.min_achieved == pytest.approx(2.0, abs=1e-12)
    assert cert.parameters["fresh_axis"] == 1


def test_fresh_coordinate_z4xz8_exact():
    g = parse_group_spec("Z4 x Z8")
    f = TrigPolynomial.from_character(g.character((1, 0)))
    cert = witness_fresh_coordinate([f], [g.character((0, 1))], 0.5)
    assert cert.min_achieved == pytest.approx(2.0, abs=1e-12)
    assert all(step["exact"] for step in cert.parameters["alignment"])


def test_fresh_coordinate_unsolvable_root():
    # target phase i cannot be realized in the two-point image of a Z2 factor
    g = parse_group_spec("Z2 x Z2")
    f = TrigPolynomial(g, {(1, 0): 1j})
    with pytest.raises(AlignmentError) as err:
        witness_fresh_coordinate([f], [g.character((0, 1))], 0.5)
    assert err.value.defect == pytest.approx(math.sqrt(2.0), abs=1e-9)


def test_fresh_coordinate_none_available():
    g = parse_group_spec("Z4")
    f = TrigPolynomial.from_character(g.character((1,)))
    with pytest.raises(FreshCoordinateError):
        witness_fresh_coordinate([f], [g.character((2,))], 0.5)


# ---------------------------------------------------------------------------
# high frequency


def test_high_frequency_single_character():
    g = parse_group_spec("T(N=256,d=16)")
    f = TrigPolynomial.from_character(g.character((1,)))
    window = [g.character((16,))]
    cert = witness_high_frequency([f], window, 0.5)
    assert cert.min_achieved == pytest.approx(2.0, abs=1e-9)


def test_high_frequency_fejer_family():
    g = parse_group_spec("T(N=1024,d=64)")
    degree = 4
    coeffs = {
        (j % 1024,): 1.0 - abs(j) / (degree + 1) for j in range(-degree, degree + 1)
    }
    fejer = TrigPolynomial(g, coeffs)
    fejer = fejer * (1.0 / sup_norm(fejer).hi)
    window = [g.character((3**k % 1024,)) for k in range(7)]
    cert = witness_high_frequency([fejer], window, 0.1)
    assert cert.min_achieved >= 1.9
    assert cert.parameters["bernstein_degree"] == degree
    assert abs(cert.parameters["chosen_frequency"]) >= cert.parameters["required_abs_frequency"]


def test_high_frequency_headroom_error():
    g = parse_group_spec("T(N=1024,d=64)")
    f = random_unit_polynomial([g.character((a % 1024,)) for a in range(-8, 9)], seed=0)
    with pytest.raises(FrequencyHeadroomError) as err:
        witness_high_frequency([f], [g.character((2,))], 0.01)
    assert err.value.required > 2


def test_high_frequency_needs_standin():
    g = parse_group_spec("Z8")
    f = TrigPolynomial.from_character(g.character((1,)))
    with pytest.raises(ConstructionError):
        witness_high_frequency([f], [g.character((3,))], 0.5)


# ---------------------------------------------------------------------------
# block basis


def test_block_basis_two_random_members():
    g, window, head = _rademacher_group()
    fam = [random_unit_polynomial(head, np.random.SeedSequence([21, i])) for i in range(2)]
    cert = witness_block_basis(fam, window, 0.25)
    assert cert.min_achieved >= 1.75
    assert cert.parameters["head_coordinates"] == [0, 1, 2, 3]
    assert sup_norm(cert.witness).lo == pytest.approx(1.0, abs=1e-9)


def test_block_basis_single_character_family():
    g, window, _ = _rademacher_group()
    fam = [TrigPolynomial.from_character(window[0])]
    cert = witness_block_basis(fam, window, 0.3)
    assert cert.min_achieved == pytest.approx(2.0, abs=1e-9)


def test_block_basis_degenerate_eps():
    g, window, head = _rademacher_group()
    fam = [random_unit_polynomial(head, np.random.SeedSequence([5, 0]))]
    cert = witness_block_basis(fam, window, 2.5)
    assert cert.min_achieved >= -0.5


def test_block_basis_insufficient_tails():
    g = parse_group_spec("Z2 x Z2")
    window = [g.character((1, 0)), g.character((0, 1))]
    fam = [random_unit_polynomial(
        [g.character(e) for e in itertools.product(range(2), repeat=2)],
        seed=1,
    )]
    with pytest.raises(InsufficientTailsError):
        witness_block_basis(fam, window, 0.25)


def test_block_basis_modulation_invariance():
    g, window, head = _rademacher_group()
    fam = [random_unit_polynomial(head, np.random.SeedSequence([77, i])) for i in range(3)]
    cert = witness_block_basis(fam, window, 0.2)
    chi = window[0]  # supported inside the head coordinates
    fam_mod = [f.modulate(chi) for f in fam]
    window_mod = [chi * lam for lam in window]
    cert_mod = witness_block_basis(fam_mod, window_mod, 0.2)
    for a, b in zip(cert.per_function, cert_mod.per_function):
        assert a.achieved == pytest.approx(b.achieved, abs=1e-9)


# ---------------------------------------------------------------------------
# general dispatch


def test_general_tower_case_two_z9():
    g = parse_group_spec("Z9")
    f = TrigPolynomial.from_character(g.character((3,)))
    window = [g.character((1,)), g.character((3,))]
    cert = witness_general([f], window, 1.8)
    d = cert.parameters["dispatch"]
    assert cert.method == "tower"
    assert d["case"] == 2
    assert d["l1"] > d["l0"] ** 2
    assert cert.parameters["coset_order"] == 3
    assert cert.parameters["chord_net_radius"] == pytest.approx(math.sqrt(3.0))
    assert cert.min_achieved >= 2.0 - 1.8 - math.sqrt(3.0)
    assert cert.min_achieved == pytest.approx(2.0, abs=1e-9)


def test_general_translation_identity_holds():
    # the tower alignment point differs from the peak by an annihilator
    # member, so the family values agree at both points
    g = parse_group_spec("Z9")
    f = TrigPolynomial(g, {(3,): 0.6, (6,): 0.8})
    f = f * (1.0 / sup_norm(f).hi)
    window = [g.character((1,)), g.character((3,))]
    cert = witness_general([f], window, 1.8)
    _, x_star = f.max_point()
    point = g.element(cert.per_function[0].point)
    assert abs(f.evaluate(point) - f.evaluate(x_star)) < 1e-9


def test_general_delegates_to_structural_case():
    g, window, head = _rademacher_group()
    fam = [random_unit_polynomial(head, np.random.SeedSequence([13, i])) for i in range(3)]
    cert = witness_general(fam, window, 0.25)
    assert cert.parameters["dispatch"]["case"] == 1
    assert cert.min_achieved >= 1.75


def test_general_constant_family():
    g = parse_group_spec("Z4")
    fam = [TrigPolynomial.constant(g)]
    cert = witness_general(fam, [g.character((1,))], 0.5)
    assert cert.min_achieved == pytest.approx(2.0, abs=1e-12)


def test_general_window_exhausted():
    g = parse_group_spec("Z4")
    f = TrigPolynomial.from_character(g.character((1,)))
    with pytest.raises(ConstructionError):
        witness_general([f], [g.character((1,))], 0.5)


# ---------------------------------------------------------------------------
# trials


def test_thickness_lp_report():
    report = thickness_lower_bound(LpSpace(p=1.0, family_size=5), 0.0, trials=3, seed=7)
    assert report.min_achieved == pytest.approx(2.0, abs=1e-12)
    assert report.ok
    again = thickness_lower_bound(LpSpace(p=1.0, family_size=5), 0.0, trials=3, seed=7)
    assert again.min_achieved == report.min_achieved
    assert len(report.certificates) == 3


def test_thickness_group_report():
    g, window, head = _rademacher_group()
    space = GroupSpace(
        group=g,
        window=tuple(window),
        family_chars=tuple(head),
        family_size=2,
        method="block-basis",
    )
    report = thickness_lower_bound(space, 0.25, trials=2, seed=5)
    assert report.ok
    assert report.min_achieved >= 1.75


def test_general_delegates_to_high_frequency_on_standin():
    g = parse_group_spec("T(N=4096,d=256)")
    fam_chars = [g.character((a % 4096,)) for a in range(-6, 7)]
    fam = [random_unit_polynomial(fam_chars, np.random.SeedSequence([31, i])) for i in range(2)]
    window = [g.character((3**k,)) for k in range(8)]
    cert = witness_general(fam, window, 0.1)
    assert cert.method == "high-frequency"
    assert cert.parameters["dispatch"]["case"] == 1
    assert cert.min_achieved >= 1.9


def test_thickness_threads_deterministic(monkeypatch):
    g, window, head = _rademacher_group()
    space = GroupSpace(
        group=g,
        window=tuple(window),
        family_chars=tuple(head),
        family_size=2,
        method="block-basis",
    )
    sequential = thickness_lower_bound(space, 0.25, trials=4, seed=9)
    monkeypatch.setenv("THICKNESS_LAB_THREADS", "4")
    threaded = thickness_lower_bound(space, 0.25, trials=4, seed=9)
    assert threaded.min_achieved == sequential.min_achieved
    assert [c.min_achieved for c in threaded.certificates] == [
        c.min_achieved for c in sequential.certificates
    ]


def test_thickness_records_trial_errors():
    g = parse_group_spec("Z2 x Z2")
    all_chars = [g.character(e) for e in itertools.product(range(2), repeat=2)]
    space = GroupSpace(
        group=g,
        window=tuple(all_chars[1:]),
        family_chars=tuple(all_chars),
        family_size=1,
        method="block-basis",
    )
    report = thickness_lower_bound(space, 0.25, trials=2, seed=1)
    assert len(report.errors) == 2
    assert not report.certificates
    assert not report.ok
