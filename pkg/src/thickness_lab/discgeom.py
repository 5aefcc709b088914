"""Exact unit-disc geometry backing the witness constructions.

Three verdict-style checks:

* cluster_bounds -- points of the closed unit disc whose sum has nearly
  maximal modulus are individually long and pairwise close.
* sector_rotations -- sets that each avoid a sector of width >= 2*pi/n can
  be rotated onto consecutive arcs so that nothing survives in all of them.
* net_check -- a set living near the unit circle whose fattening meets every
  sector of width theta is a (2*eps + delta + theta)-net for the circle.

The sector-meeting hypothesis is decided exactly by interval covering (no
angular grid); measured net radii come from a fine grid scan and are
reported together with the half-step slack of the grid.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels as kernels
from .constants import DEFAULT_NET_GRID, TAU_EXACT
from .errors import AnnulusError
from .groups import Character

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Sector:
    """Closed circular sector {r*e^(i*a) : r in [0,1], a in [start, start+width]}."""

    start_angle: float
    width: float

    def __post_init__(self):
        if self.width < 0:
            raise ValueError("sector width must be nonnegative")

    def contains_direction(self, angle: float, slack: float = 0.0) -> bool:
        return (angle - self.start_angle) % TWO_PI <= self.width + slack


@dataclass(frozen=True)
class DiscSet:
    """Finite set of points in the closed unit disc."""

    points: tuple[complex, ...]

    def __post_init__(self):
        pts = tuple(complex(z) for z in self.points)
        for z in pts:
            if abs(z) > 1.0 + TAU_EXACT:
                raise ValueError(f"point {z} lies outside the closed unit disc")
        object.__setattr__(self, "points", pts)

    def min_modulus(self) -> float:
        return min((abs(z) for z in self.points), default=0.0)


# ---------------------------------------------------------------------------
# near-maximal sums cluster


@dataclass(frozen=True)
class ClusterCheck:
    n: int
    eps: float
    sum_modulus: float
    precondition_ok: bool
    max_modulus_deficit: float        # max_k (1 - |z_k|)
    max_pair_distance: float          # max_{k,l} |z_k - z_l|
    modulus_bound: float              # n * eps
    pair_bound: float                 # 2 * n * sqrt(eps)
    conclusions_ok: bool


def cluster_bounds(zs: Sequence[complex], eps: float) -> ClusterCheck:
    """Check |z_k| >= 1 - n*eps and |z_k - z_l| <= 2*n*sqrt(eps) whenever
    |sum z_k| >= n*(1 - eps); verdict-style, never raises on content."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    zs = [complex(z) for z in zs]
    n = len(zs)
    if n == 0:
        raise ValueError("need at least one point")
    for z in zs:
        if abs(z) > 1.0 + TAU_EXACT:
            raise ValueError("points must lie in the closed unit disc")
    s = abs(sum(zs))
    pre = s >= n * (1.0 - eps) - TAU_EXACT
    deficit = max(1.0 - abs(z) for z in zs)
    pair = max(
        (abs(zs[i] - zs[j]) for i in range(n) for j in range(i + 1, n)), default=0.0
    )
    mb = n * eps
    pb = 2.0 * n * math.sqrt(eps)
    ok = deficit <= mb + TAU_EXACT and pair <= pb + TAU_EXACT
    return ClusterCheck(n, eps, s, pre, deficit, pair, mb, pb, pre and ok)


# ---------------------------------------------------------------------------
# rotating sector-avoiding sets to empty intersection


@dataclass(frozen=True)
class RotationResult:
    rotations: tuple[complex, ...]
    intersection_empty: bool | None   # None when no point sets were supplied


def sector_rotations(
    sectors: Sequence[Sector],
    disc_sets: Sequence[DiscSet] | None = None,
    tol: float = TAU_EXACT,
) -> RotationResult:
    """Rotations t_k = e^(i * sum_{l<k} width_l) * e^(-i * start_k).

    Each t_k moves the k-th avoided sector onto the arc
    [sum_{l<k} width_l, sum_{l<=k} width_l]; since the widths sum to at
    least 2*pi, every direction is excluded from some rotated set. When
    point sets are supplied, the empty intersection is verified exactly.
    """
    n = len(sectors)
    if n == 0:
        raise ValueError("need at least one sector")
    for sec in sectors:
        if sec.width < TWO_PI / n - TAU_EXACT:
            raise ValueError(
                f"sector width {sec.width:.6g} below required {TWO_PI / n:.6g}"
            )
    rotations = []
    acc = 0.0
    for sec in sectors:
        rotations.append(cmath.exp(1j * acc) * cmath.exp(-1j * sec.start_angle))
        acc += sec.width
    rotations = tuple(rotations)
    verified: bool | None = None
    if disc_sets is not None:
        if len(disc_sets) != n:
            raise ValueError("need one point set per sector")
        verified = _intersection_is_empty(rotations, disc_sets, tol)
    return RotationResult(rotations, verified)


def _intersection_is_empty(
    rotations: Sequence[complex], disc_sets: Sequence[DiscSet], tol: float
) -> bool:
    first = [rotations[0] * w for w in disc_sets[0].points]
    if not first:
        return True
    others = [
        np.array([rotations[k] * w for w in disc_sets[k].points], dtype=complex)
        for k in range(1, len(disc_sets))
    ]
    for p in first:
        in_all = True
        for pts in others:
            if pts.size == 0 or np.min(np.abs(pts - p)) > tol:
                in_all = False
                break
        if in_all:
            return False
    return True


# ---------------------------------------------------------------------------
# sector-meeting sets are nets


@dataclass(frozen=True)
class NetCheck:
    eps: float
    delta: float
    theta: float
    hypothesis_ok: bool
    bound: float                      # 2*eps + delta + theta
    measured_radius: float            # grid max of dist(circle point, W)
    measured_radius_upper: float      # grid max plus half-step chord slack
    within_bound: bool


def net_check(
    w: DiscSet,
    eps: float,
    theta: float,
    delta: float | None = None,
    grid: int = DEFAULT_NET_GRID,
) -> NetCheck:
    """Verify the sector-meeting hypothesis exactly and measure the net radius.

    The hypothesis ("the eps-fattening of W meets every sector of width
    theta") is decided by covering [0, 2*pi) with, per point w, the exact
    interval of sector start angles whose sector passes within eps of w.
    """
    if not w.points:
        raise ValueError("point set must be nonempty")
    if eps < 0 or theta < 0:
        raise ValueError("eps and theta must be nonnegative")
    min_mod = w.min_modulus()
    if delta is None:
        delta = max(0.0, 1.0 - min_mod)
    elif min_mod < 1.0 - delta - TAU_EXACT:
        raise AnnulusError(
            f"point of modulus {min_mod:.6g} below annulus floor {1.0 - delta:.6g}"
        )

    hypothesis = _sectors_all_met(w.points, eps, theta)
    measured = float(kernels.net_scan(np.array(w.points, dtype=complex), grid))
    slack = 2.0 * math.sin(math.pi / (2 * grid))
    bound = 2.0 * eps + delta + theta
    return NetCheck(
        eps=eps,
        delta=delta,
        theta=theta,
        hypothesis_ok=hypothesis,
        bound=bound,
        measured_radius=measured,
        measured_radius_upper=measured + slack,
        within_bound=(not hypothesis) or measured <= bound + TAU_EXACT,
    )


def _sectors_all_met(points: Sequence[complex], eps: float, theta: float) -> bool:
    """True iff for every start angle phi the sector of width theta comes
    within eps of some point. Exact interval covering over start angles."""
    intervals: list[tuple[float, float]] = []
    for z in points:
        rho = min(1.0, abs(z))
        if rho <= eps + TAU_EXACT:
            return True  # the point is eps-close to the apex of every sector
        alpha = math.atan2(z.imag, z.real) % TWO_PI
        beta = math.asin(min(1.0, eps / rho)) if eps > 0 else 0.0
        lo = alpha - theta - beta
        hi = alpha + beta
        if hi - lo >= TWO_PI - TAU_EXACT:
            return True
        intervals.append((lo % TWO_PI, (hi - lo)))
    if not intervals:
        return False
    intervals.sort()
    # wraparound covering check with closed-interval slack
    start0, len0 = intervals[0]
    reach = start0 + len0
    for s, ln in intervals[1:]:
        if s > reach + TAU_EXACT:
            return False
        reach = max(reach, s + ln)
    # close the wrap: the last reach must link back to the first interval
    return reach >= start0 + TWO_PI - TAU_EXACT


# ---------------------------------------------------------------------------
# root-of-unity images as nets


def roots_chord_radius(order: int) -> float:
    """Certified net radius for the set of m-th roots of unity: the chord
    2*sin(pi/m) between adjacent roots (2 for the one-point set)."""
    if order < 2:
        return 2.0
    return 2.0 * math.sin(math.pi / order)


def roots_exact_net_radius(order: int) -> float:
    """Tight farthest-point distance from the circle to the m-th roots."""
    if order < 1:
        raise ValueError("order must be positive")
    return 2.0 * math.sin(math.pi / (2 * order))


def image_is_net(chi: Character, eps: float) -> bool:
    """True iff the value set of chi (roots of unity of its order) is an
    eps-net for the circle under the certified chord radius."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    return roots_chord_radius(chi.order()) <= eps + TAU_EXACT


# ---------------------------------------------------------------------------
# randomized soundness suites


@dataclass(frozen=True)
class SuiteResult:
    name: str
    trials: int
    violations: int
    seed: int
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.violations == 0


def run_cluster_suite(trials: int, seed: int) -> SuiteResult:
    """Random near-aligned disc tuples satisfying the modulus precondition;
    count violations of either conclusion."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0x1]))
    violations = 0
    notes = []
    for t in range(trials):
        n = int(rng.integers(2, 7))
        base = math.tau * rng.random()
        spread = 0.6 * rng.random()
        radial = 0.4 * rng.random()
        zs = []
        for _ in range(n):
            ang = base + spread * (rng.random() - 0.5)
            rad = 1.0 - radial * rng.random()
            zs.append(rad * cmath.exp(1j * ang))
        s = abs(sum(zs))
        eps = max(1e-12, 1.0 - s / n + 1e-12)
        check = cluster_bounds(zs, eps)
        if not (check.precondition_ok and check.conclusions_ok):
            violations += 1
            if len(notes) < 3:
                notes.append(f"trial {t}: eps={eps:.3g}")
    return SuiteResult("cluster_bounds", trials, violations, seed, tuple(notes))


def run_rotation_suite(trials: int, seed: int, cloud: int = 48) -> SuiteResult:
    """Random sectors (widths >= 2*pi/n) and random avoiding point clouds;
    count trials where the rotated sets still intersect."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0x2]))
    violations = 0
    notes = []
    for t in range(trials):
        n = int(rng.integers(1, 7))
        sectors = []
        sets = []
        for _ in range(n):
            width = (TWO_PI / n) + (TWO_PI - TWO_PI / n) * rng.random()
            start = math.tau * rng.random()
            sec = Sector(start, width)
            pts = []
            for _ in range(cloud):
                ang = math.tau * rng.random()
                rad = 0.05 + 0.95 * rng.random()
                if not sec.contains_direction(ang, slack=1e-9):
                    pts.append(rad * cmath.exp(1j * ang))
            sectors.append(sec)
            sets.append(DiscSet(tuple(pts)))
        result = sector_rotations(sectors, sets)
        if result.intersection_empty is False:
            violations += 1
            if len(notes) < 3:
                notes.append(f"trial {t}: n={n}")
    return SuiteResult("sector_rotations", trials, violations, seed, tuple(notes))


def run_net_suite(trials: int, seed: int, grid: int = 512) -> SuiteResult:
    """Random annulus clouds with theta set to the realized angular gap;
    count trials whose measured radius exceeds 2*eps + delta + theta."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0x3]))
    violations = 0
    notes = []
    for t in range(trials):
        count = int(rng.integers(4, 48))
        delta = 0.3 * rng.random()
        eps = 0.2 * rng.random()
        angles = np.sort(math.tau * rng.random(count))
        radii = 1.0 - delta * rng.random(count)
        pts = tuple(r * cmath.exp(1j * a) for r, a in zip(radii, angles))
        gaps = np.diff(np.concatenate([angles, [angles[0] + TWO_PI]]))
        theta = float(gaps.max()) + 1e-9
        check = net_check(DiscSet(pts), eps, theta, delta=delta, grid=grid)
        if not check.hypothesis_ok or not check.within_bound:
            violations += 1
            if len(notes) < 3:
                notes.append(
                    f"trial {t}: hyp={check.hypothesis_ok} "
                    f"r={check.measured_radius:.4g} bound={check.bound:.4g}"
                )
    return SuiteResult("net_check", trials, violations, seed, tuple(notes))


def run_all_suites(trials: int, seed: int) -> tuple[SuiteResult, ...]:
    return (
        run_cluster_suite(trials, seed),
        run_rotation_suite(trials, seed),
        run_net_suite(trials, seed),
    )
