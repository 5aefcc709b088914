"""Desk-scale spectrum diagnostics: Sidon-type ratios, p-vs-r norm growth,
basis lower constants, lacunarity, and rank-one norm-identity defects.

Every estimator is a one-sided bound produced by a seeded, budgeted search
over structured candidates (all-ones, triangular, alternating-sign,
Rudin-Shapiro-style patterns) plus random coefficient vectors; enlarging
the budget can only improve the bound. No boolean "the set has property X"
is ever emitted: the underlying constants are suprema over infinite
families and only the searched direction is certified.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .constants import TAU_EXACT
from .errors import SpectrumWindowError
from .groups import Character, FiniteAbelianGroup, GroupElement
from .trigpoly import TrigPolynomial, lp_norm, sup_norm

_STRUCTURED_CAP = 4096


@dataclass(frozen=True)
class SpectrumWindow:
    """A concrete finite character window with an optional integer labelling."""

    group: FiniteAbelianGroup
    kind: str
    chars: tuple[Character, ...]
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        if not self.chars:
            raise SpectrumWindowError("window must contain at least one character")
        seen = set()
        for c in self.chars:
            if c.exponents in seen:
                raise SpectrumWindowError(f"duplicate character {c.exponents}")
            seen.add(c.exponents)

    def __len__(self) -> int:
        return len(self.chars)

    def head(self, n: int) -> "SpectrumWindow":
        labels = self.labels[:n] if self.labels else None
        return SpectrumWindow(self.group, f"{self.kind}[:{n}]", self.chars[:n], labels)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def explicit(group: FiniteAbelianGroup, exponents: Sequence[Sequence[int]]) -> "SpectrumWindow":
        return SpectrumWindow(
            group, "explicit", tuple(group.character(e) for e in exponents)
        )

    @staticmethod
    def interval(group: FiniteAbelianGroup, lo: int, hi: int, axis: int = 0) -> "SpectrumWindow":
        if hi < lo:
            raise SpectrumWindowError("interval bounds out of order")
        if hi - lo + 1 > group.factors[axis]:
            raise SpectrumWindowError("interval longer than the cyclic factor")
        chars = []
        for a in range(lo, hi + 1):
            exps = [0] * group.rank
            exps[axis] = a
            chars.append(group.character(exps))
        return SpectrumWindow(group, f"interval[{lo},{hi}]", tuple(chars), tuple(range(lo, hi + 1)))

    @staticmethod
    def lacunary(group: FiniteAbelianGroup, base: int, count: int, axis: int = 0) -> "SpectrumWindow":
        if base < 2 or count < 1:
            raise SpectrumWindowError("need base >= 2 and count >= 1")
        labels = [base**k for k in range(count)]
        chars = []
        for lab in labels:
            exps = [0] * group.rank
            exps[axis] = lab % group.factors[axis]
            chars.append(group.character(exps))
        return SpectrumWindow(group, f"lacunary({base},{count})", tuple(chars), tuple(labels))

    @staticmethod
    def random_window(group: FiniteAbelianGroup, size: int, seed: int) -> "SpectrumWindow":
        rng = np.random.default_rng(np.random.SeedSequence([seed, 0x5EED]))
        seen: set[tuple[int, ...]] = set()
        chars = []
        guard = 0
        while len(chars) < size:
            exps = tuple(int(rng.integers(0, m)) for m in group.factors)
            guard += 1
            if guard > 100 * size + 100:
                raise SpectrumWindowError("window size exceeds the number of characters")
            if exps in seen:
                continue
            seen.add(exps)
            chars.append(group.character(exps))
        return SpectrumWindow(group, f"random({size})", tuple(chars))

    @staticmethod
    def rademacher(group: FiniteAbelianGroup) -> "SpectrumWindow":
        chars = []
        for j in range(group.rank):
            exps = [0] * group.rank
            exps[j] = 1
            chars.append(group.character(exps))
        return SpectrumWindow(group, "rademacher", tuple(chars), tuple(range(1, group.rank + 1)))


def _poly(window: SpectrumWindow, vec: Sequence[complex]) -> TrigPolynomial:
    return TrigPolynomial(
        window.group, {c.exponents: v for c, v in zip(window.chars, vec)}
    )


def _witness_id(f: TrigPolynomial) -> str:
    blob = repr(sorted((k, round(v.real, 12), round(v.imag, 12)) for k, v in f.coeffs.items()))
    return hashlib.sha1(blob.encode()).hexdigest()[:10]


def rudin_shapiro_signs(n: int) -> list[int]:
    """Signs (-1)^(number of adjacent 1-1 pairs in the binary index)."""
    out = []
    for k in range(n):
        pairs = bin(k & (k >> 1)).count("1")
        out.append(-1 if pairs % 2 else 1)
    return out


def _structured_vectors(n: int) -> list[tuple[str, list[complex]]]:
    triangle = [1.0 - abs(2 * i - (n - 1)) / (n + 1) for i in range(n)]
    return [
        ("ones", [1.0] * n),
        ("triangle", triangle),
        ("alternating", [(-1.0) ** i for i in range(n)]),
        ("rudin-shapiro", [complex(s) for s in rudin_shapiro_signs(n)]),
    ]


def _random_vectors(n: int, budget: int, seed: int, complex_ok: bool):
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0xCA9D]))
    for i in range(budget):
        if complex_ok:
            if i % 3 == 0:
                yield rng.normal(size=n) + 1j * rng.normal(size=n)
            elif i % 3 == 1:
                yield np.exp(2j * np.pi * rng.random(n))
            else:
                yield rng.choice([-1.0, 1.0], size=n)
        else:
            if i % 2 == 0:
                yield rng.choice([-1.0, 1.0], size=n)
            else:
                yield rng.normal(size=n)


@dataclass(frozen=True)
class SearchResult:
    value: float
    witness: TrigPolynomial
    witness_id: str
    candidates_tested: int


def lambda_ratio(
    window: SpectrumWindow, r: float, p: float, budget: int, seed: int
) -> SearchResult:
    """Best found ||f||_p / ||f||_r over window polynomials; a lower bound
    for the equivalence constant between the two (quasi-)norms."""
    if not (0 < r < p):
        raise ValueError("need 0 < r < p")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    n = len(window)
    best = None
    tested = 0
    vectors = [v for _, v in _structured_vectors(n)]
    vectors += list(_random_vectors(n, budget, seed, complex_ok=True))
    for vec in vectors:
        f = _poly(window, vec)
        denom = lp_norm(f, r).lo
        if denom <= TAU_EXACT:
            continue
        ratio = lp_norm(f, p).lo / denom
        tested += 1
        if best is None or ratio > best[0]:
            best = (ratio, f)
    ratio, f = best
    return SearchResult(ratio, f, _witness_id(f), tested)


def sidon_lower(window: SpectrumWindow, budget: int, seed: int) -> SearchResult:
    """Best found sum|f^(gamma)| / ||f||_inf over real coefficient vectors.

    Real vectors (exhaustive sign patterns when 2^|window| fits the budget
    cap, otherwise sampled signs plus structured patterns) keep independent
    windows at ratio exactly 1; the certified sup-norm upper end makes each
    ratio a valid lower bound for the Sidon constant.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    n = len(window)
    vectors: list[Sequence[complex]] = [v for _, v in _structured_vectors(n)]
    if 2**n <= max(_STRUCTURED_CAP, budget):
        for mask in range(2 ** (n - 1)):  # global sign is immaterial
            vectors.append([1.0 if (mask >> i) & 1 == 0 else -1.0 for i in range(n)])
    else:
        rng = np.random.default_rng(np.random.SeedSequence([seed, 0x51D0]))
        for _ in range(budget):
            vectors.append(rng.choice([-1.0, 1.0], size=n))
        vectors.append(np.abs(rng.normal(size=n)))
    best = None
    tested = 0
    for vec in vectors:
        f = _poly(window, vec)
        denom = sup_norm(f).hi
        if denom <= TAU_EXACT:
            continue
        ratio = sum(abs(v) for v in f.coeffs.values()) / denom
        tested += 1
        if best is None or ratio > best[0]:
            best = (ratio, f)
    ratio, f = best
    return SearchResult(ratio, f, _witness_id(f), tested)


@dataclass(frozen=True)
class Ell1Result:
    constant: float
    coefficients: tuple[complex, ...]
    candidates_tested: int


def ell1_lower_constant(
    polys: Sequence[TrigPolynomial],
    norm: str = "sup",
    budget: int = 64,
    seed: int = 0,
    scalars: str = "real",
) -> Ell1Result:
    """Smallest found ||sum a_s g_s|| / sum |a_s|: an upper bound for the
    best constant c with c * sum|a_s| <= ||sum a_s g_s|| over the searched
    scalars (exhaustive sign patterns when they fit the budget cap, plus
    random vectors; scalars="complex" widens the pool)."""
    if norm not in ("sup", "L1"):
        raise ValueError("norm must be 'sup' or 'L1'")
    if not polys:
        raise ValueError("need at least one polynomial")
    group = polys[0].group
    n = len(polys)

    def combo_norm(vec) -> float:
        f = TrigPolynomial.zero(group)
        for a, g in zip(vec, polys):
            f = f + complex(a) * g
        return sup_norm(f).lo if norm == "sup" else lp_norm(f, 1.0).lo

    vectors: list[Sequence[complex]] = [v for _, v in _structured_vectors(n)]
    if 2**n <= max(_STRUCTURED_CAP, budget):
        for mask in range(2 ** (n - 1)):
            vectors.append([1.0 if (mask >> i) & 1 == 0 else -1.0 for i in range(n)])
    vectors += list(_random_vectors(n, budget, seed, complex_ok=(scalars == "complex")))
    best = None
    tested = 0
    for vec in vectors:
        total = sum(abs(complex(a)) for a in vec)
        if total <= TAU_EXACT:
            continue
        ratio = combo_norm(vec) / total
        tested += 1
        if best is None or ratio < best[0]:
            best = (ratio, tuple(complex(a) for a in vec))
    constant, coeffs = best
    return Ell1Result(constant, coeffs, tested)


def lacunarity(window: SpectrumWindow) -> float:
    """Smallest successive ratio of the window's sorted integer labels."""
    if window.labels is None:
        raise SpectrumWindowError("window carries no integer labelling")
    labels = sorted(window.labels)
    if len(labels) < 2:
        raise SpectrumWindowError("need at least two labels")
    if labels[0] <= 0:
        raise SpectrumWindowError("labels must be positive integers")
    return min(b / a for a, b in zip(labels, labels[1:]))


@dataclass(frozen=True)
class DefectResult:
    lower_bound: float          # best found ||f + phi(f) x||_inf over unit f
    operator_norm: float        # ||phi|| * ||x||_inf
    defect: float               # (1 + ||T||) - lower_bound
    witness_id: str | None


def daugavet_defect(
    x: TrigPolynomial,
    weights: Mapping[tuple[int, ...], complex],
    budget: int = 64,
    seed: int = 0,
    window: Sequence[Character] | None = None,
) -> DefectResult:
    """Search lower bound for ||Id + T|| with T = phi (x) tensor, phi the
    weighted point-evaluation functional; the defect against 1 + ||T||
    is reported, never claimed to vanish."""
    group = x.group
    phi_pts = [(group.element(c), complex(w)) for c, w in weights.items()]
    phi_norm = sum(abs(w) for _, w in phi_pts)
    x_norm = sup_norm(x).hi
    t_norm = phi_norm * x_norm
    if t_norm <= TAU_EXACT:
        return DefectResult(1.0, 0.0, 0.0, None)

    def phi(f: TrigPolynomial) -> complex:
        return sum(w * f.evaluate(pt) for pt, w in phi_pts)

    chars = list(window) if window is not None else list(x.spectrum())
    if not chars:
        chars = [group.identity_character]
    win = SpectrumWindow(group, "defect-search", tuple(dict.fromkeys(chars)))

    candidates: list[TrigPolynomial] = []
    hi = sup_norm(x).hi
    if hi > TAU_EXACT:
        candidates.append(x * (1.0 / hi))
    candidates += [TrigPolynomial.from_character(c) for c in win.chars]
    n = len(win.chars)
    for vec in _random_vectors(n, budget, seed, complex_ok=True):
        f = _poly(win, vec)
        c = sup_norm(f)
        if c.hi > TAU_EXACT:
            candidates.append(f * (1.0 / c.hi))

    best = None
    for f in candidates:
        score = sup_norm(f + phi(f) * x).lo
        if best is None or score > best[0]:
            best = (score, f)
    lower, f = best
    return DefectResult(lower, t_norm, (1.0 + t_norm) - lower, _witness_id(f))


# ---------------------------------------------------------------------------
# growth curves


@dataclass(frozen=True)
class GrowthPoint:
    window_size: int
    value: float
    witness_id: str


@dataclass(frozen=True)
class GrowthCurve:
    diagnostic: str
    points: tuple[GrowthPoint, ...]
    budget: int
    seed: int

    def values(self) -> list[float]:
        return [pt.value for pt in self.points]


def growth_curve(
    diagnostic: str,
    windows: Sequence[SpectrumWindow],
    evaluate: Callable[[SpectrumWindow], SearchResult],
    budget: int,
    seed: int,
) -> GrowthCurve:
    sizes = [len(w) for w in windows]
    if sizes != sorted(set(sizes)):
        raise SpectrumWindowError("windows must have strictly increasing sizes")
    pts = []
    for w in windows:
        res = evaluate(w)
        pts.append(GrowthPoint(len(w), res.value, res.witness_id))
    return GrowthCurve(diagnostic, tuple(pts), budget, seed)
