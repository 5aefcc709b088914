"""Trigonometric polynomials with spectrum control and certified norms.

A polynomial is a finite coefficient map from characters (exponent tuples)
to complex numbers. Norms over the group are computed by full enumeration;
on circle stand-in factors the sup norm additionally carries a bracketing
upper bound obtained from the grid maximum and the per-factor correction
1/cos(pi*deg/m), valid because the factor's band limit keeps every used
frequency strictly below the grid's Nyquist rate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels as kernels
from .constants import DEFAULT_ENUM_BUDGET, TAU_EXACT
from .errors import AliasingError, ShapeMismatchError, SpectrumWindowError
from .groups import Character, FiniteAbelianGroup, GroupElement, parse_group_spec

_DUST = 1e-13

EXACT_ENUMERATION = "exact-enumeration"
GRID_CORRECTED = "grid-corrected"


@dataclass(frozen=True)
class NormCertificate:
    """Bracketing interval [lo, hi] for a norm, with the method that made it."""

    lo: float
    hi: float
    method: str

    def __post_init__(self):
        if self.lo < -TAU_EXACT or self.hi < self.lo - TAU_EXACT:
            raise ValueError(f"invalid norm bracket [{self.lo}, {self.hi}]")

    def contains(self, value: float, slack: float = TAU_EXACT) -> bool:
        return self.lo - slack <= value <= self.hi + slack

    @property
    def width(self) -> float:
        return self.hi - self.lo


class TrigPolynomial:
    """Immutable finitely supported coefficient map over a fixed group."""

    __slots__ = ("group", "coeffs", "_values")

    def __init__(
        self,
        group: FiniteAbelianGroup,
        coeffs: Mapping[tuple[int, ...], complex] | Iterable[tuple[tuple[int, ...], complex]],
    ):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        reduced: dict[tuple[int, ...], complex] = {}
        for exps, c in items:
            c = complex(c)
            if c == 0:
                continue
            key = tuple(int(a) % m for a, m in zip(exps, group.factors))
            if len(key) != group.rank:
                raise ShapeMismatchError("coefficient key length does not match group rank")
            reduced[key] = reduced.get(key, 0.0) + c
        for key, c in reduced.items():
            if abs(c) <= _DUST:
                continue
            for j, (a, d) in enumerate(zip(key, group.torus_degrees)):
                if d is not None and abs(group.signed_exponent(j, a)) > d:
                    raise AliasingError(
                        f"frequency {group.signed_exponent(j, a)} on factor {j} exceeds "
                        f"the stand-in band limit {d}"
                    )
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "coeffs", reduced)
        object.__setattr__(self, "_values", None)

    def __setattr__(self, *_):
        raise AttributeError("TrigPolynomial is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_character(chi: Character, coeff: complex = 1.0) -> "TrigPolynomial":
        return TrigPolynomial(chi.group, {chi.exponents: coeff})

    @staticmethod
    def constant(group: FiniteAbelianGroup, value: complex = 1.0) -> "TrigPolynomial":
        return TrigPolynomial(group, {(0,) * group.rank: value})

    @staticmethod
    def zero(group: FiniteAbelianGroup) -> "TrigPolynomial":
        return TrigPolynomial(group, {})

    # -- basic queries ------------------------------------------------------

    def spectrum(self) -> tuple[Character, ...]:
        keys = sorted(k for k, c in self.coeffs.items() if abs(c) > TAU_EXACT)
        return tuple(Character(self.group, k) for k in keys)

    def support_coordinates(self) -> set[int]:
        """Factor indices any spectral frequency touches."""
        out: set[int] = set()
        for chi in self.spectrum():
            out.update(j for j, a in enumerate(chi.exponents) if a)
        return out

    def degree_on_factor(self, axis: int) -> int:
        deg = 0
        for k, c in self.coeffs.items():
            if abs(c) > TAU_EXACT:
                deg = max(deg, abs(self.group.signed_exponent(axis, k[axis])))
        return deg

    def evaluate(self, x: GroupElement | Sequence[int]) -> complex:
        """Pointwise value by direct exact-angle summation (kernel-free)."""
        coords = x.coords if isinstance(x, GroupElement) else tuple(int(v) for v in x)
        if isinstance(x, GroupElement) and x.group != self.group:
            raise ShapeMismatchError("point belongs to a different group")
        M = self.group.exponent
        w = self.group._char_weights
        acc = 0j
        for exps, c in self.coeffs.items():
            t = 0
            for a, xv, wj in zip(exps, coords, w):
                t += a * xv * wj
            acc += c * cmath.exp(2j * math.pi * (t % M) / M)
        return acc

    def values_table(self, budget: int | None = None) -> np.ndarray:
        """Values over the whole group, flat C order (cached, read-only)."""
        cached = self._values
        if cached is not None:
            return cached
        self.group.check_budget(budget)
        keys = sorted(self.coeffs)
        exps = np.array(keys, dtype=np.int64).reshape(len(keys), self.group.rank)
        cs = np.array([self.coeffs[k] for k in keys], dtype=np.complex128)
        table = np.asarray(kernels.eval_table(self.group.factors, exps, cs))
        table.setflags(write=False)
        object.__setattr__(self, "_values", table)
        return table

    def max_point(self, budget: int | None = None) -> tuple[float, GroupElement]:
        """Grid maximum of |f| and the first (lexicographic) point attaining it."""
        if not self.coeffs:
            return 0.0, self.group.zero
        val, idx = kernels.max_abs(self.values_table(budget))
        return float(val), self.group.element(self.group.coords_at(int(idx)))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        if self.group != other.group:
            raise ShapeMismatchError("cannot add polynomials on different groups")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0.0) + c
        return TrigPolynomial(self.group, out)

    def __sub__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        return self + (-1.0) * other

    def __mul__(self, scalar: complex) -> "TrigPolynomial":
        s = complex(scalar)
        return TrigPolynomial(self.group, {k: c * s for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def modulate(self, chi: Character) -> "TrigPolynomial":
        """Multiply by the character chi (shifts every frequency by chi)."""
        if chi.group != self.group:
            raise ShapeMismatchError("modulating character lives on a different group")
        return TrigPolynomial(
            self.group,
            {
                tuple(a + b for a, b in zip(k, chi.exponents)): c
                for k, c in self.coeffs.items()
            },
        )

    def translate(self, a: GroupElement) -> "TrigPolynomial":
        """x -> f(x + a); each coefficient picks up the phase chi(a)."""
        if a.group != self.group:
            raise ShapeMismatchError("translation point lives on a different group")
        return TrigPolynomial(
            self.group,
            {k: c * Character(self.group, k).value(a) for k, c in self.coeffs.items()},
        )

    def conjugate(self) -> "TrigPolynomial":
        return TrigPolynomial(
            self.group,
            {tuple(-a for a in k): c.conjugate() for k, c in self.coeffs.items()},
        )

    # -- interchange --------------------------------------------------------

    def to_interchange(self) -> dict:
        return {
            "group": self.group.spec_string(),
            "coeffs": [
                [list(k), float(c.real), float(c.imag)]
                for k, c in sorted(self.coeffs.items())
            ],
        }

    @staticmethod
    def from_interchange(data: Mapping) -> "TrigPolynomial":
        group = parse_group_spec(data["group"])
        return TrigPolynomial(
            group,
            {tuple(int(a) for a in k): complex(re, im) for k, re, im in data["coeffs"]},
        )

    def __repr__(self) -> str:
        return f"TrigPolynomial({self.group}, {len(self.coeffs)} coefficients)"


# ---------------------------------------------------------------------------
# norms


def sup_norm(f: TrigPolynomial, budget: int | None = None) -> NormCertificate:
    """Certified sup norm.

    Groups without stand-in factors: exact enumeration, lo == hi == grid max.
    With stand-in factors, the true (continuous-circle) sup lies in
    [grid max, grid max / prod_j cos(pi * deg_j / m_j)] where deg_j is the
    polynomial's actual band width on factor j.
    """
    active = [k for k, c in f.coeffs.items() if abs(c) > _DUST]
    if not active:
        return NormCertificate(0.0, 0.0, EXACT_ENUMERATION)
    if len(active) == 1:
        mag = abs(f.coeffs[active[0]])
        return NormCertificate(mag, mag, EXACT_ENUMERATION)
    lo, _ = f.max_point(budget)
    correction = 1.0
    corrected = False
    for j, d in enumerate(f.group.torus_degrees):
        if d is None:
            continue
        deg = f.degree_on_factor(j)
        if deg:
            correction *= math.cos(math.pi * deg / f.group.factors[j])
            corrected = True
    if corrected:
        return NormCertificate(lo, lo / correction, GRID_CORRECTED)
    return NormCertificate(lo, lo, EXACT_ENUMERATION)


def lp_norm(f: TrigPolynomial, p: float, budget: int | None = None) -> NormCertificate:
    """((1/|G|) * sum |f|^p)^(1/p); a quasi-norm for p < 1, same formula."""
    if p <= 0:
        raise ValueError("p must be positive")
    if not f.coeffs:
        return NormCertificate(0.0, 0.0, EXACT_ENUMERATION)
    table = f.values_table(budget)
    mean = kernels.power_sum(table, p) / table.size
    val = mean ** (1.0 / p)
    return NormCertificate(val, val, EXACT_ENUMERATION)


def evaluate(f: TrigPolynomial, x: GroupElement) -> complex:
    return f.evaluate(x)


# ---------------------------------------------------------------------------
# Fourier analysis


def fourier_transform(
    group: FiniteAbelianGroup, samples: Sequence[complex], budget: int | None = None
) -> TrigPolynomial:
    """Recover the coefficient map from a full sample table (flat C order)."""
    group.check_budget(budget)
    arr = np.asarray(samples, dtype=np.complex128)
    if arr.size != group.order:
        raise ShapeMismatchError(
            f"sample table has {arr.size} entries, group order is {group.order}"
        )
    cube = np.fft.fftn(arr.reshape(group.factors)) / group.order
    coeffs: dict[tuple[int, ...], complex] = {}
    flat = cube.reshape(-1)
    nz = np.nonzero(np.abs(flat) > _DUST)[0]
    for idx in nz:
        coeffs[group.coords_at(int(idx))] = complex(flat[idx])
    return TrigPolynomial(group, coeffs)


def sample_table(f: TrigPolynomial, budget: int | None = None) -> np.ndarray:
    """Inverse of fourier_transform: the full value table of f."""
    return f.values_table(budget)


# ---------------------------------------------------------------------------
# seeded generation


def random_unit_polynomial(
    chars: Sequence[Character],
    seed: int | np.random.SeedSequence,
    profile: str = "gaussian",
) -> TrigPolynomial:
    """Seeded random polynomial with spectrum inside `chars`, normalized by its
    certified sup norm (so the true norm lies in [lo/hi, 1]).

    Profiles: "flat" (unit-modulus coefficients, random phases), "gaussian"
    (complex normal), "sparse:k" (gaussian on k randomly kept characters).
    The global phase is canonicalized so the largest coefficient is positive
    real, making output independent of the caller's character ordering.
    """
    if not chars:
        raise SpectrumWindowError("spectrum window must be nonempty")
    group = chars[0].group
    keys = sorted({c.exponents for c in chars})
    rng = np.random.default_rng(seed)
    n = len(keys)
    if profile == "flat":
        vec = np.exp(2j * np.pi * rng.random(n))
    elif profile == "gaussian":
        vec = rng.normal(size=n) + 1j * rng.normal(size=n)
    elif profile.startswith("sparse"):
        _, _, arg = profile.partition(":")
        k = min(n, max(1, int(arg or 1)))
        vec = np.zeros(n, dtype=complex)
        idx = rng.choice(n, size=k, replace=False)
        vec[idx] = rng.normal(size=k) + 1j * rng.normal(size=k)
    else:
        raise ValueError(f"unknown profile {profile!r}")
    if float(np.max(np.abs(vec))) < 1e-12:
        vec[0] = 1.0
    f = TrigPolynomial(group, dict(zip(keys, vec)))
    cert = sup_norm(f)
    f = f * (1.0 / cert.hi)
    top = max(f.coeffs.items(), key=lambda kv: (abs(kv[1]), kv[0]))
    phase = top[1] / abs(top[1])
    return f * phase.conjugate()
