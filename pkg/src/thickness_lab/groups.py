"""Finite abelian groups, their characters, subgroups and annihilators.

A group is a product of cyclic factors Z_{m_1} x ... x Z_{m_k}. The same
shape serves as its own dual: characters are exponent tuples, and the
character with exponents a sends x to exp(2*pi*i * sum_j a_j x_j / m_j).
Factors may be flagged as band-limited stand-ins for the circle group; the
flag carries the largest frequency polynomials may use on that factor.

All arithmetic on subgroups goes through exact integer lattices: a subgroup
of the group corresponds to the lattice spanned by its generator rows
together with the relation rows m_j * e_j, and is canonicalized by the
Hermite form so that equality is decidable by basis comparison.
"""

from __future__ import annotations

import cmath
import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .constants import DEFAULT_ENUM_BUDGET
from .errors import EnumerationBudgetError, GroupSpecError, ShapeMismatchError
from .intlinalg import hnf, in_rowspan, kernel_rows, solve_single_congruence


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Product of cyclic groups, with optional circle stand-in flags.

    factors: cyclic orders m_1..m_k, each >= 2.
    torus_degrees: per-factor band limit d_j for circle stand-ins, or None
        for a plain finite factor. Stand-ins require 2*d_j < m_j so that the
        band [-d_j, d_j] is alias-free on the m_j-point grid.
    """

    factors: tuple[int, ...]
    torus_degrees: tuple[int | None, ...] = ()

    def __post_init__(self):
        factors = tuple(int(m) for m in self.factors)
        if not factors:
            raise GroupSpecError("group needs at least one cyclic factor")
        if any(m < 2 for m in factors):
            raise GroupSpecError("every cyclic factor must have order >= 2")
        torus = self.torus_degrees or (None,) * len(factors)
        torus = tuple(None if d is None else int(d) for d in torus)
        if len(torus) != len(factors):
            raise GroupSpecError("torus flags must match the number of factors")
        for m, d in zip(factors, torus):
            if d is not None and (d < 0 or 2 * d >= m):
                raise GroupSpecError(
                    f"stand-in factor Z_{m} needs 0 <= d and 2*d < {m}, got d={d}"
                )
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "torus_degrees", torus)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.factors)

    @cached_property
    def _char_weights(self) -> tuple[int, ...]:
        m = self.exponent
        return tuple(m // f for f in self.factors)

    @property
    def has_torus_factor(self) -> bool:
        return any(d is not None for d in self.torus_degrees)

    # -- construction of members ------------------------------------------

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(int(c) for c in coords))

    def character(self, exponents: Sequence[int]) -> "Character":
        return Character(self, tuple(int(a) for a in exponents))

    @property
    def zero(self) -> "GroupElement":
        return self.element((0,) * self.rank)

    @property
    def identity_character(self) -> "Character":
        return self.character((0,) * self.rank)

    # -- enumeration -------------------------------------------------------

    def check_budget(self, budget: int | None = None) -> None:
        cap = DEFAULT_ENUM_BUDGET if budget is None else budget
        if self.order > cap:
            raise EnumerationBudgetError(self.order, cap)

    def iter_coords(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(m) for m in self.factors))

    def elements(self, budget: int | None = None) -> Iterator["GroupElement"]:
        self.check_budget(budget)
        for coords in self.iter_coords():
            yield GroupElement(self, coords)

    def characters(self, budget: int | None = None) -> Iterator["Character"]:
        self.check_budget(budget)
        for exps in self.iter_coords():
            yield Character(self, exps)

    def coords_at(self, flat: int) -> tuple[int, ...]:
        coords = []
        for m in reversed(self.factors):
            flat, r = divmod(flat, m)
            coords.append(r)
        return tuple(reversed(coords))

    def flat_index(self, coords: Sequence[int]) -> int:
        idx = 0
        for c, m in zip(coords, self.factors):
            idx = idx * m + (c % m)
        return idx

    # -- formatting --------------------------------------------------------

    def signed_exponent(self, axis: int, a: int) -> int:
        """Exponent folded into (-m/2, m/2]."""
        m = self.factors[axis]
        a %= m
        return a if a <= m // 2 else a - m

    def spec_string(self) -> str:
        parts: list[str] = []
        for m, d in zip(self.factors, self.torus_degrees):
            parts.append(f"T(N={m},d={d})" if d is not None else f"Z{m}")
        out: list[str] = []
        for token, run in itertools.groupby(parts):
            n = len(list(run))
            out.append(token if n == 1 else f"{token}^{n}")
        return " x ".join(out)

    def __str__(self) -> str:
        return self.spec_string()


_FACTOR_RE = re.compile(
    r"^(?:[zZ](?P<m>\d+)|[tT]\(\s*[nN]\s*=\s*(?P<tn>\d+)\s*,\s*[dD]\s*=\s*(?P<td>\d+)\s*\))"
    r"(?:\^(?P<pow>\d+))?$"
)


def parse_group_spec(text: str) -> FiniteAbelianGroup:
    """Parse a group spec like ``Z4 x Z4 x T(N=4096,d=512)`` or ``Z2^12``."""
    factors: list[int] = []
    torus: list[int | None] = []
    pos = 0
    for raw in text.split("x"):
        part = raw.strip()
        if not part:
            raise GroupSpecError("empty factor in group spec", pos)
        m = _FACTOR_RE.match(part)
        if m is None:
            raise GroupSpecError(f"cannot parse factor {part!r}", pos + raw.index(part[0]))
        power = int(m.group("pow") or 1)
        if power < 1:
            raise GroupSpecError("factor power must be >= 1", pos)
        if m.group("m") is not None:
            order, degree = int(m.group("m")), None
        else:
            order, degree = int(m.group("tn")), int(m.group("td"))
        for _ in range(power):
            factors.append(order)
            torus.append(degree)
        pos += len(raw) + 1
    try:
        return FiniteAbelianGroup(tuple(factors), tuple(torus))
    except GroupSpecError as exc:
        raise GroupSpecError(str(exc), None) from None


@dataclass(frozen=True)
class GroupElement:
    group: FiniteAbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.group.rank:
            raise ShapeMismatchError("element coordinate count does not match group rank")
        object.__setattr__(
            self, "coords", tuple(c % m for c, m in zip(self.coords, self.group.factors))
        )

    def __add__(self, other: "GroupElement") -> "GroupElement":
        _same_group(self.group, other.group)
        return GroupElement(
            self.group, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-c for c in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)


@dataclass(frozen=True)
class Character:
    group: FiniteAbelianGroup
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != self.group.rank:
            raise ShapeMismatchError("character exponent count does not match group rank")
        object.__setattr__(
            self,
            "exponents",
            tuple(a % m for a, m in zip(self.exponents, self.group.factors)),
        )

    @property
    def is_identity(self) -> bool:
        return not any(self.exponents)

    def signed_exponents(self) -> tuple[int, ...]:
        return tuple(
            self.group.signed_exponent(j, a) for j, a in enumerate(self.exponents)
        )

    def value(self, x: "GroupElement | Sequence[int]") -> complex:
        """chi(x) as a unit-modulus complex, via exact rational angles."""
        coords = x.coords if isinstance(x, GroupElement) else tuple(x)
        if isinstance(x, GroupElement):
            _same_group(self.group, x.group)
        m = self.group.exponent
        w = self.group._char_weights
        t = 0
        for a, c, wj in zip(self.exponents, coords, w):
            t += a * c * wj
        return cmath.exp(2j * math.pi * (t % m) / m)

    def order(self) -> int:
        return math.lcm(
            *(m // math.gcd(a, m) for a, m in zip(self.exponents, self.group.factors))
        )

    def image(self) -> tuple[complex, ...]:
        """The value set of chi over the whole group: the o(chi)-th roots of unity."""
        m = self.order()
        return tuple(cmath.exp(2j * math.pi * t / m) for t in range(m))

    def __mul__(self, other: "Character") -> "Character":
        _same_group(self.group, other.group)
        return Character(
            self.group, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def conjugate(self) -> "Character":
        return Character(self.group, tuple(-a for a in self.exponents))

    def __pow__(self, n: int) -> "Character":
        return Character(self.group, tuple(n * a for a in self.exponents))


def _same_group(a: FiniteAbelianGroup, b: FiniteAbelianGroup) -> None:
    if a != b:
        raise ShapeMismatchError(f"group shapes differ: {a} vs {b}")


def evaluate_character(chi: Character, x: GroupElement) -> complex:
    """chi(x); exact rational-angle arithmetic, unit modulus by construction."""
    return chi.value(x)


def character_order(chi: Character) -> int:
    return chi.order()


def character_image(chi: Character) -> tuple[complex, ...]:
    return chi.image()


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of a finite abelian group (or of its dual, same shape).

    `basis` is the canonical Hermite basis of the preimage lattice, which
    always contains the relation rows m_j e_j; it is a full-rank upper
    echelon and uniquely determines the subgroup.
    """

    group: FiniteAbelianGroup
    generators: tuple[tuple[int, ...], ...] = field(compare=False)
    basis: tuple[tuple[int, ...], ...] = ()

    @staticmethod
    def generated_by(
        group: FiniteAbelianGroup, rows: Iterable[Sequence[int]]
    ) -> "Subgroup":
        k = group.rank
        gen_rows = [tuple(int(v) % m for v, m in zip(r, group.factors)) for r in rows]
        for r in gen_rows:
            if len(r) != k:
                raise ShapeMismatchError("generator length does not match group rank")
        relations = [[m if i == j else 0 for j in range(k)] for i, m in enumerate(group.factors)]
        basis = hnf([list(r) for r in gen_rows] + relations, k)
        return Subgroup(group, tuple(gen_rows), tuple(tuple(r) for r in basis))

    @staticmethod
    def trivial(group: FiniteAbelianGroup) -> "Subgroup":
        return Subgroup.generated_by(group, [])

    @staticmethod
    def full(group: FiniteAbelianGroup) -> "Subgroup":
        k = group.rank
        return Subgroup.generated_by(
            group, [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        )

    @cached_property
    def order(self) -> int:
        covolume = math.prod(self.basis[i][i] for i in range(self.group.rank))
        return self.group.order // covolume

    def contains(self, member: "GroupElement | Character | Sequence[int]") -> bool:
        if isinstance(member, (GroupElement, Character)):
            coords = member.coords if isinstance(member, GroupElement) else member.exponents
        else:
            coords = tuple(int(v) for v in member)
        return in_rowspan([list(r) for r in self.basis], list(coords))

    def reduced_generators(self) -> list[tuple[int, ...]]:
        """Nonzero reductions of the canonical basis rows modulo the factors."""
        out = []
        for row in self.basis:
            red = tuple(v % m for v, m in zip(row, self.group.factors))
            if any(red):
                out.append(red)
        return out

    def element_coords(self, budget: int | None = None) -> list[tuple[int, ...]]:
        """All member coordinate tuples, lexicographically sorted."""
        cap = DEFAULT_ENUM_BUDGET if budget is None else budget
        if self.order > cap:
            raise EnumerationBudgetError(self.order, cap)
        gens = self.reduced_generators()
        seen = {(0,) * self.group.rank}
        frontier = [(0,) * self.group.rank]
        while frontier:
            nxt = []
            for pt in frontier:
                for g in gens:
                    cand = tuple((a + b) % m for a, b, m in zip(pt, g, self.group.factors))
                    if cand not in seen:
                        seen.add(cand)
                        nxt.append(cand)
            frontier = nxt
        return sorted(seen)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return all(other.contains(row) for row in self.reduced_generators())

    def __le__(self, other: "Subgroup") -> bool:
        return self.is_subgroup_of(other)


def span_characters(
    group: FiniteAbelianGroup, chars: Iterable[Character]
) -> Subgroup:
    return Subgroup.generated_by(group, [c.exponents for c in chars])


def annihilator(sub: Subgroup) -> Subgroup:
    """Characters equal to one on every member of `sub`.

    Solved exactly: with B the lattice basis of `sub`, M = lcm(m_j) and
    W = B * diag(M/m_j), the annihilator exponents are the solutions of
    W a = 0 (mod M), read off the Smith form of W.
    """
    group = sub.group
    k = group.rank
    M = group.exponent
    weights = group._char_weights
    W = [[row[j] * weights[j] for j in range(k)] for row in sub.basis]
    from .intlinalg import snf  # local import keeps module load light

    _, S, V = snf(W)
    rows = []
    for i in range(k):
        s = S[i][i] if i < len(S) and i < len(S[0]) else 0
        mult = M // math.gcd(s, M) if s else 1
        rows.append(tuple(mult * V[j][i] for j in range(k)))
    return Subgroup.generated_by(group, rows)


def coset_order(gamma: Subgroup, chi: Character) -> int:
    """Smallest m >= 1 with chi^m inside `gamma` (order of chi modulo gamma)."""
    _same_group(gamma.group, chi.group)
    o = chi.order()
    for d in sorted(_divisors(o)):
        if gamma.contains(chi**d):
            return d
    return o  # unreachable: d == o always lands in gamma


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def is_independent(chars: Sequence[Character]) -> bool:
    """No nontrivial relation: the span splits as the direct sum of the cyclic
    groups generated by each member, i.e. |span| equals the product of orders."""
    if not chars:
        return True
    if any(c.is_identity for c in chars):
        return False
    group = chars[0].group
    prod = math.prod(c.order() for c in chars)
    return span_characters(group, chars).order == prod


@dataclass(frozen=True)
class GammaTower:
    """Ascending subgroup tower inside the span of a character window."""

    gamma: Subgroup
    levels: tuple[Subgroup, ...]
    stabilization_index: int
    independent_set: tuple[Character, ...]

    def level_of(self, chi: Character) -> int | None:
        for l, sub in enumerate(self.levels, start=1):
            if sub.contains(chi):
                return l
        return None


def gamma_tower(
    chars: Sequence[Character], prefer: Sequence[Character] = ()
) -> GammaTower:
    """Build the tower G_1 <= G_2 <= ... inside the span of `chars`.

    G_1 is spanned by a greedily extracted independent set (candidates are
    taken from `prefer`, then the span's canonical generators, then the
    window itself); G_l collects the members whose l-th power falls into
    G_{l-1}. For finite groups the tower always reaches the full span; the
    returned index is the first level where it does.
    """
    if not chars:
        raise ValueError("character window must be nonempty")
    group = chars[0].group
    gamma = span_characters(group, chars)

    candidates: list[Character] = []
    seen = set()
    for c in list(prefer) + [group.character(r) for r in gamma.reduced_generators()] + list(chars):
        _same_group(group, c.group)
        if c.exponents not in seen:
            seen.add(c.exponents)
            candidates.append(c)
    independent: list[Character] = []
    for cand in candidates:
        if cand.is_identity:
            continue
        if is_independent(independent + [cand]):
            independent.append(cand)

    levels = [span_characters(group, independent) if independent else Subgroup.trivial(group)]
    exponent_cap = max(2, math.lcm(*(c.order() for c in chars)))
    l = 1
    while levels[-1] != gamma:
        l += 1
        if l > exponent_cap + 1:
            raise RuntimeError("tower failed to stabilize (internal error)")
        levels.append(_tower_step(gamma, levels[-1], l))
    return GammaTower(gamma, tuple(levels), len(levels), tuple(independent))


def _tower_step(gamma: Subgroup, prev: Subgroup, l: int) -> Subgroup:
    """{g in gamma : l*g in prev}, via exact lattice arithmetic."""
    group = gamma.group
    k = group.rank
    # division lattice {a : l*a in L(prev)}
    stacked = [[l if i == j else 0 for j in range(k)] for i in range(k)]
    stacked += [[-v for v in row] for row in prev.basis]
    division = [row[:k] for row in kernel_rows(stacked)]
    # intersect with L(gamma)
    stacked2 = [list(r) for r in division] + [[-v for v in row] for row in gamma.basis]
    inter = kernel_rows(stacked2)
    rows = []
    for c in inter:
        rows.append(
            tuple(
                sum(c[i] * division[i][j] for i in range(len(division))) for j in range(k)
            )
        )
    return Subgroup.generated_by(group, rows)


def solve_character_value(
    chi: Character, sub: Subgroup, numerator: int, denominator: int
) -> GroupElement | None:
    """Find y in `sub` with chi(y) = exp(2*pi*i*numerator/denominator).

    Returns None when no member of `sub` attains that value. `denominator`
    must divide the group exponent.
    """
    group = chi.group
    _same_group(group, sub.group)
    M = group.exponent
    if M % denominator != 0:
        raise ValueError("denominator must divide the group exponent")
    rhs = (numerator * (M // denominator)) % M
    weights = group._char_weights
    w = [
        sum(row[j] * chi.exponents[j] * weights[j] for j in range(group.rank)) % M
        for row in sub.basis
    ]
    c = solve_single_congruence(w, rhs, M)
    if c is None:
        return None
    coords = [
        sum(c[i] * sub.basis[i][j] for i in range(len(c))) for j in range(group.rank)
    ]
    return group.element(coords)
