"""Structural queries: element-order profiles, torsion and power subgroups,
derived series, and the full subgroup lattice with its derived views."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from collections.abc import Iterable

from .core import (
    ElementSet,
    Group,
    _center_members,
    _closure_in_group,
    _coerce_members,
    generated_subgroup,
)
from .errors import DomainError, ParameterError, SizeCapError

__all__ = [
    "DerivedSeries",
    "OrderProfile",
    "SubgroupLattice",
    "agemo",
    "agemo_members",
    "all_subgroups",
    "center",
    "centralizer",
    "commutator_subgroup",
    "derived_series",
    "is_normal",
    "metabelian_power_check",
    "omega",
    "omega_members",
    "order_profile",
]

SUBGROUP_CAP = 200


# -- order statistics ---------------------------------------------------------


@dataclass(frozen=True)
class OrderProfile:
    """How many elements each order contributes, plus the derived scalars."""

    counts: dict[int, int]
    exponent: int
    max_element_order: int

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.counts.items())


def order_profile(G: Group) -> OrderProfile:
    counts = Counter(G.element_order(x) for x in range(G.order))
    orders = sorted(counts)
    return OrderProfile(dict(counts), math.lcm(*orders), orders[-1])


# -- centralizers and the center ----------------------------------------------


def centralizer(G: Group, subset) -> ElementSet:
    """Elements commuting with everything in `subset` (any element set)."""
    members = _coerce_members(subset)
    rows = G.table
    fixed = frozenset(
        g for g in range(G.order)
        if all(rows[g][x] == rows[x][g] for x in members)
    )
    return ElementSet(G.order, fixed)


def center(G: Group) -> ElementSet:
    return ElementSet(G.order, _center_members(G))


# -- torsion and power subgroups (p-groups only) ------------------------------


def _p_group_prime(G: Group) -> int:
    n = G.order
    if n == 1:
        raise DomainError("torsion layers need a nontrivial group of prime-power order")
    p = 2
    while n % p != 0:
        p += 1
    m = n
    while m % p == 0:
        m //= p
    if m != 1:
        raise DomainError(f"group order {G.order} is not a prime power")
    return p


def omega_members(G: Group, s: int) -> ElementSet:
    """Solutions of x^(p^s) = e in a p-group.  A plain element set; it is a
    subgroup in many groups but not all (see `omega` for the closure)."""
    if s < 0:
        raise ParameterError(f"torsion layer index must be >= 0, got {s}")
    p = _p_group_prime(G)
    q = p ** s
    return ElementSet(G.order, frozenset(x for x in range(G.order) if G.power(x, q) == 0))


def omega(G: Group, s: int) -> ElementSet:
    """Subgroup generated by all solutions of x^(p^s) = e."""
    return generated_subgroup(G, omega_members(G, s).members)


def agemo_members(G: Group, s: int) -> ElementSet:
    """The set of (p^s)-th powers in a p-group; not always a subgroup."""
    if s < 0:
        raise ParameterError(f"torsion layer index must be >= 0, got {s}")
    p = _p_group_prime(G)
    q = p ** s
    return ElementSet(G.order, frozenset(G.power(x, q) for x in range(G.order)))


def agemo(G: Group, s: int) -> ElementSet:
    """Subgroup generated by all (p^s)-th powers."""
    return generated_subgroup(G, agemo_members(G, s).members)


# -- derived series ------------------------------------------------------------


def commutator_subgroup(G: Group) -> ElementSet:
    return _derived_of(G, range(G.order))


def _derived_of(G: Group, members: Iterable[int]) -> ElementSet:
    pool = list(members)
    comms = {G.commutator(x, y) for x in pool for y in pool}
    return generated_subgroup(G, comms)


@dataclass(frozen=True)
class DerivedSeries:
    """Iterated commutator subgroups until the series stabilises."""

    terms: tuple[ElementSet, ...]

    @property
    def is_solvable(self) -> bool:
        return len(self.terms[-1]) == 1

    @property
    def is_metabelian(self) -> bool:
        return self.is_solvable and len(self.terms) <= 3

    @property
    def derived_length(self) -> int | None:
        return len(self.terms) - 1 if self.is_solvable else None


@lru_cache(maxsize=256)
def derived_series(G: Group) -> DerivedSeries:
    terms = [ElementSet(G.order, frozenset(range(G.order)))]
    while True:
        nxt = _derived_of(G, terms[-1].members)
        if nxt.members == terms[-1].members:
            break
        terms.append(nxt)
        if len(nxt) == 1:
            break
    return DerivedSeries(tuple(terms))


# -- the subgroup lattice -------------------------------------------------------


def is_normal(G: Group, subset) -> bool:
    members = _coerce_members(subset)
    return all(G.conj(x, g) in members for x in members for g in range(G.order))


@dataclass(frozen=True)
class SubgroupLattice:
    """Every subgroup of a group, with the standard derived views.

    `all` is sorted by (size, members) so positions are stable across runs.
    """

    group_order: int
    all: tuple[ElementSet, ...]
    maximal: tuple[ElementSet, ...] = field(init=False)
    frattini: ElementSet = field(init=False)

    def __post_init__(self):
        proper = [s for s in self.all if len(s) < self.group_order]
        maximal = tuple(
            s for s in proper
            if not any(len(t) > len(s) and s.members < t.members for t in proper)
        )
        if maximal:
            frat = frozenset.intersection(*(m.members for m in maximal))
        else:
            frat = frozenset(range(self.group_order))
        object.__setattr__(self, "maximal", maximal)
        object.__setattr__(self, "frattini", ElementSet(self.group_order, frat))

    def sylow(self, p: int) -> tuple[ElementSet, int]:
        """One Sylow p-subgroup (the first in sorted order) and how many exist."""
        if p < 2 or any(p % d == 0 for d in range(2, p)):
            raise ParameterError(f"{p} is not prime")
        if self.group_order % p != 0:
            raise ParameterError(f"{p} does not divide the group order {self.group_order}")
        size = 1
        n = self.group_order
        while n % p == 0:
            size *= p
            n //= p
        hits = [s for s in self.all if len(s) == size]
        return hits[0], len(hits)


def all_subgroups(G: Group, cap: int = SUBGROUP_CAP) -> SubgroupLattice:
    """Enumerate every subgroup by closing cyclic seeds under one extra
    generator at a time.  Keeps a generating tuple per subgroup so each
    extension is one cheap closure.  Raises SizeCapError past `cap`."""
    n = G.order
    subs: dict[frozenset[int], tuple[int, ...]] = {frozenset({0}): ()}
    for x in range(1, n):
        members = G.cyclic_subgroup(x)
        if members not in subs:
            subs[members] = (x,)
    frontier = list(subs.items())
    while frontier:
        grown: list[tuple[frozenset[int], tuple[int, ...]]] = []
        for members, gens in frontier:
            for x in range(1, n):
                if x in members:
                    continue
                bigger = _closure_in_group(G, gens + (x,))
                if bigger not in subs:
                    if len(subs) >= cap:
                        raise SizeCapError(
                            f"more than {cap} subgroups in {G.label or 'group'} "
                            f"of order {n}; raise `cap` to keep going"
                        )
                    grew = gens + (x,)
                    subs[bigger] = grew
                    grown.append((bigger, grew))
        frontier = grown
    ordered = sorted(subs, key=lambda m: (len(m), sorted(m)))
    return SubgroupLattice(n, tuple(ElementSet(n, m) for m in ordered))


# -- the metabelian power identity ---------------------------------------------


def _left_normed(G: Group, x: int, y: int, i: int, j: int) -> int:
    # [x, y, x, ..., x, y, ..., y] with i copies of x and j of y in total
    c = G.commutator(x, y)
    for _ in range(i - 1):
        c = G.commutator(c, x)
    for _ in range(j - 1):
        c = G.commutator(c, y)
    return c


def metabelian_power_check(G: Group, a: int, b: int, n: int) -> bool:
    """Test the collected expansion of (a * b^-1)^n against its closed form.

    The right side is a^n times the product of left-normed commutators
    [a, b, a...(i-1), b...(j-1)] raised to binomial(n, i+j), taken over
    i, j >= 1 with i + j <= n in lexicographic order, times b^-n.
    Only defined when the second derived subgroup is trivial.
    """
    if n < 1:
        raise ParameterError(f"power must be >= 1, got {n}")
    if not derived_series(G).is_metabelian:
        raise DomainError("power expansion needs a metabelian group")
    lhs = G.power(G.mul(a, G.inv(b)), n)
    rhs = G.power(a, n)
    for i in range(1, n):
        for j in range(1, n - i + 1):
            term = G.power(_left_normed(G, a, b, i, j), math.comb(n, i + j))
            rhs = G.mul(rhs, term)
    rhs = G.mul(rhs, G.power(G.inv(b), n))
    return lhs == rhs
