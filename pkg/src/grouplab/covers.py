"""Subgroup covers and the two cover invariants.

`max_irredundant_size` (the count of maximal cyclic subgroups) and
`min_cover_size` (the fewest proper subgroups whose union is the whole
group).  A brute-force maximiser over arbitrary subgroup families backs the
closed-form computation on small inputs.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .core import ElementSet, Group
from .errors import SigmaBudgetError, SizeCapError
from .structure import SubgroupLattice, all_subgroups

__all__ = [
    "Cover",
    "cover_of",
    "max_irredundant_bruteforce",
    "max_irredundant_size",
    "maximal_cyclic_cover",
    "maximal_cyclic_subgroups",
    "min_cover_size",
]

BRUTEFORCE_ORDER_CAP = 16
BRUTEFORCE_SUBGROUP_CAP = 40


def maximal_cyclic_subgroups(G: Group) -> tuple[ElementSet, ...]:
    """The cyclic subgroups not contained in a bigger cyclic subgroup,
    largest first, ties broken by membership."""
    distinct = {G.cyclic_subgroup(x) for x in range(G.order)}
    tops = [
        m for m in distinct
        if not any(len(o) > len(m) and m < o for o in distinct)
    ]
    tops.sort(key=lambda m: (-len(m), sorted(m)))
    return tuple(ElementSet(G.order, m) for m in tops)


def max_irredundant_size(G: Group) -> int:
    """Size of the biggest irredundant subgroup cover; equals the number of
    maximal cyclic subgroups.  The trivial group counts as 1 (itself)."""
    return len(maximal_cyclic_subgroups(G))


@dataclass(frozen=True)
class Cover:
    """A family of element sets viewed as a candidate cover of a group."""

    parent_order: int
    parts: tuple[ElementSet, ...]

    @property
    def covers(self) -> bool:
        seen: set[int] = set()
        for part in self.parts:
            seen.update(part.members)
        return len(seen) == self.parent_order

    @property
    def irredundant(self) -> bool:
        return all(len(self.private_members(i)) > 0 for i in range(len(self.parts)))

    def private_members(self, i: int) -> ElementSet:
        """Elements of part i lying in no other part."""
        others: set[int] = set()
        for j, part in enumerate(self.parts):
            if j != i:
                others.update(part.members)
        return ElementSet(self.parent_order, self.parts[i].members - others)


def cover_of(G: Group, parts) -> Cover:
    coerced = tuple(
        p if isinstance(p, ElementSet) else ElementSet(G.order, frozenset(p))
        for p in parts
    )
    for p in coerced:
        if p.parent_order != G.order:
            raise ValueError("cover parts must index into the same group")
    return Cover(G.order, coerced)


def maximal_cyclic_cover(G: Group) -> Cover:
    """The cover by all maximal cyclic subgroups.  Always covers, and is
    always irredundant: a generator of each part can sit in no other part."""
    return Cover(G.order, maximal_cyclic_subgroups(G))


# -- brute force over arbitrary subgroup families ------------------------------


def max_irredundant_bruteforce(
    G: Group,
    *,
    order_cap: int = BRUTEFORCE_ORDER_CAP,
    subgroup_cap: int = BRUTEFORCE_SUBGROUP_CAP,
) -> int:
    """Largest irredundant cover found by exhaustive search over all subgroup
    families.  Exponential; refuses orders past `order_cap` or lattices past
    `subgroup_cap`."""
    if G.order > order_cap:
        raise SizeCapError(
            f"brute force capped at order {order_cap}, got {G.order}"
        )
    lattice = all_subgroups(G, cap=subgroup_cap)
    pool = [s.members for s in lattice.all]
    if len(pool) > subgroup_cap:
        raise SizeCapError(
            f"brute force capped at {subgroup_cap} subgroups, got {len(pool)}"
        )
    k = len(pool)
    everything = frozenset(range(G.order))
    # union of pool[i:], for the cover-feasibility prune
    suffix: list[frozenset[int]] = [frozenset()] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix[i] = suffix[i + 1] | pool[i]

    best = 0

    def walk(i: int, chosen: list[frozenset[int]], covered: frozenset[int]) -> None:
        nonlocal best
        if covered == everything:
            best = max(best, len(chosen))
        if i == k or len(chosen) + (k - i) <= best:
            return
        if not covered >= everything - suffix[i]:
            return  # elements nobody downstream can cover
        # include pool[i] if every private set survives
        fresh = pool[i] - covered
        if fresh:
            trimmed = [p - pool[i] for p in chosen]
            if all(trimmed):
                trimmed.append(fresh)
                walk(i + 1, trimmed, covered | pool[i])
        walk(i + 1, chosen, covered)

    walk(0, [], frozenset())
    return best


# -- minimum cover by proper subgroups ------------------------------------------


def min_cover_size(
    G: Group,
    *,
    budget: float | None = None,
    lattice: SubgroupLattice | None = None,
) -> int | float:
    """Fewest proper subgroups covering the group, or math.inf when no proper
    cover exists (exactly the cyclic groups).

    Any minimal cover can be rewritten inside the maximal subgroups, so the
    search pool is just those.  Branch and bound over bitmasks, branching on
    the element with the fewest remaining candidates.  With a time `budget`
    (seconds), raises SigmaBudgetError carrying the bracket proven so far.
    """
    n = G.order
    if n == 1 or G.element_order(_any_generator(G)) == n:
        return math.inf
    if lattice is None:
        lattice = all_subgroups(G)
    pool = [
        sum(1 << x for x in m.members)
        for m in lattice.maximal
    ]
    full = (1 << n) - 2  # identity is inside every part; cover bits 1..n-1
    deadline = None if budget is None else time.monotonic() + budget
    best = len(pool) + 1
    root_bound = 0

    def lower_bound(uncovered: int, masks: list[int]) -> int:
        widest = max((mask & uncovered).bit_count() for mask in masks)
        return -(-uncovered.bit_count() // widest)

    def descend(uncovered: int, used: int, masks: list[int]) -> None:
        nonlocal best
        if not uncovered:
            best = min(best, used)
            return
        if deadline is not None and time.monotonic() > deadline:
            raise _Expired()
        live = [m for m in masks if m & uncovered]
        if used + lower_bound(uncovered, live) >= best:
            return
        # element in the fewest parts drives the branching
        pick, fewest = -1, len(live) + 1
        probe = uncovered
        while probe:
            x = probe & -probe
            cnt = sum(1 for m in live if m & x)
            if cnt < fewest:
                pick, fewest = x, cnt
                if cnt == 1:
                    break
            probe ^= x
        candidates = sorted(
            (m for m in live if m & pick),
            key=lambda m: -(m & uncovered).bit_count(),
        )
        for m in candidates:
            descend(uncovered & ~m, used + 1, [x for x in live if x is not m])

    class _Expired(Exception):
        pass

    try:
        root_bound = lower_bound(full, pool)
        descend(full, 0, pool)
    except _Expired:
        upper = best if best <= len(pool) else math.inf
        raise SigmaBudgetError(
            f"minimum cover search ran past its {budget:.1f}s budget",
            lower=root_bound,
            upper=upper,
        ) from None
    return best


def _any_generator(G: Group) -> int:
    # cheap cyclicity probe: the group is cyclic iff some element has full order
    for x in range(G.order - 1, 0, -1):
        if G.element_order(x) == G.order:
            return x
    return 0
