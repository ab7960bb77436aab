"""Mechanical checks of the classification results and structural bounds
tying the irredundant-cover invariant to group structure.

`verify_theorem(t)` compares the catalog groups whose invariant equals
|G| - t against the pinned classification list for that gap.
`structural_property_suite(G)` runs the per-group implications and bounds,
including subgroup and quotient monotonicity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Group, are_isomorphic, induced_group, quotient_group
from .covers import max_irredundant_size, maximal_cyclic_subgroups
from .errors import ParameterError
from .catalog import CatalogEntry, curated_catalog
from .construct import build, dihedral
from .structure import all_subgroups, derived_series, is_normal, order_profile

__all__ = [
    "ClassificationReport",
    "PropertyCheck",
    "lambda_of_spec",
    "structural_property_suite",
    "suite_of_spec",
    "verify_theorem",
]


# -- classification by gap -------------------------------------------------------

# groups with invariant |G| - t, for t = 2..5; t = 1 is the elementary
# abelian 2-groups and scales with max_order
_GAP_LISTS: dict[int, tuple[tuple[int, str], ...]] = {
    2: ((3, "C3"), (6, "S3")),
    3: ((4, "C4"), (8, "D8")),
    4: ((5, "C5"), (8, "C4xC2"), (10, "D10"), (16, "D8xC2")),
    5: ((6, "C6"), (8, "Q8"), (9, "C3^2"), (12, "D12"), (12, "A4"),
        (18, "C3^2:C2[inv]")),
}


def _expected_for_gap(t: int, max_order: int) -> tuple[tuple[int, str], ...]:
    if t == 1:
        out = []
        size, rank = 2, 1
        while size <= max_order:
            out.append((size, "C2" if rank == 1 else f"C2^{rank}"))
            size, rank = size * 2, rank + 1
        return tuple(out)
    return tuple(pair for pair in _GAP_LISTS[t] if pair[0] <= max_order)


@dataclass(frozen=True)
class ClassificationReport:
    theorem: int
    max_order: int
    expected: tuple[str, ...]
    found: tuple[str, ...]
    missing: tuple[str, ...]
    extraneous: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.missing and not self.extraneous

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "max_order": self.max_order,
            "expected": list(self.expected),
            "found": list(self.found),
            "missing": list(self.missing),
            "extraneous": list(self.extraneous),
            "pass": self.passed,
        }


def verify_theorem(
    t: int,
    max_order: int = 24,
    *,
    entries: tuple[CatalogEntry, ...] | None = None,
    catalog_path=None,
) -> ClassificationReport:
    """Check that exactly the pinned groups have invariant |G| - t among all
    catalog groups of order <= max_order."""
    if t not in (1, 2, 3, 4, 5):
        raise ParameterError(f"classification lists cover gaps 1..5, got {t}")
    if entries is None:
        entries = curated_catalog(max_order, path=catalog_path)
    else:
        entries = tuple(e for e in entries if e.order <= max_order)
    hits = [
        (e.order, e.spec)
        for e in entries
        if max_irredundant_size(e.group) == e.order - t
    ]
    hits.sort()
    expected = _expected_for_gap(t, max_order)
    found_set, expected_set = set(hits), set(expected)
    return ClassificationReport(
        theorem=t,
        max_order=max_order,
        expected=tuple(s for _, s in expected),
        found=tuple(s for _, s in hits),
        missing=tuple(s for o, s in expected if (o, s) not in found_set),
        extraneous=tuple(s for o, s in hits if (o, s) not in expected_set),
    )


# -- per-group structural properties ----------------------------------------------


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    holds: bool
    detail: str


def structural_property_suite(G: Group, *, deep: bool = True) -> tuple[PropertyCheck, ...]:
    """Bounds and implications every group must satisfy; `deep` adds the
    subgroup and quotient monotonicity sweeps (lattice-sized work)."""
    n = G.order
    lam = max_irredundant_size(G)
    profile = order_profile(G)
    top = profile.max_element_order
    tops = maximal_cyclic_subgroups(G)
    cyclic = top == n
    checks: list[PropertyCheck] = []

    def add(name: str, holds: bool, detail: str) -> None:
        checks.append(PropertyCheck(name, holds, detail))

    add(
        "involution-exponent",
        (top == 2) == (lam == n - 1),
        f"max element order {top}, invariant {lam} of {n}",
    )

    if top == 3:
        k = sum(1 for s in tops if len(s) == 3)
        add("exponent-three-count", lam == n - k - 1,
            f"{k} subgroups of order 3, invariant {lam}")
    else:
        add("exponent-three-count", True, "max element order is not 3")

    add("max-order-bound", top <= n - lam + 1,
        f"max element order {top} vs bound {n - lam + 1}")

    if not cyclic and lam < n - 1 and top == n - lam + 1:
        if n % 2 == 0 and n >= 6:
            same = are_isomorphic(G, dihedral(n)) is not None
            add("dihedral-at-bound", same,
                "bound attained" + ("" if same else " but not dihedral"))
        else:
            add("dihedral-at-bound", False,
                f"bound attained at order {n} where no dihedral group exists")
    else:
        add("dihedral-at-bound", True, "bound not attained")

    worst = None
    for p in sorted({len(s) for s in tops}):
        if p < 2 or any(p % d == 0 for d in range(2, p)):
            continue
        k = sum(1 for s in tops if len(s) == p)
        bound = n - k * (p - 2) - 1
        if lam > bound:
            worst = f"invariant {lam} above bound {bound} at prime {p}"
    add("prime-tops-bound", worst is None, worst or "all prime bounds hold")

    if lam >= n - 5:
        solvable = derived_series(G).is_solvable
        add("near-top-solvable", solvable,
            "solvable" if solvable else "invariant within 5 of order but not solvable")
    else:
        add("near-top-solvable", True, "invariant not within 5 of order")

    if lam == n - 5:
        add("gap-five-orders", top in (3, 4, 6),
            f"max element order {top} at gap 5")
    else:
        add("gap-five-orders", True, "gap is not 5")

    if deep:
        lattice = all_subgroups(G)
        bad = None
        for sub in lattice.all:
            S, _ = induced_group(G, sub.members)
            if max_irredundant_size(S) > lam:
                bad = f"subgroup of order {len(sub)} has bigger invariant"
                break
        add("subgroup-monotone", bad is None, bad or
            f"all {len(lattice.all)} subgroups stay below {lam}")

        bad = None
        core = frozenset(range(n))
        for s in tops:
            core &= s.members
        for sub in lattice.all:
            if not is_normal(G, sub.members):
                continue
            Q, _ = quotient_group(G, sub.members)
            lq = max_irredundant_size(Q)
            if lq > lam:
                bad = f"quotient by order-{len(sub)} subgroup has bigger invariant"
                break
            if sub.members == core and lq != lam:
                bad = (
                    f"quotient by the intersection of maximal cyclic subgroups "
                    f"has invariant {lq}, expected {lam}"
                )
                break
        if bad is None and not is_normal(G, core):
            bad = "intersection of maximal cyclic subgroups is not normal"
        add("quotient-monotone", bad is None, bad or "all quotients stay below")

    return tuple(checks)


# -- picklable helpers for process pools -------------------------------------------


def lambda_of_spec(spec: str) -> tuple[str, int, int]:
    """(spec, order, invariant) for a spec string; safe to ship to a worker."""
    G = build(spec)
    return spec, G.order, max_irredundant_size(G)


def suite_of_spec(spec: str) -> tuple[str, tuple[PropertyCheck, ...]]:
    """(spec, suite results) for a spec string; safe to ship to a worker."""
    return spec, structural_property_suite(build(spec))
