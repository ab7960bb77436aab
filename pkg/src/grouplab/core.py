"""Finite groups as explicit multiplication tables.

A group of order n lives on the element indices 0..n-1, and index 0 is always
the identity.  Tables are immutable once built and every function in this
module is pure, so Group and ElementSet values can be shared freely between
threads.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import (
    CayleyError,
    NormalityError,
    ParameterError,
    SizeCapError,
    SubgroupError,
)

__all__ = [
    "CLOSURE_CAP",
    "ElementSet",
    "Group",
    "Isomorphism",
    "are_isomorphic",
    "format_group",
    "generated_subgroup",
    "group_from_closure",
    "induced_group",
    "minimal_generating_set",
    "parse_group_text",
    "quotient_group",
    "read_group",
    "validate_cayley",
    "write_group",
]

CLOSURE_CAP = 10_000

# A full n^3 associativity sweep stays cheap (vectorised, row at a time) up to
# this order; past it, closure-built tables fall back to the generator-based
# test, which is sufficient because every element is a word in the generators.
_FULL_ASSOC_LIMIT = 1024


@dataclass(frozen=True)
class ElementSet:
    """A subset of the elements of a group of order `parent_order`."""

    parent_order: int
    members: frozenset[int]

    def __post_init__(self):
        for x in self.members:
            if not 0 <= x < self.parent_order:
                raise ValueError(f"element {x} outside 0..{self.parent_order - 1}")

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


def _coerce_members(subset) -> frozenset[int]:
    if isinstance(subset, ElementSet):
        return subset.members
    return frozenset(int(x) for x in subset)


class Group:
    """An explicit finite group: an order-n Cayley table plus inverses.

    The constructor trusts its input; feed untrusted tables through
    :func:`validate_cayley` instead.  `element_keys`, when present, records
    the abstract objects (permutations, matrices, ...) behind each index for
    groups built by closure.
    """

    __slots__ = (
        "order",
        "label",
        "element_keys",
        "_rows",
        "_inverses",
        "_orders",
        "_cyclic",
        "_np",
        "_abelian",
    )

    def __init__(self, rows: Sequence[Sequence[int]], label: str = "", element_keys=None):
        self._rows = tuple(tuple(int(v) for v in row) for row in rows)
        self.order = len(self._rows)
        self.label = label
        self.element_keys = tuple(element_keys) if element_keys is not None else None
        inv = [-1] * self.order
        for a, row in enumerate(self._rows):
            inv[a] = row.index(0)
        self._inverses = tuple(inv)
        self._orders: list[int] | None = None
        self._cyclic: dict[int, frozenset[int]] = {}
        self._np = None
        self._abelian: bool | None = None

    # -- basic operations ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inv(self, a: int) -> int:
        return self._inverses[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self._inverses[a], -k
        row = a
        acc = 0
        while k:
            if k & 1:
                acc = self._rows[acc][row]
            row_row = self._rows[row]
            row = row_row[row]
            k >>= 1
        return acc

    def conj(self, x: int, by: int) -> int:
        """Conjugate x by g, i.e. g^-1 * x * g."""
        rows = self._rows
        return rows[rows[self._inverses[by]][x]][by]

    def commutator(self, x: int, y: int) -> int:
        """[x, y] = x^-1 * y^-1 * x * y."""
        rows = self._rows
        return rows[rows[rows[self._inverses[x]][self._inverses[y]]][x]][y]

    def element_order(self, a: int) -> int:
        if self._orders is None:
            self._orders = [0] * self.order
        cached = self._orders[a]
        if cached:
            return cached
        rows = self._rows
        x = a
        k = 1
        while x != 0:
            x = rows[x][a]
            k += 1
        self._orders[a] = k
        return k

    def cyclic_subgroup(self, a: int) -> frozenset[int]:
        got = self._cyclic.get(a)
        if got is None:
            rows = self._rows
            out = [0]
            x = a
            while x != 0:
                out.append(x)
                x = rows[x][a]
            got = frozenset(out)
            self._cyclic[a] = got
        return got

    @property
    def table(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    @property
    def inverses(self) -> tuple[int, ...]:
        return self._inverses

    @property
    def np_table(self) -> np.ndarray:
        if self._np is None:
            self._np = np.array(self._rows, dtype=np.int16)
        return self._np

    @property
    def is_abelian(self) -> bool:
        if self._abelian is None:
            t = self.np_table
            self._abelian = bool(np.array_equal(t, t.T))
        return self._abelian

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self) -> str:
        name = self.label or "group"
        return f"<Group {name} order={self.order}>"


# -- table validation -------------------------------------------------------


def _latin_violation(t: np.ndarray):
    """Return (kind, witness) for the first Latin-square violation, or None."""
    n = t.shape[0]
    target = np.arange(n, dtype=t.dtype)
    for a in range(n):
        if not np.array_equal(np.sort(t[a]), target):
            row = t[a].tolist()
            seen = set()
            for j, v in enumerate(row):
                if v < 0 or v >= n:
                    return "range", (a, j, v)
                if v in seen:
                    return "row", (a, j, v)
                seen.add(v)
    for b in range(n):
        col = t[:, b]
        if not np.array_equal(np.sort(col), target):
            seen = set()
            for i, v in enumerate(col.tolist()):
                if v in seen:
                    return "col", (i, b, v)
                seen.add(v)
    return None


def _assoc_violation(t: np.ndarray, middle: Iterable[int] | None = None):
    """First associativity violation, checked row-by-row to bound memory.

    With `middle` given, only triples whose middle element is in `middle` are
    checked (enough when those elements generate the whole table).
    """
    n = t.shape[0]
    if middle is None:
        for a in range(n):
            left = t[t[a], :]      # (a*b)*c
            right = t[a, t]        # a*(b*c)
            if not np.array_equal(left, right):
                bad = np.argwhere(left != right)
                b, c = (int(v) for v in bad[0])
                return (a, b, c)
        return None
    for g in sorted(set(middle)):
        left = t[t[:, g], :]       # (a*g)*c
        right = t[:, t[g, :]]      # a*(g*c)
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)
            a, c = (int(v) for v in bad[0])
            return (a, g, c)
    return None


def validate_cayley(table: Sequence[Sequence[int]], label: str = "") -> Group:
    """Build a Group from an untrusted table, checking every axiom.

    Checks run in the order Latin square, identity, inverses, associativity,
    and the first failure is reported with a witness.  If the two-sided
    identity is not element 0 the table is relabelled so that it is.
    """
    rows = [list(map(int, row)) for row in table]
    n = len(rows)
    if n == 0:
        raise CayleyError("shape", None, "empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise CayleyError("shape", (i,), f"row {i} has length {len(row)}, expected {n}")
    t = np.array(rows, dtype=np.int16)

    bad = _latin_violation(t)
    if bad is not None:
        kind, witness = bad
        if kind == "range":
            a, j, v = witness
            raise CayleyError("latin", witness, f"entry ({a},{j}) = {v} is out of range")
        a, j, v = witness
        where = "row" if kind == "row" else "column"
        raise CayleyError("latin", witness, f"value {v} repeats in {where} (cell ({a},{j}))")

    identity = None
    target = list(range(n))
    for e in range(n):
        if rows[e] == target and all(rows[i][e] == i for i in range(n)):
            identity = e
            break
    if identity is None:
        raise CayleyError("identity", None, "table has no two-sided identity")
    if identity != 0:
        # swap labels 0 and e so the identity sits at index 0
        perm = list(range(n))
        perm[0], perm[identity] = identity, 0
        relabel = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                relabel[perm[a]][perm[b]] = perm[rows[a][b]]
        rows = relabel
        t = np.array(rows, dtype=np.int16)

    for a in range(n):
        b = rows[a].index(0)
        if rows[b][a] != 0:
            raise CayleyError(
                "inverse", (a, b), f"right inverse {b} of {a} is not a left inverse"
            )

    witness = _assoc_violation(t)
    if witness is not None:
        a, b, c = witness
        raise CayleyError(
            "associativity", witness,
            f"({a}*{b})*{c} = {rows[rows[a][b]][c]} but {a}*({b}*{c}) = {rows[a][rows[b][c]]}",
        )
    return Group(rows, label=label)


# -- closure construction ---------------------------------------------------


def _identity_from_generator(g: Hashable, mul: Callable, cap: int) -> Hashable:
    seen = 0
    prev = g
    x = mul(g, g)
    while x != g:
        prev = x
        x = mul(x, g)
        seen += 1
        if seen > cap:
            raise SizeCapError(f"no identity found within cap {cap}; rule is not a group law")
    return prev


def group_from_closure(
    generators: Iterable[Hashable],
    mul: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable | None = None,
    *,
    cap: int = CLOSURE_CAP,
    label: str = "closure",
) -> Group:
    """Close a set of abstract elements under an associative product rule.

    Elements are numbered breadth-first from the identity, which always gets
    index 0, so the numbering is deterministic for a fixed generator order.
    The resulting table is checked (Latin square, identity, inverses, and
    associativity -- in full for small orders, against the generators above
    `_FULL_ASSOC_LIMIT`), so a rule that is not a group law on the closure
    raises CayleyError.
    """
    gens = list(generators)
    if identity is None:
        if not gens:
            raise ParameterError("empty generator list needs an explicit identity")
        identity = _identity_from_generator(gens[0], mul, cap)

    elems: list[Hashable] = [identity]
    index: dict[Hashable, int] = {identity: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = mul(x, g)
            if y not in index:
                if len(elems) >= cap:
                    raise SizeCapError(f"closure exceeded cap of {cap} elements")
                index[y] = len(elems)
                elems.append(y)
        i += 1

    n = len(elems)
    rows = [[0] * n for _ in range(n)]
    for a in range(n):
        ea = elems[a]
        row = rows[a]
        for b in range(n):
            p = mul(ea, elems[b])
            k = index.get(p)
            if k is None:
                raise CayleyError(
                    "closure", (a, b),
                    "product of closure elements left the closure; rule is not a group law",
                )
            row[b] = k

    t = np.array(rows, dtype=np.int16)
    bad = _latin_violation(t)
    if bad is not None:
        _, witness = bad
        raise CayleyError("latin", witness, "closure table is not a Latin square")
    if rows[0] != list(range(n)) or any(rows[a][0] != a for a in range(n)):
        raise CayleyError("identity", None, "identity law fails on the closure")
    for a in range(n):
        b = rows[a].index(0)
        if rows[b][a] != 0:
            raise CayleyError("inverse", (a, b), "two-sided inverse law fails on the closure")
    middle = None if n <= _FULL_ASSOC_LIMIT else [index[g] for g in gens if g in index]
    witness = _assoc_violation(t, middle)
    if witness is not None:
        raise CayleyError("associativity", witness, "rule is not associative on the closure")
    return Group(rows, label=label, element_keys=elems)


# -- subgroups, quotients, induced groups -----------------------------------


def _closure_in_group(G: Group, gens: Iterable[int]) -> frozenset[int]:
    rows = G._rows
    gen_list = sorted(set(gens))
    members = {0}
    frontier = [0]
    while frontier:
        fresh = []
        for x in frontier:
            row = rows[x]
            for g in gen_list:
                y = row[g]
                if y not in members:
                    members.add(y)
                    fresh.append(y)
        frontier = fresh
    return frozenset(members)


def generated_subgroup(G: Group, seeds) -> ElementSet:
    """Subgroup of G generated by the given element indices."""
    members = _closure_in_group(G, _coerce_members(seeds))
    if G.order % len(members) != 0:
        raise AssertionError("closure size does not divide the group order")
    return ElementSet(G.order, members)


def is_subgroup(G: Group, subset) -> bool:
    members = _coerce_members(subset)
    if 0 not in members:
        return False
    rows = G._rows
    for a in members:
        row = rows[a]
        for b in members:
            if row[b] not in members:
                return False
    return True


def _require_subgroup(G: Group, subset, what: str) -> frozenset[int]:
    members = _coerce_members(subset)
    if not is_subgroup(G, members):
        raise SubgroupError(f"{what}: the given {len(members)} elements do not form a subgroup")
    return members


def induced_group(G: Group, subset) -> tuple[Group, tuple[int, ...]]:
    """Standalone Group on a subgroup's elements, plus the index embedding."""
    members = _require_subgroup(G, subset, "induced_group")
    embed = tuple(sorted(members))
    back = {x: i for i, x in enumerate(embed)}
    rows = [[back[G.mul(a, b)] for b in embed] for a in embed]
    label = f"{G.label}|sub{len(embed)}" if G.label else f"sub{len(embed)}"
    return Group(rows, label=label), embed


def quotient_group(G: Group, normal) -> tuple[Group, tuple[int, ...]]:
    """Quotient of G by a normal subgroup, plus the projection map.

    Cosets are numbered by their least member in ascending order, which keeps
    the identity coset at index 0.  Raises NormalityError with a witness pair
    when the subgroup is not normal.
    """
    members = _require_subgroup(G, normal, "quotient_group")
    for g in range(G.order):
        for x in members:
            y = G.conj(x, g)
            if y not in members:
                raise NormalityError(
                    f"subgroup is not normal: conjugating {x} by {g} gives {y}",
                    witness=(x, g),
                )
    rows_g = G._rows
    coset_of = [-1] * G.order
    reps: list[int] = []
    for x in range(G.order):
        if coset_of[x] >= 0:
            continue
        coset = sorted(rows_g[x][h] for h in members)
        for y in coset:
            coset_of[y] = len(reps)
        reps.append(coset[0])
    # reps are discovered in ascending least-member order already
    m = len(reps)
    qrows = [[coset_of[rows_g[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
    quotient = Group(qrows, label=f"{G.label}/N{len(members)}" if G.label else f"quotient{m}")
    proj = tuple(coset_of)
    for a in range(G.order):
        row = rows_g[a]
        pa = proj[a]
        qrow = quotient._rows[pa]
        for b in range(G.order):
            if proj[row[b]] != qrow[proj[b]]:
                raise AssertionError("projection is not a homomorphism")
    return quotient, proj


# -- isomorphism ------------------------------------------------------------


@dataclass(frozen=True)
class Isomorphism:
    """A verified isomorphism; forward[x] is the image of x."""

    source_order: int
    target_order: int
    forward: tuple[int, ...]

    def inverse(self) -> tuple[int, ...]:
        back = [0] * len(self.forward)
        for x, y in enumerate(self.forward):
            back[y] = x
        return tuple(back)

    def verify(self, G: Group, H: Group) -> bool:
        phi = self.forward
        if sorted(phi) != list(range(G.order)) or G.order != H.order:
            return False
        for a in range(G.order):
            row = G._rows[a]
            for b in range(G.order):
                if phi[row[b]] != H.mul(phi[a], phi[b]):
                    return False
        return True


def minimal_generating_set(G: Group) -> list[int]:
    """Greedy generating set: scan indices, keep whatever enlarges the closure."""
    gens: list[int] = []
    members: frozenset[int] = frozenset({0})
    for x in range(1, G.order):
        if x not in members:
            gens.append(x)
            members = _closure_in_group(G, gens)
            if len(members) == G.order:
                break
    return gens


def _profile_key(G: Group) -> tuple[tuple[int, int], ...]:
    counts: dict[int, int] = {}
    for x in range(G.order):
        o = G.element_order(x)
        counts[o] = counts.get(o, 0) + 1
    return tuple(sorted(counts.items()))


def _center_members(G: Group) -> frozenset[int]:
    n = G.order
    rows = G._rows
    out = []
    for x in range(n):
        row = rows[x]
        if all(row[y] == rows[y][x] for y in range(n)):
            out.append(x)
    return frozenset(out)


def _derived_members(G: Group) -> frozenset[int]:
    n = G.order
    comms = {G.commutator(x, y) for x in range(n) for y in range(n)}
    return _closure_in_group(G, comms)


def _element_class(G: Group, x: int) -> tuple[int, int]:
    rows = G._rows
    row = rows[x]
    cent = sum(1 for y in range(G.order) if row[y] == rows[y][x])
    return (G.element_order(x), cent)


def are_isomorphic(G: Group, H: Group) -> Isomorphism | None:
    """A verified Isomorphism between G and H, or None.

    Cheap invariants (order, order profile, centre size, derived-subgroup
    size) reject most non-isomorphic pairs before the backtracking search
    over generator images runs.
    """
    if G.order != H.order:
        return None
    if _profile_key(G) != _profile_key(H):
        return None
    if len(_center_members(G)) != len(_center_members(H)):
        return None
    if len(_derived_members(G)) != len(_derived_members(H)):
        return None

    n = G.order
    gens = minimal_generating_set(G)
    if not gens:  # trivial group
        return Isomorphism(1, 1, (0,))

    classes_h: dict[tuple[int, int], list[int]] = {}
    for y in range(n):
        classes_h.setdefault(_element_class(H, y), []).append(y)
    gen_classes = [_element_class(G, g) for g in gens]
    for cls in gen_classes:
        if cls not in classes_h:
            return None

    rows_g, rows_h = G._rows, H._rows

    def close(phi: list[int], psi: list[int], new: int) -> bool:
        """Propagate products from a newly mapped element; False on conflict."""
        queue = [new]
        while queue:
            x = queue.pop()
            known = [a for a in range(n) if phi[a] >= 0]
            for y in known:
                for a, b in ((x, y), (y, x)):
                    p = rows_g[a][b]
                    q = rows_h[phi[a]][phi[b]]
                    if phi[p] >= 0:
                        if phi[p] != q:
                            return False
                    else:
                        if psi[q] >= 0:
                            return False
                        phi[p] = q
                        psi[q] = p
                        queue.append(p)
        return True

    def backtrack(level: int, phi: list[int], psi: list[int]) -> list[int] | None:
        if level == len(gens):
            if all(v >= 0 for v in phi):
                return phi
            return None  # pragma: no cover - gens always generate G
        g = gens[level]
        if phi[g] >= 0:
            return backtrack(level + 1, phi, psi)
        for y in classes_h[gen_classes[level]]:
            if psi[y] >= 0:
                continue
            phi2, psi2 = phi[:], psi[:]
            phi2[g], psi2[y] = y, g
            if close(phi2, psi2, g):
                got = backtrack(level + 1, phi2, psi2)
                if got is not None:
                    return got
        return None

    phi0 = [-1] * n
    psi0 = [-1] * n
    phi0[0] = 0
    psi0[0] = 0
    got = backtrack(0, phi0, psi0)
    if got is None:
        return None
    iso = Isomorphism(G.order, H.order, tuple(got))
    if not iso.verify(G, H):  # pragma: no cover - closure already checks this
        raise AssertionError("backtracking produced an unverified mapping")
    return iso


# -- exchange format ---------------------------------------------------------


def format_group(G: Group) -> str:
    """Render a group in the text exchange format (header plus table rows)."""
    lines = [f"order {G.order}"]
    for row in G._rows:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_group_text(text: str, label: str = "") -> Group:
    """Parse the exchange format; the identity must already be index 0."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("order "):
        raise ParameterError("exchange format must start with an 'order n' line")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise ParameterError(f"bad order line: {lines[0]!r}") from exc
    if len(lines) != n + 1:
        raise ParameterError(f"expected {n} table rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        try:
            rows.append([int(v) for v in ln.split()])
        except ValueError as exc:
            raise ParameterError(f"bad table row: {ln!r}") from exc
    if rows and rows[0] != list(range(n)):
        raise ParameterError("exchange format requires the identity at index 0")
    return validate_cayley(rows, label=label)


def write_group(G: Group, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_group(G))


def read_group(path, label: str = "") -> Group:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_group_text(fh.read(), label=label)
