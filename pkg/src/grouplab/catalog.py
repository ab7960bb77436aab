"""Exhaustive enumeration of small groups and the shipped group catalog.

The enumerator searches Cayley tables directly: elements are numbered in the
order a breadth-first closure of the generating sequence discovers them, so
each abstract group shows up once per generating sequence orbit rather than
once per labeling.  Branching happens only on generator columns; the rest of
the table follows by associativity.  Duplicates are removed up to isomorphism
at the leaves.

The catalog is a curated text file of spec strings (one line per isomorphism
class, orders 2..24) with per-order count records to audit completeness.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files
from pathlib import Path

from .core import Group, _profile_key, are_isomorphic, validate_cayley
from .errors import CatalogError, CayleyError, ParameterError, SizeCapError
from .construct import build

__all__ = [
    "CatalogEntry",
    "ENUMERATION_CAP",
    "catalog_problems",
    "curated_catalog",
    "enumerate_groups_of_order",
    "load_catalog",
]

ENUMERATION_CAP = 16
CATALOG_ENV = "GROUPLAB_CATALOG"
CATALOG_ARG_CAP = 32


# -- exhaustive enumeration ----------------------------------------------------


def enumerate_groups_of_order(n: int) -> tuple[Group, ...]:
    """All groups of order n up to isomorphism, identity at index 0.

    Exact and exhaustive, but exponential: orders past 16 are refused.
    Output order is deterministic (sorted by order profile, then table).
    """
    if n < 1:
        raise ParameterError(f"group order must be >= 1, got {n}")
    if n > ENUMERATION_CAP:
        raise SizeCapError(
            f"exhaustive search is capped at order {ENUMERATION_CAP}, got {n}"
        )
    if n == 1:
        return (Group([[0]], label="order1-1"),)

    hits: list[Group] = []
    hit_keys: list[tuple] = []

    def equate(T, rowm, colm, gens, ax, ay, bx, by, queue) -> bool:
        va, vb = T[ax][ay], T[bx][by]
        if va < 0 and vb < 0:
            return True
        if va < 0:
            return try_assign(T, rowm, colm, gens, ax, ay, vb, queue)
        if vb < 0:
            return try_assign(T, rowm, colm, gens, bx, by, va, queue)
        return va == vb

    def try_assign(T, rowm, colm, gens, x, y, v, queue) -> bool:
        cur = T[x][y]
        if cur == v:
            return True
        if cur != -1:
            return False
        bit = 1 << v
        if rowm[x] & bit or colm[y] & bit:
            return False
        # every generator label s marks a closed prefix {0..s-1}: products
        # inside stay inside, mixed products must leave
        for s in gens:
            if (x < s) == (y < s):
                if x < s and v >= s:
                    return False
            elif v < s:
                return False
        T[x][y] = v
        rowm[x] |= bit
        colm[y] |= bit
        queue.append((x, y, v))
        return True

    def propagate(T, rowm, colm, m, gens, queue) -> bool:
        # worklist over fresh cells; each one is checked inside every
        # associativity triple (a, u, g) with g a generator that it can
        # complete right now
        while queue:
            x, y, v = queue.pop()
            if y in gens:
                for a in range(m):
                    if T[a][x] >= 0:
                        if not equate(T, rowm, colm, gens, T[a][x], y, a, v, queue):
                            return False
            for g in gens:
                d = T[y][g]
                if d >= 0:
                    if not equate(T, rowm, colm, gens, v, g, x, d, queue):
                        return False
            for g in gens:
                col = g
                for u in range(m):
                    if T[u][col] == y:
                        q = T[x][u]
                        if q >= 0:
                            if not equate(T, rowm, colm, gens, q, col, x, y, queue):
                                return False
        return True

    def sweep(T, rowm, colm, m, gens, deriv) -> bool:
        # with every generator column complete, derivations fill the rest
        queue: list[tuple[int, int, int]] = []
        for b in range(1, m):
            if deriv[b] is None:
                continue
            p, g = deriv[b]
            for a in range(m):
                if T[a][b] == -1:
                    q = T[a][p]
                    e = T[q][g] if q >= 0 else -1
                    if e < 0 or not try_assign(T, rowm, colm, gens, a, b, e, queue):
                        return False
        return propagate(T, rowm, colm, m, gens, queue)

    def record(T) -> None:
        try:
            G = validate_cayley([row[:] for row in T])
        except CayleyError:
            return
        key = _profile_key(G)
        for k, other in zip(hit_keys, hits):
            if k == key and are_isomorphic(other, G) is not None:
                return
        hits.append(G)
        hit_keys.append(key)

    def descend(T, rowm, colm, m, gens, deriv) -> None:
        cell = None
        for a in range(m):
            row = T[a]
            for g in gens:
                if row[g] == -1:
                    cell = (a, g)
                    break
            if cell:
                break
        if cell is None:
            if not sweep(T, rowm, colm, m, gens, deriv):
                return
            if m == n:
                record(T)
                return
            if n % m:
                return
            # the closure is a proper subgroup: adjoin a fresh generator
            T2 = [r[:] for r in T]
            rowm2, colm2, deriv2 = rowm[:], colm[:], deriv[:]
            gens2 = gens + (m,)
            deriv2[m] = None
            queue: list[tuple[int, int, int]] = []
            if (
                try_assign(T2, rowm2, colm2, gens2, 0, m, m, queue)
                and try_assign(T2, rowm2, colm2, gens2, m, 0, m, queue)
                and propagate(T2, rowm2, colm2, m + 1, gens2, queue)
            ):
                descend(T2, rowm2, colm2, m + 1, gens2, deriv2)
            return

        a, g = cell
        used = rowm[a] | colm[g]
        for v in range(m):
            if used >> v & 1:
                continue
            T2 = [r[:] for r in T]
            rowm2, colm2 = rowm[:], colm[:]
            queue = []
            if try_assign(T2, rowm2, colm2, gens, a, g, v, queue) and propagate(
                T2, rowm2, colm2, m, gens, queue
            ):
                descend(T2, rowm2, colm2, m, gens, deriv)
        if m < n:
            T2 = [r[:] for r in T]
            rowm2, colm2, deriv2 = rowm[:], colm[:], deriv[:]
            deriv2[m] = (a, g)
            queue = []
            if (
                try_assign(T2, rowm2, colm2, gens, 0, m, m, queue)
                and try_assign(T2, rowm2, colm2, gens, m, 0, m, queue)
                and try_assign(T2, rowm2, colm2, gens, a, g, m, queue)
                and propagate(T2, rowm2, colm2, m + 1, gens, queue)
            ):
                descend(T2, rowm2, colm2, m + 1, gens, deriv2)

    T0 = [[-1] * n for _ in range(n)]
    T0[0][0] = 0
    rowm0 = [0] * n
    colm0 = [0] * n
    rowm0[0] = colm0[0] = 1
    deriv0: list[tuple[int, int] | None] = [None] * n
    # the trivial subgroup {0} is "closed", so descend adjoins generator 1
    descend(T0, rowm0, colm0, 1, (), deriv0)

    hits.sort(key=lambda G: (_profile_key(G), G.table))
    return tuple(
        Group(G.table, label=f"order{n}-{i + 1}") for i, G in enumerate(hits)
    )


# -- the shipped catalog ---------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    order: int
    spec: str
    name: str
    group: Group


def _parse_catalog(text: str, origin: str) -> tuple[tuple[CatalogEntry, ...], dict[int, int]]:
    entries: list[CatalogEntry] = []
    counts: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("# count "):
            bits = line.split()
            if len(bits) != 4 or not (bits[2].isdigit() and bits[3].isdigit()):
                raise CatalogError(f"{origin}:{lineno}: malformed count record {line!r}")
            counts[int(bits[2])] = int(bits[3])
            continue
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(";")]
        if len(parts) != 3:
            raise CatalogError(
                f"{origin}:{lineno}: expected 'order;spec;name', got {line!r}"
            )
        try:
            order = int(parts[0])
        except ValueError:
            raise CatalogError(f"{origin}:{lineno}: bad order {parts[0]!r}") from None
        try:
            G = build(parts[1])
        except Exception as exc:
            raise CatalogError(f"{origin}:{lineno}: cannot build {parts[1]!r}: {exc}") from exc
        if G.order != order:
            raise CatalogError(
                f"{origin}:{lineno}: {parts[1]!r} has order {G.order}, line says {order}"
            )
        entries.append(CatalogEntry(order, parts[1], parts[2], G))
    return tuple(entries), counts


@lru_cache(maxsize=8)
def _load_from(origin: str) -> tuple[tuple[CatalogEntry, ...], dict[int, int]]:
    if origin == ":packaged:":
        text = (files("grouplab") / "data" / "catalog.txt").read_text(encoding="utf-8")
    else:
        path = Path(origin)
        if not path.is_file():
            raise CatalogError(f"catalog file not found: {origin}")
        text = path.read_text(encoding="utf-8")
    return _parse_catalog(text, origin)


def _resolve_origin(path=None) -> str:
    if path is not None:
        return str(path)
    env = os.environ.get(CATALOG_ENV)
    if env:
        return env
    return ":packaged:"


def load_catalog(path=None) -> tuple[CatalogEntry, ...]:
    """Entries from `path`, the GROUPLAB_CATALOG file, or the shipped data."""
    return _load_from(_resolve_origin(path))[0]


def catalog_counts(path=None) -> dict[int, int]:
    """The per-order class counts recorded in the catalog file."""
    return dict(_load_from(_resolve_origin(path))[1])


def curated_catalog(max_order: int, path=None) -> tuple[CatalogEntry, ...]:
    """Catalog entries with order <= max_order.

    `max_order` may range over 2..32, but asking past the catalog's recorded
    coverage raises CatalogError rather than silently returning a truncation.
    """
    if not 2 <= max_order <= CATALOG_ARG_CAP:
        raise ParameterError(
            f"max_order must be between 2 and {CATALOG_ARG_CAP}, got {max_order}"
        )
    entries, counts = _load_from(_resolve_origin(path))
    coverage = max(counts) if counts else max((e.order for e in entries), default=0)
    if max_order > coverage:
        raise CatalogError(
            f"catalog records orders up to {coverage}; cannot serve {max_order}"
        )
    return tuple(e for e in entries if e.order <= max_order)


def catalog_problems(entries) -> list[str]:
    """Integrity findings for a catalog: table axioms, order agreement,
    duplicate classes, and count-record mismatches.  Empty when healthy."""
    problems: list[str] = []
    by_order: dict[int, list[CatalogEntry]] = {}
    for e in entries:
        by_order.setdefault(e.order, []).append(e)
        try:
            validate_cayley(e.group.table, label=e.spec)
        except CayleyError as exc:
            problems.append(f"{e.spec}: invalid table: {exc}")
        if e.group.order != e.order:
            problems.append(f"{e.spec}: order {e.group.order} but listed as {e.order}")
    for order, batch in sorted(by_order.items()):
        for i in range(len(batch)):
            for j in range(i + 1, len(batch)):
                if are_isomorphic(batch[i].group, batch[j].group) is not None:
                    problems.append(
                        f"order {order}: {batch[i].spec} and {batch[j].spec} "
                        f"are the same group"
                    )
    return problems
