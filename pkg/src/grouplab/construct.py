"""Constructors for the standard group families and product operations.

Also home of the little spec grammar ("D8xC2", "C3^2:C2[inv]", "Q8*D8", ...)
used by the command line and the catalog file.  Parsing and printing round
trip, and every constructor numbers its elements deterministically, so specs
are stable keys for groups.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from collections.abc import Sequence
from itertools import permutations
from typing import Union

from .core import Group, group_from_closure, minimal_generating_set
from .errors import (
    ActionError,
    AmalgamationError,
    ParameterError,
    SpecSyntaxError,
)

__all__ = [
    "AtomSpec",
    "GroupSpec",
    "ProductSpec",
    "SemidirectSpec",
    "abelian_type",
    "alternating",
    "build",
    "build_named",
    "central_product",
    "cyclic",
    "dicyclic",
    "dihedral",
    "direct_product",
    "elementary_abelian",
    "general_linear",
    "parse_group_spec",
    "registered_actions",
    "semidihedral",
    "semidirect_product",
    "spec_text",
    "symmetric",
]


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


# -- named families ----------------------------------------------------------


def abelian_type(divisors: Sequence[int], label: str = "") -> Group:
    """Direct sum of cyclic groups C_{d1} x ... x C_{dk}, mixed-radix numbered."""
    ds = tuple(int(d) for d in divisors)
    _require(len(ds) >= 1, "abelian type needs at least one divisor")
    _require(all(d >= 1 for d in ds), f"divisors must be positive, got {ds}")
    n = math.prod(ds)
    weights = []
    w = n
    for d in ds:
        w //= d
        weights.append(w)

    def decode(idx: int) -> tuple[int, ...]:
        out = []
        for wgt, d in zip(weights, ds):
            out.append((idx // wgt) % d)
        return tuple(out)

    rows = [[0] * n for _ in range(n)]
    coords = [decode(i) for i in range(n)]
    for a in range(n):
        ca = coords[a]
        row = rows[a]
        for b in range(n):
            cb = coords[b]
            idx = 0
            for wgt, d, x, y in zip(weights, ds, ca, cb):
                idx += ((x + y) % d) * wgt
            row[b] = idx
    if not label:
        if len(ds) > 1 and len(set(ds)) == 1:
            label = f"C{ds[0]}^{len(ds)}"
        else:
            label = "x".join(f"C{d}" for d in ds)
    return Group(rows, label=label)


def cyclic(n: int) -> Group:
    _require(n >= 1, f"cyclic group order must be >= 1, got {n}")
    return abelian_type((n,), label=f"C{n}")


def elementary_abelian(p: int, k: int) -> Group:
    _require(_is_prime(p), f"elementary abelian base {p} is not prime")
    _require(k >= 1, f"rank must be >= 1, got {k}")
    return abelian_type((p,) * k, label=f"C{p}^{k}" if k > 1 else f"C{p}")


def _two_part_table(m: int, twist: int, b_square: int, label: str) -> Group:
    """Group <a, b | a^m, b^2 = a^b_square, b^-1 a b = a^twist>.

    Indices 0..m-1 are the powers a^i, indices m..2m-1 are a^(i-m) * b.
    Needs twist^2 = 1 mod m so that the relation set is consistent.
    """
    assert (twist * twist) % m == 1 % m, "twist must square to 1 mod m"
    n = 2 * m
    rows = [[0] * n for _ in range(n)]
    for i1 in range(m):
        for j1 in (0, 1):
            a = j1 * m + i1
            row = rows[a]
            for i2 in range(m):
                for j2 in (0, 1):
                    b = j2 * m + i2
                    if j1 == 0:
                        i, j = (i1 + i2) % m, j2
                    else:
                        # a^i1 b a^i2 = a^(i1 + twist*i2) b, then b*b^j2
                        i, j = (i1 + twist * i2) % m, 1 + j2
                        if j == 2:
                            i, j = (i + b_square) % m, 0
                    row[b] = j * m + i
    return Group(rows, label=label)


def dihedral(order: int) -> Group:
    """Dihedral group of the given total order (so dihedral(8) has 8 elements)."""
    _require(order >= 4 and order % 2 == 0, f"dihedral order must be even and >= 4, got {order}")
    m = order // 2
    return _two_part_table(m, m - 1, 0, label=f"D{order}")


def dicyclic(order: int) -> Group:
    """Dicyclic group of the given order; 2-power orders are the quaternion ones."""
    _require(order >= 8 and order % 4 == 0, f"dicyclic order must be a multiple of 4, >= 8, got {order}")
    m = order // 2
    name = f"Q{order}" if order & (order - 1) == 0 else f"Dic{order}"
    return _two_part_table(m, m - 1, m // 2, label=name)


def semidihedral(order: int = 16) -> Group:
    """The semidihedral group of order 16 (<a,b | a^8, b^2, a^b = a^3>)."""
    _require(order == 16, f"only the order-16 semidihedral group is supported, got {order}")
    return _two_part_table(8, 3, 0, label="SD16")


def symmetric(degree: int) -> Group:
    """Symmetric group on `degree` points; elements in lexicographic order."""
    _require(1 <= degree <= 6, f"symmetric degree must be 1..6, got {degree}")
    elems = list(permutations(range(degree)))
    index = {p: i for i, p in enumerate(elems)}
    rows = [
        [index[tuple(p[q[i]] for i in range(degree))] for q in elems]
        for p in elems
    ]
    return Group(rows, label=f"S{degree}", element_keys=elems)


def alternating(degree: int) -> Group:
    """Alternating group on `degree` points; even permutations, lex order."""
    _require(1 <= degree <= 6, f"alternating degree must be 1..6, got {degree}")
    elems = [p for p in permutations(range(degree)) if _parity(p) == 0]
    index = {p: i for i, p in enumerate(elems)}
    rows = [
        [index[tuple(p[q[i]] for i in range(degree))] for q in elems]
        for p in elems
    ]
    return Group(rows, label=f"A{degree}", element_keys=elems)


def _parity(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def general_linear(dim: int, p: int) -> Group:
    """GL(dim, p) for dim=2 and p in {2, 3, 5}, built by closing all
    invertible matrices under multiplication mod p."""
    _require(dim == 2, f"only 2x2 matrix groups are supported, got dim={dim}")
    _require(p in (2, 3, 5), f"matrix field size must be 2, 3 or 5, got {p}")
    mats = [
        (a, b, c, d)
        for a in range(p) for b in range(p) for c in range(p) for d in range(p)
        if (a * d - b * c) % p != 0
    ]

    def mmul(x, y):
        a1, b1, c1, d1 = x
        a2, b2, c2, d2 = y
        return (
            (a1 * a2 + b1 * c2) % p,
            (a1 * b2 + b1 * d2) % p,
            (c1 * a2 + d1 * c2) % p,
            (c1 * b2 + d1 * d2) % p,
        )

    return group_from_closure(mats, mmul, identity=(1, 0, 0, 1), label=f"GL(2,{p})")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


_FAMILIES = {
    "cyclic": lambda params: cyclic(*params),
    "dihedral": lambda params: dihedral(*params),
    "dicyclic": lambda params: dicyclic(*params),
    "semidihedral": lambda params: semidihedral(*params) if params else semidihedral(),
    "abelian": lambda params: abelian_type(params),
    "elementary": lambda params: elementary_abelian(*params),
    "symmetric": lambda params: symmetric(*params),
    "alternating": lambda params: alternating(*params),
    "gl": lambda params: general_linear(*params),
}


def build_named(family: str, *params: int) -> Group:
    """Dispatch to a named family constructor ("cyclic", "dihedral", ...)."""
    try:
        maker = _FAMILIES[family]
    except KeyError:
        raise ParameterError(f"unknown family {family!r}; choose from {sorted(_FAMILIES)}")
    return maker(params)


# -- products ----------------------------------------------------------------


def direct_product(G: Group, H: Group) -> Group:
    """G x H with pair (g, h) at index g*|H| + h."""
    ng, nh = G.order, H.order
    n = ng * nh
    rows = [[0] * n for _ in range(n)]
    for g1 in range(ng):
        grow = G.table[g1]
        for h1 in range(nh):
            a = g1 * nh + h1
            hrow = H.table[h1]
            row = rows[a]
            for g2 in range(ng):
                base = grow[g2] * nh
                off = g2 * nh
                for h2 in range(nh):
                    row[off + h2] = base + hrow[h2]
    label = f"{G.label}x{H.label}" if G.label and H.label else ""
    return Group(rows, label=label)


def _unique_central_involution(G: Group) -> int:
    from .core import _center_members

    found = [z for z in _center_members(G) if z != 0 and G.element_order(z) == 2]
    if len(found) != 1:
        raise AmalgamationError(
            f"central product needs a unique central involution; "
            f"{G.label or 'factor'} has {len(found)}"
        )
    return found[0]


def central_product(G: Group, H: Group) -> Group:
    """Central product amalgamating the unique central involutions.

    Built as (G x H) / <(z_G, z_H)>, so the order is |G|*|H|/2.
    """
    zg = _unique_central_involution(G)
    zh = _unique_central_involution(H)
    from .core import quotient_group

    D = direct_product(G, H)
    amalgam = frozenset({0, zg * H.order + zh})
    Q, _ = quotient_group(D, amalgam)
    label = f"{G.label}*{H.label}" if G.label and H.label else ""
    return Group(Q.table, label=label)


# -- semidirect products and the action registry -----------------------------


def _identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def _inversion_perm(N: Group) -> tuple[int, ...]:
    if not N.is_abelian:
        raise ActionError("inversion action needs an abelian normal factor")
    return N.inverses


def _power_perm(N: Group, k: int) -> tuple[int, ...]:
    if not N.is_abelian:
        raise ActionError(f"pow{k} action needs an abelian normal factor")
    perm = tuple(N.power(x, k) for x in range(N.order))
    if len(set(perm)) != N.order:
        raise ActionError(f"x -> x^{k} is not a bijection on a group of order {N.order}")
    return perm


def _swap_perm(N: Group) -> tuple[int, ...]:
    m = math.isqrt(N.order)
    if m * m != N.order:
        raise ActionError("swap action needs a square order (two equal direct factors)")
    return tuple((idx % m) * m + (idx // m) for idx in range(N.order))


def _first_order3_automorphism(N: Group) -> tuple[int, ...]:
    from .core import _element_class

    n = N.order
    gens = minimal_generating_set(N)
    classes: dict[tuple[int, int], list[int]] = {}
    for y in range(n):
        classes.setdefault(_element_class(N, y), []).append(y)
    rows = N.table

    def close(phi, psi, new):
        queue = [new]
        while queue:
            x = queue.pop()
            known = [a for a in range(n) if phi[a] >= 0]
            for y in known:
                for a, b in ((x, y), (y, x)):
                    p = rows[a][b]
                    q = rows[phi[a]][phi[b]]
                    if phi[p] >= 0:
                        if phi[p] != q:
                            return False
                    elif psi[q] >= 0:
                        return False
                    else:
                        phi[p] = q
                        psi[q] = p
                        queue.append(p)
        return True

    def search(level, phi, psi):
        if level == len(gens):
            perm = tuple(phi)
            if perm != _identity_perm(n):
                comp = tuple(perm[perm[x]] for x in range(n))
                if tuple(perm[comp[x]] for x in range(n)) == _identity_perm(n):
                    return perm
            return None
        g = gens[level]
        if phi[g] >= 0:
            return search(level + 1, phi, psi)
        for y in classes[_element_class(N, g)]:
            if psi[y] >= 0:
                continue
            phi2, psi2 = phi[:], psi[:]
            phi2[g], psi2[y] = y, g
            if close(phi2, psi2, g):
                got = search(level + 1, phi2, psi2)
                if got is not None:
                    return got
        return None

    phi0, psi0 = [-1] * n, [-1] * n
    phi0[0] = psi0[0] = 0
    got = search(0, phi0, psi0)
    if got is None:
        raise ActionError("normal factor has no automorphism of order 3")
    return got


_POW_RE = re.compile(r"^pow([0-9]+)$")

#: Names accepted in the "N:H[name]" spec form.  Each maps every greedily
#: chosen generator of H to one automorphism of N; the extension to all of H
#: is computed and checked for consistency.
_ACTION_DOC = {
    "trivial": "every generator acts as the identity",
    "inv": "the generator inverts N (N abelian, |H| = 2)",
    "geninv": "every generator inverts N (N abelian, any H where consistent)",
    "pow<k>": "generators send x to x^k (N abelian, k coprime to |N|)",
    "swap": "generators exchange the two equal direct factors of N",
    "aut3": "generator acts by the first order-3 automorphism of N (|H| = 3)",
}


def registered_actions() -> dict[str, str]:
    """Names usable in specs, mapped to one-line descriptions."""
    return dict(_ACTION_DOC)


def _action_perm(name: str, N: Group, H: Group) -> tuple[int, ...]:
    if name == "trivial":
        return _identity_perm(N.order)
    if name == "inv":
        if H.order != 2:
            raise ActionError(f'action "inv" needs |H| = 2, got {H.order} (try "geninv")')
        return _inversion_perm(N)
    if name == "geninv":
        return _inversion_perm(N)
    if name == "swap":
        return _swap_perm(N)
    if name == "aut3":
        if H.order != 3:
            raise ActionError(f'action "aut3" needs |H| = 3, got {H.order}')
        return _first_order3_automorphism(N)
    m = _POW_RE.match(name)
    if m:
        return _power_perm(N, int(m.group(1)))
    raise ActionError(f"unknown action name {name!r}; known: {sorted(_ACTION_DOC)}")


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[q[x]] for x in range(len(p)))


def _check_automorphism(N: Group, perm: Sequence[int], what: str) -> tuple[int, ...]:
    perm = tuple(int(v) for v in perm)
    n = N.order
    if sorted(perm) != list(range(n)):
        raise ActionError(f"{what}: image map is not a bijection on 0..{n - 1}")
    rows = N.table
    for a in range(n):
        pa = perm[a]
        row = rows[a]
        for b in range(n):
            if perm[row[b]] != rows[pa][perm[b]]:
                raise ActionError(f"{what}: image map is not multiplicative at ({a},{b})")
    return perm


def semidirect_product(N: Group, H: Group, action) -> Group:
    """N semidirect H where `action` decides how H conjugates N.

    `action` is either a registered name ("inv", "pow3", "swap", "aut3",
    "geninv", "trivial") or a dict mapping H generator indices to index
    permutations of N.  The per-generator maps must extend to a consistent
    homomorphism from H into Aut(N); anything else raises ActionError.
    Pair (a, h) sits at index a*|H| + h.
    """
    if isinstance(action, str):
        perm = _check_automorphism(N, _action_perm(action, N, H), f"action {action!r}")
        assignments = {g: perm for g in minimal_generating_set(H)}
    else:
        assignments = {
            int(g): _check_automorphism(N, perm, f"action for generator {g}")
            for g, perm in dict(action).items()
        }

    nh = H.order
    phis: list[tuple[int, ...] | None] = [None] * nh
    phis[0] = _identity_perm(N.order)
    for g, perm in assignments.items():
        if not 0 <= g < nh:
            raise ActionError(f"generator index {g} outside the acting group")
        if phis[g] is not None and phis[g] != perm:
            raise ActionError(f"conflicting automorphisms assigned to element {g}")
        phis[g] = perm

    # close the assignment under H's multiplication
    changed = True
    while changed:
        changed = False
        known = [h for h in range(nh) if phis[h] is not None]
        for h1 in known:
            for h2 in known:
                h = H.mul(h1, h2)
                comp = _compose(phis[h1], phis[h2])
                if phis[h] is None:
                    phis[h] = comp
                    changed = True
                elif phis[h] != comp:
                    raise ActionError(
                        f"action is incompatible with the acting group's multiplication "
                        f"at ({h1},{h2})"
                    )
    if any(p is None for p in phis):
        raise ActionError("assigned generators do not generate the acting group")

    nn = N.order
    n = nn * nh
    rows = [[0] * n for _ in range(n)]
    for a in range(nn):
        for h1 in range(nh):
            row = rows[a * nh + h1]
            phi = phis[h1]
            hrow = H.table[h1]
            arow = N.table[a]
            for b in range(nn):
                base = arow[phi[b]] * nh
                off = b * nh
                for h2 in range(nh):
                    row[off + h2] = base + hrow[h2]
    act_name = action if isinstance(action, str) else "custom"
    label = f"{N.label}:{H.label}[{act_name}]" if N.label and H.label else ""
    return Group(rows, label=label)


# -- group spec grammar -------------------------------------------------------


@dataclass(frozen=True)
class AtomSpec:
    kind: str               # "C", "D", "Q", "Dic", "SD16", "S", "A", "GL"
    params: tuple[int, ...]

    def text(self) -> str:
        if self.kind == "SD16":
            return "SD16"
        if self.kind == "GL":
            return f"GL(2,{self.params[0]})"
        if self.kind == "C" and len(self.params) == 2:
            return f"C{self.params[0]}^{self.params[1]}"
        return f"{self.kind}{self.params[0]}"


@dataclass(frozen=True)
class SemidirectSpec:
    normal: AtomSpec
    actor: AtomSpec
    action: str

    def text(self) -> str:
        return f"{self.normal.text()}:{self.actor.text()}[{self.action}]"


@dataclass(frozen=True)
class ProductSpec:
    op: str                 # "x" direct, "*" central
    left: "GroupSpec"
    right: "GroupSpec"

    def text(self) -> str:
        return f"{self.left.text()}{self.op}{self.right.text()}"


GroupSpec = Union[AtomSpec, SemidirectSpec, ProductSpec]


def spec_text(spec: GroupSpec) -> str:
    """Canonical text for a parsed spec (whitespace-free)."""
    return spec.text()


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_literal(self, lit: str) -> bool:
        self.skip_ws()
        if self.text.startswith(lit, self.pos):
            self.pos += len(lit)
            return True
        return False

    def take_int(self, what: str) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise SpecSyntaxError(f"expected {what}", start)
        return int(self.text[start:self.pos])

    def take_name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        if self.pos == start:
            raise SpecSyntaxError("expected an action name", start)
        return self.text[start:self.pos]


def _parse_atom(sc: _Scanner) -> AtomSpec:
    sc.skip_ws()
    pos = sc.pos
    if sc.take_literal("SD16"):
        return AtomSpec("SD16", ())
    if sc.take_literal("Dic"):
        return AtomSpec("Dic", (sc.take_int("an order after 'Dic'"),))
    if sc.take_literal("GL(2,"):
        p = sc.take_int("a field size")
        if not sc.take_literal(")"):
            raise SpecSyntaxError("expected ')'", sc.pos)
        return AtomSpec("GL", (p,))
    for kind in ("C", "D", "Q", "S", "A"):
        if sc.take_literal(kind):
            n = sc.take_int(f"an integer after {kind!r}")
            if kind == "C" and sc.take_literal("^"):
                k = sc.take_int("an exponent after '^'")
                return AtomSpec("C", (n, k))
            return AtomSpec(kind, (n,))
    raise SpecSyntaxError(f"expected a group atom, found {sc.text[pos:pos + 8]!r}", pos)


def _parse_unit(sc: _Scanner) -> GroupSpec:
    atom = _parse_atom(sc)
    if sc.peek() == ":":
        sc.take_literal(":")
        actor = _parse_atom(sc)
        if not sc.take_literal("["):
            raise SpecSyntaxError("expected '[' with an action name", sc.pos)
        name = sc.take_name()
        if not sc.take_literal("]"):
            raise SpecSyntaxError("expected ']'", sc.pos)
        return SemidirectSpec(atom, actor, name)
    return atom


def parse_group_spec(text: str) -> GroupSpec:
    """Parse spec text like "D8xC2" or "C3^2:C2[inv]" into an AST."""
    sc = _Scanner(text)
    sc.skip_ws()
    if sc.pos >= len(text):
        raise SpecSyntaxError("empty spec", 0)
    out = _parse_unit(sc)
    while True:
        ch = sc.peek()
        if ch == "x" or ch == "*":
            sc.take_literal(ch)
            right = _parse_unit(sc)
            out = ProductSpec(ch, out, right)
        elif ch == "":
            return out
        else:
            raise SpecSyntaxError(f"unexpected character {ch!r}", sc.pos)


def _build_atom(atom: AtomSpec) -> Group:
    kind, params = atom.kind, atom.params
    if kind == "C":
        n = params[0]
        _require(n >= 1, f"C{n}: cyclic order must be >= 1")
        if len(params) == 2:
            k = params[1]
            _require(k >= 1, f"{atom.text()}: exponent must be >= 1")
            return abelian_type((n,) * k, label=atom.text())
        return cyclic(n)
    if kind == "D":
        return dihedral(params[0])
    if kind == "Q":
        n = params[0]
        _require(n >= 8 and n & (n - 1) == 0, f"Q{n}: quaternion orders are powers of two, >= 8")
        return dicyclic(n)
    if kind == "Dic":
        return dicyclic(params[0])
    if kind == "SD16":
        return semidihedral()
    if kind == "S":
        return symmetric(params[0])
    if kind == "A":
        return alternating(params[0])
    if kind == "GL":
        return general_linear(2, params[0])
    raise ParameterError(f"unhandled atom kind {kind!r}")  # pragma: no cover


def _build_spec(spec: GroupSpec) -> Group:
    if isinstance(spec, AtomSpec):
        return _build_atom(spec)
    if isinstance(spec, SemidirectSpec):
        N = _build_atom(spec.normal)
        H = _build_atom(spec.actor)
        G = semidirect_product(N, H, spec.action)
        return Group(G.table, label=spec.text())
    if isinstance(spec, ProductSpec):
        left = _build_spec(spec.left)
        right = _build_spec(spec.right)
        G = direct_product(left, right) if spec.op == "x" else central_product(left, right)
        return Group(G.table, label=spec.text())
    raise ParameterError(f"not a group spec: {spec!r}")  # pragma: no cover


def build(spec: GroupSpec | str) -> Group:
    """Build the group named by a spec AST or by raw spec text."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    return _build_spec(spec)
