"""Validation, element arithmetic, subgroup machinery, and the text format."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grouplab.construct import build, cyclic, dihedral, elementary_abelian, symmetric
from grouplab.core import (
    Group,
    are_isomorphic,
    format_group,
    generated_subgroup,
    group_from_closure,
    induced_group,
    is_subgroup,
    minimal_generating_set,
    parse_group_text,
    quotient_group,
    read_group,
    validate_cayley,
    write_group,
)
from grouplab.errors import (
    CayleyError,
    NormalityError,
    ParameterError,
    SizeCapError,
    SubgroupError,
)

# A Latin square with two-sided identity and two-sided inverses that still
# fails associativity: (1*1)*2 = 2 but 1*(1*2) = 4.
NONASSOC_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]

# Latin with identity, but the right inverse of 2 is not a left inverse.
ONE_SIDED_INVERSE = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]


def test_validate_accepts_cyclic():
    rows = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    G = validate_cayley(rows, label="c4")
    assert G.order == 4
    assert G.mul(3, 2) == 1
    assert G.inv(1) == 3
    assert G.table == tuple(tuple(r) for r in rows)


def test_validate_relabels_identity_to_zero():
    """A table whose identity sits elsewhere comes back with it at index 0."""
    base = [[(i + j) % 3 for j in range(3)] for i in range(3)]
    perm = [2, 1, 0]
    shuffled = [[0] * 3 for _ in range(3)]
    for a in range(3):
        for b in range(3):
            shuffled[perm[a]][perm[b]] = perm[base[a][b]]
    G = validate_cayley(shuffled)
    assert G.table[0] == (0, 1, 2)
    assert all(G.table[i][0] == i for i in range(3))
    assert are_isomorphic(G, cyclic(3)) is not None


def test_validate_shape_errors():
    with pytest.raises(CayleyError) as err:
        validate_cayley([])
    assert err.value.axiom == "shape"
    with pytest.raises(CayleyError) as err:
        validate_cayley([[0, 1], [1]])
    assert err.value.axiom == "shape"
    assert err.value.witness == (1,)


def test_validate_latin_errors():
    with pytest.raises(CayleyError) as err:
        validate_cayley([[0, 1], [1, 1]])
    assert err.value.axiom == "latin"
    with pytest.raises(CayleyError, match="out of range") as err:
        validate_cayley([[0, 1], [1, 7]])
    assert err.value.axiom == "latin"


def test_validate_missing_identity():
    square = [[0, 2, 1], [2, 1, 0], [1, 0, 2]]
    with pytest.raises(CayleyError, match="no two-sided identity") as err:
        validate_cayley(square)
    assert err.value.axiom == "identity"


def test_validate_one_sided_inverse():
    with pytest.raises(CayleyError, match="right inverse 3 of 2") as err:
        validate_cayley(ONE_SIDED_INVERSE)
    assert err.value.axiom == "inverse"
    assert err.value.witness == (2, 3)


def test_validate_nonassociative_loop():
    with pytest.raises(CayleyError) as err:
        validate_cayley(NONASSOC_LOOP)
    assert err.value.axiom == "associativity"
    assert err.value.witness == (1, 1, 2)


def test_element_arithmetic():
    G = dihedral(8)
    rotation, flip = 1, 4
    assert G.element_order(rotation) == 4
    assert G.element_order(flip) == 2
    assert G.power(rotation, -1) == G.inv(rotation)
    assert G.power(rotation, 0) == 0
    assert G.conj(rotation, 0) == rotation
    # a flip inverts the rotation it conjugates
    assert G.conj(rotation, flip) == G.inv(rotation)
    assert G.commutator(rotation, G.mul(rotation, rotation)) == 0
    assert not G.is_abelian
    assert sorted(G.inverses) == sorted(range(8))


def test_cyclic_subgroup_and_generated():
    G = cyclic(12)
    assert len(G.cyclic_subgroup(1)) == 12
    evens = generated_subgroup(G, {4, 6})
    assert len(evens) == 6
    assert evens.as_tuple() == (0, 2, 4, 6, 8, 10)
    assert 2 in evens and 3 not in evens


def test_is_subgroup():
    G = dihedral(8)
    assert is_subgroup(G, range(4))
    assert not is_subgroup(G, {1, 2})
    assert not is_subgroup(G, {0, 1, 4})


def test_induced_group():
    G = dihedral(8)
    H, embed = induced_group(G, range(4))
    assert H.order == 4
    assert embed == (0, 1, 2, 3)
    assert are_isomorphic(H, cyclic(4)) is not None
    with pytest.raises(SubgroupError):
        induced_group(G, {0, 1, 4})


def test_quotient_group():
    G = cyclic(12)
    Q, proj = quotient_group(G, {0, 6})
    assert Q.order == 6
    assert proj[6] == 0
    assert are_isomorphic(Q, cyclic(6)) is not None


def test_quotient_rejects_non_normal():
    G = symmetric(3)
    flip = next(x for x in range(1, 6) if G.element_order(x) == 2)
    with pytest.raises(NormalityError) as err:
        quotient_group(G, {0, flip})
    assert err.value.witness is not None


def test_isomorphism_found_and_verified():
    G = dihedral(8)
    H = build("C4:C2[inv]")
    iso = are_isomorphic(G, H)
    assert iso is not None
    assert iso.verify(G, H)
    back = iso.inverse()
    assert all(back[iso.forward[x]] == x for x in range(G.order))
    assert not iso.verify(G, cyclic(8))


def test_isomorphism_rejects_lookalikes():
    assert are_isomorphic(dihedral(8), build("Q8")) is None
    # same order profile and centre size, still not isomorphic
    assert are_isomorphic(build("C2^2:C4[swap]"), build("D8*C4")) is None
    assert are_isomorphic(cyclic(4), elementary_abelian(2, 2)) is None


def test_minimal_generating_set():
    assert minimal_generating_set(cyclic(12)) == [1]
    assert minimal_generating_set(dihedral(8)) == [1, 4]
    assert len(minimal_generating_set(elementary_abelian(2, 4))) == 4


def test_group_from_closure_modular_addition():
    G = group_from_closure([1], lambda a, b: (a + b) % 5)
    assert G.order == 5
    assert G.element_keys is not None
    assert set(G.element_keys) == set(range(5))
    assert G.element_keys[0] == 0


def test_group_from_closure_rejects_bad_rules():
    with pytest.raises(SizeCapError):
        group_from_closure([1], lambda a, b: a + b, cap=50)
    with pytest.raises(CayleyError):
        group_from_closure([1], lambda a, b: (a - b) % 5, identity=0)


def test_exchange_format_round_trip(tmp_path):
    G = symmetric(4)
    path = tmp_path / "s4.group"
    write_group(G, path)
    H = read_group(path, label="reread")
    assert H.table == G.table
    assert H.label == "reread"
    assert parse_group_text(format_group(G)).table == G.table


def test_parse_group_text_errors():
    with pytest.raises(ParameterError, match="order n"):
        parse_group_text("2\n0 1\n1 0")
    with pytest.raises(ParameterError, match="expected 2 table rows"):
        parse_group_text("order 2\n0 1")
    with pytest.raises(ParameterError, match="bad table row"):
        parse_group_text("order 2\n0 1\n1 x")
    with pytest.raises(ParameterError, match="identity at index 0"):
        parse_group_text("order 2\n1 0\n0 1")
    with pytest.raises(ParameterError, match="bad order line"):
        parse_group_text("order two\n0 1\n1 0")


@given(st.integers(min_value=0, max_value=23), st.integers(min_value=0, max_value=23))
def test_conjugation_preserves_order(x, by):
    G = symmetric(4)
    assert G.element_order(G.conj(x, by)) == G.element_order(x)


@given(st.integers(min_value=0, max_value=23), st.integers(min_value=0, max_value=23))
def test_inverse_of_product(a, b):
    G = symmetric(4)
    assert G.inv(G.mul(a, b)) == G.mul(G.inv(b), G.inv(a))


@given(st.permutations(list(range(1, 8))))
def test_relabelling_preserves_isomorphism_class(tail):
    G = dihedral(8)
    perm = [0] + list(tail)
    rows = [[0] * 8 for _ in range(8)]
    for a in range(8):
        for b in range(8):
            rows[perm[a]][perm[b]] = perm[G.mul(a, b)]
    H = validate_cayley(rows)
    iso = are_isomorphic(G, H)
    assert iso is not None and iso.verify(G, H)
