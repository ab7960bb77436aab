"""Family constructors, products, semidirect actions, and the group spec grammar."""

from __future__ import annotations

import pytest

from grouplab.construct import (
    abelian_type,
    alternating,
    build,
    build_named,
    central_product,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    general_linear,
    parse_group_spec,
    registered_actions,
    semidihedral,
    semidirect_product,
    spec_text,
    symmetric,
)
from grouplab.core import are_isomorphic
from grouplab.errors import (
    ActionError,
    AmalgamationError,
    ParameterError,
    SpecSyntaxError,
)
from grouplab.structure import order_profile


def profile(G):
    return order_profile(G).pairs()


# -- named families ----------------------------------------------------------


def test_cyclic_and_abelian_types():
    assert cyclic(1).order == 1
    assert cyclic(7).is_abelian
    assert profile(abelian_type([2, 6])) == [(1, 1), (2, 3), (3, 2), (6, 6)]
    assert elementary_abelian(2, 4).order == 16
    assert profile(elementary_abelian(3, 2)) == [(1, 1), (3, 8)]


def test_dihedral():
    G = dihedral(8)
    assert profile(G) == [(1, 1), (2, 5), (4, 2)]
    assert not G.is_abelian
    assert dihedral(4).is_abelian  # the Klein four case


def test_dicyclic_and_semidihedral():
    assert profile(build("Q8")) == [(1, 1), (2, 1), (4, 6)]
    assert dicyclic(16).label == "Q16"
    assert dicyclic(12).label == "Dic12"
    assert profile(semidihedral(16)) == [(1, 1), (2, 5), (4, 6), (8, 4)]


def test_permutation_groups():
    assert profile(symmetric(4)) == [(1, 1), (2, 9), (3, 8), (4, 6)]
    assert profile(alternating(5)) == [(1, 1), (2, 15), (3, 20), (5, 24)]
    assert symmetric(1).order == 1 and alternating(2).order == 1
    assert are_isomorphic(alternating(3), cyclic(3)) is not None
    # permutation tuples ride along for later lookups
    S3 = symmetric(3)
    assert S3.element_keys[0] == (0, 1, 2)


def test_general_linear():
    assert [general_linear(2, p).order for p in (2, 3, 5)] == [6, 48, 480]
    assert are_isomorphic(general_linear(2, 2), symmetric(3)) is not None
    G = general_linear(2, 3)
    assert profile(G) == [(1, 1), (2, 13), (3, 8), (4, 6), (6, 8), (8, 12)]
    assert G.element_keys[0] == (1, 0, 0, 1)


@pytest.mark.parametrize(
    "call",
    [
        lambda: dihedral(7),
        lambda: dihedral(2),
        lambda: dicyclic(10),
        lambda: dicyclic(4),
        lambda: semidihedral(32),
        lambda: symmetric(7),
        lambda: alternating(7),
        lambda: general_linear(2, 7),
        lambda: general_linear(3, 3),
        lambda: cyclic(0),
        lambda: elementary_abelian(4, 2),
        lambda: abelian_type([]),
    ],
)
def test_family_parameter_errors(call):
    with pytest.raises(ParameterError):
        call()


def test_build_named_matches_functions():
    assert build_named("dihedral", 12).table == dihedral(12).table
    assert build_named("alternating", 4).table == alternating(4).table
    assert build_named("abelian", 2, 6).table == abelian_type([2, 6]).table
    with pytest.raises(ParameterError, match="unknown family"):
        build_named("frobenius", 20)


# -- products ----------------------------------------------------------------


def test_direct_product():
    P = direct_product(dihedral(8), cyclic(3))
    assert P.order == 24 and P.label == "D8xC3"
    assert not P.is_abelian
    assert direct_product(cyclic(2), cyclic(3)).is_abelian
    # index convention: (g, h) lives at g * |H| + h
    D8, C3 = dihedral(8), cyclic(3)
    assert P.mul(1 * 3 + 1, 2 * 3 + 2) == D8.mul(1, 2) * 3 + C3.mul(1, 2)


def test_central_product():
    G = central_product(dihedral(8), cyclic(4))
    assert G.order == 16 and G.label == "D8*C4"
    assert profile(G) == [(1, 1), (2, 7), (4, 8)]
    assert central_product(build("Q8"), build("Q8")).order == 32


def test_central_product_needs_unique_central_involution():
    with pytest.raises(AmalgamationError, match="has 0"):
        central_product(cyclic(3), cyclic(3))
    with pytest.raises(AmalgamationError, match="has 3"):
        central_product(elementary_abelian(2, 2), dihedral(8))


# -- semidirect products -----------------------------------------------------


def test_registered_action_names():
    assert sorted(registered_actions()) == [
        "aut3",
        "geninv",
        "inv",
        "pow<k>",
        "swap",
        "trivial",
    ]


def test_trivial_action_is_direct_product():
    lhs = semidirect_product(dihedral(8), cyclic(3), "trivial")
    assert lhs.table == direct_product(dihedral(8), cyclic(3)).table


def test_inversion_action():
    assert are_isomorphic(build("C3:C2[inv]"), symmetric(3)) is not None
    G = build("C3^2:C2[inv]")
    assert G.order == 18 and not G.is_abelian


def test_generator_inversion_action():
    assert are_isomorphic(build("C3:C4[geninv]"), dicyclic(12)) is not None


def test_power_action():
    G = build("C4:C4[pow3]")
    assert G.order == 16 and not G.is_abelian
    assert profile(G) == [(1, 1), (2, 3), (4, 12)]
    assert are_isomorphic(build("C8:C2[pow5]"), dihedral(16)) is None


def test_swap_action():
    G = build("C2^2:C4[swap]")
    assert profile(G) == [(1, 1), (2, 7), (4, 8)]
    # looks like D8*C4 on paper, is not
    assert are_isomorphic(G, central_product(dihedral(8), cyclic(4))) is None


def test_order_three_automorphism_action():
    G = build("Q8:C3[aut3]")
    assert G.order == 24
    assert profile(G) == [(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]


def test_explicit_action_dict():
    # send the generator of C2 to inversion on C5
    G = semidirect_product(cyclic(5), cyclic(2), {1: (0, 4, 3, 2, 1)})
    assert are_isomorphic(G, dihedral(10)) is not None


@pytest.mark.parametrize(
    "n_spec,h_spec,action,note",
    [
        ("S3", "C2", "inv", "abelian"),
        ("C5", "C3", "inv", 'needs |H| = 2'),
        ("C4", "C2", "pow2", "not a bijection"),
        ("C6", "C2", "swap", "square order"),
        ("C4", "C3", "aut3", "no automorphism of order 3"),
        ("C3", "C2", "frob", "unknown action"),
    ],
)
def test_action_errors(n_spec, h_spec, action, note):
    with pytest.raises(ActionError, match=note):
        semidirect_product(build(n_spec), build(h_spec), action)


def test_action_dict_errors():
    with pytest.raises(ActionError, match="not multiplicative"):
        semidirect_product(cyclic(4), cyclic(2), {1: (0, 2, 1, 3)})
    with pytest.raises(ActionError, match="do not generate"):
        semidirect_product(cyclic(3), elementary_abelian(2, 2), {1: (0, 2, 1)})


# -- spec grammar ------------------------------------------------------------


@pytest.mark.parametrize(
    "text,normal,order",
    [
        ("C12", "C12", 12),
        ("C2^3", "C2^3", 8),
        ("D8 x C3", "D8xC3", 24),
        ("Q8*C4", "Q8*C4", 16),
        ("C3:C4[geninv]", "C3:C4[geninv]", 12),
        ("C2^2 : C4 [swap] x S3", "C2^2:C4[swap]xS3", 96),
        ("GL(2,3)", "GL(2,3)", 48),
        ("SD16", "SD16", 16),
    ],
)
def test_spec_round_trip(text, normal, order):
    ast = parse_group_spec(text)
    assert spec_text(ast) == normal
    G = build(text)
    assert G.order == order
    assert G.label == normal


def test_products_parse_left_associative():
    assert build("C2xC3xC4").order == 24
    assert spec_text(parse_group_spec("C2 * C3 x C4")) == "C2*C3xC4"


@pytest.mark.parametrize(
    "text,position",
    [
        ("", 0),
        ("C", 1),
        ("D8x", 3),
        ("Foo", 0),
        ("c4", 0),
        ("D8)", 2),
        ("C3:C2", 5),
        ("C3:C2[inv", 9),
        ("C3:C2[inv]x", 11),
        ("C3:", 3),
    ],
)
def test_spec_syntax_errors(text, position):
    with pytest.raises(SpecSyntaxError) as err:
        parse_group_spec(text)
    assert err.value.position == position


def test_build_reports_semantic_errors():
    with pytest.raises(ParameterError):
        build("S9")
    with pytest.raises(ActionError):
        build("S3:C2[inv]")
