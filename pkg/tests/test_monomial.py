import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import box, bounds_for, brute_member, ideals, monomials
from stanleyfilt.monomial import (
    DimensionMismatch,
    MonomialIdeal,
    ParseError,
    format_ideal,
    ideal_add,
    ideal_colon_monomial,
    ideal_equals,
    ideal_intersect,
    ideal_membership,
    ideal_minimalize,
    mono_colon,
    mono_divides,
    mono_mul,
    parse_ideal,
    parse_monomial,
)


def I(text, n=4):
    return parse_ideal(text, n)


def m(text, n=4):
    return parse_monomial(text, n)


def test_mono_divides():
    assert mono_divides(m("x1"), m("x1^2*x2"))
    assert not mono_divides(m("x2"), m("x1^2"))
    for mono in [m("1"), m("x3^2"), m("x1*x2*x3*x4")]:
        assert mono_divides(m("1"), mono)


def test_mono_colon():
    assert mono_colon(m("x1^2*x2"), m("x1")) == m("x1*x2")
    assert mono_colon(m("x2^3"), m("x1^5")) == m("x2^3")
    assert mono_colon(m("x1*x4^2"), m("x1*x4^2")) == m("1")


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mono_divides((1, 0), (1, 0, 0))
    with pytest.raises(DimensionMismatch):
        mono_colon((1, 0), (1, 0, 0))


def test_minimalize():
    assert ideal_minimalize(4, [m("x1"), m("x1*x2")]) == I("(x1)")
    assert ideal_minimalize(4, [m("x1^2"), m("x2^2")]).gens == (m("x2^2"), m("x1^2"))
    assert ideal_minimalize(4, [m("1"), m("x1")]).is_unit


def test_membership():
    J = I("(x1*x2, x3^2)")
    assert ideal_membership(J, m("x1*x2*x3"))
    assert not ideal_membership(J, m("x3"))
    assert ideal_membership(MonomialIdeal.unit(4), m("x2^5"))


def test_intersect():
    assert ideal_intersect(I("(x1)"), I("(x2)")) == I("(x1*x2)")
    assert ideal_intersect(I("(x1, x2)"), I("(x3, x4)")) == I("(x1*x3, x1*x4, x2*x3, x2*x4)")
    J = I("(x1^2*x3, x4)")
    assert ideal_intersect(J, MonomialIdeal.unit(4)) == J


def test_colon():
    assert ideal_colon_monomial(I("(x1^2*x2, x3)"), m("x1")) == I("(x1*x2, x3)")
    J = I("(x1*x3, x1*x4, x2*x3, x2*x4)")
    got = ideal_colon_monomial(J, m("x3"))
    assert got == I("(x1, x2)")
    # both sides agree with direct membership of u * w on the clamped box
    for w in box(bounds_for(4, J.gens)):
        assert brute_member(J.gens, mono_mul(w, m("x3"))) == brute_member([(1, 0, 0, 0), (0, 1, 0, 0)], w)
    assert ideal_colon_monomial(J, m("1")) == J


def test_add():
    assert ideal_add(I("(x1^2)"), m("x1")) == I("(x1)")
    assert ideal_add(I("(x1)"), m("x2")) == I("(x1, x2)")
    assert ideal_add(I("(x2*x3)"), m("1")).is_unit


def test_equals():
    assert ideal_equals(I("(x1, x1*x2)"), I("(x1)"))
    assert not ideal_equals(I("(x1)"), I("(x1^2)"))
    assert ideal_equals(MonomialIdeal.zero(3), MonomialIdeal.zero(3))


def test_canonical_representations():
    assert MonomialIdeal.zero(3).gens == ()
    assert MonomialIdeal.unit(3).gens == ((0, 0, 0),)
    assert parse_ideal("()", 2).is_zero


@given(ideals(), st.data())
def test_colon_composes(J, data):
    a = data.draw(monomials(J.n))
    b = data.draw(monomials(J.n))
    assert J.colon(a).colon(b) == J.colon(mono_mul(a, b))


@given(ideals(), st.data())
def test_membership_iff_colon_is_unit(J, data):
    u = data.draw(monomials(J.n))
    assert (u in J) == J.colon(u).is_unit


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(ideals(n=n), ideals(n=n), ideals(n=n))))
def test_intersection_lattice_laws(triple):
    A, B, C = triple
    assert A.intersect(B) == B.intersect(A)
    assert A.intersect(B).intersect(C) == A.intersect(B.intersect(C))
    assert A.intersect(A) == A


@given(ideals(), st.data())
def test_colon_and_sum_contain_ideal(J, data):
    u = data.draw(monomials(J.n))
    assert J.colon(u).contains_ideal(J)
    assert J.add(u).contains_ideal(J)


@given(ideals())
def test_membership_matches_direct_scan(J):
    for b in box(bounds_for(J.n, J.gens)):
        assert (b in J) == brute_member(J.gens, b)


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(ideals(n=n), ideals(n=n))))
def test_intersection_matches_direct_scan(pair):
    A, B = pair
    both = A.intersect(B)
    for b in box(bounds_for(A.n, A.gens, B.gens)):
        assert (b in both) == (brute_member(A.gens, b) and brute_member(B.gens, b))


@given(ideals())
def test_generators_are_incomparable(J):
    for g in J.gens:
        for h in J.gens:
            assert g == h or not mono_divides(g, h)


# ---------------------------------------------------------------- grammar


@pytest.mark.parametrize(
    "text, n, gens",
    [
        ("(x1^2*x2, x3*x4)", 4, 2),
        ("(1)", 4, 1),
        ("(x1, x1*x2)", 4, 1),
        ("  ( x2 ^ 3 ,x1 )", 3, 2),
    ],
)
def test_parse_ideal(text, n, gens):
    assert len(parse_ideal(text, n).gens) == gens


def test_parse_minimalizes_and_prints():
    assert format_ideal(parse_ideal("(x1, x1*x2)", 4)) == "(x1)"
    assert parse_ideal("(1)", 4).is_unit


def test_parse_infers_ring_dimension():
    assert parse_ideal("(x1*x5)").n == 5


@pytest.mark.parametrize(
    "text, pos",
    [("(x1, y2)", 5), ("x1, x2)", 0), ("(x1 x2)", 4), ("(x1^)", 4), ("(x0)", 1), ("(x1, x5)", 5)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_ideal(text, 4)
    assert err.value.pos == pos


def test_parse_rejects_variable_beyond_n():
    with pytest.raises(ParseError):
        parse_ideal("(x5)", 4)


@given(ideals(max_n=5))
def test_print_parse_round_trip(J):
    assert parse_ideal(format_ideal(J), J.n) == J
