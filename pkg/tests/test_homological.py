import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ideals
from stanleyfilt.decomposition import associated_primes, dim_quotient
from stanleyfilt.homological import (
    MAX_TAYLOR_GENERATORS,
    SimplicialComplexSmall,
    TaylorOverflow,
    depth_report,
    depth_taylor_oracle,
    integer_rank,
    reduced_homology_ranks,
    upper_koszul_complex,
)
from stanleyfilt.monomial import MonomialIdeal, parse_ideal


def I(text, n=4):
    return parse_ideal(text, n)


def complex_from(vertices, facets):
    return SimplicialComplexSmall.from_faces(frozenset(vertices), {sum(1 << v for v in f) for f in facets})


def test_two_points():
    assert reduced_homology_ranks(complex_from([0, 1], [[0], [1]])) == [0, 1]


def test_full_simplex_is_acyclic():
    assert not any(reduced_homology_ranks(complex_from([0, 1, 2], [[0, 1, 2]])))


def test_hollow_triangle():
    ranks = reduced_homology_ranks(complex_from([0, 1, 2], [[0, 1], [1, 2], [0, 2]]))
    assert ranks == [0, 0, 1]


def test_degenerate_complexes():
    assert reduced_homology_ranks(SimplicialComplexSmall(frozenset(), ())) == [0]
    assert reduced_homology_ranks(SimplicialComplexSmall(frozenset(), (0,))) == [1]


def test_integer_rank():
    assert integer_rank([{0: 1, 1: 1}, {0: 2, 1: 2}]) == 1
    assert integer_rank([{0: 2}, {1: 3}, {0: 1, 1: 1}]) == 2
    assert integer_rank([]) == 0


def test_upper_koszul_examples():
    K = upper_koszul_complex(I("(x1, x2)", 2), (1, 1))
    assert K.faces() == {0, 1, 2}
    assert reduced_homology_ranks(K) == [0, 1]
    K = upper_koszul_complex(I("(x1)", 2), (1, 0))
    assert K.faces() == {0}
    assert upper_koszul_complex(I("(1)", 2), (0, 0)).facets == (0,)
    assert upper_koszul_complex(I("(x1)", 2), (0, 0)).is_void


@pytest.mark.parametrize(
    "text, n, depth, pd, dim, cm",
    [
        ("(x1^2, x2)", 4, 2, 2, 2, True),
        ("(x1*x3, x1*x4, x2*x3, x2*x4)", 4, 1, 3, 2, False),
        ("(x1*x2, x1*x3, x2*x3)", 3, 1, 2, 1, True),
        ("(x1^2*x2*x4)", 4, 3, 1, 3, True),
        ("(x1, x2, x3, x4)", 4, 0, 4, 0, True),
    ],
)
def test_depth_examples(text, n, depth, pd, dim, cm):
    for route in (depth_report, depth_taylor_oracle):
        R = route(I(text, n))
        assert (R.depth, R.projective_dimension, R.dim_quotient, R.is_cohen_macaulay) == (depth, pd, dim, cm)


def test_degenerate_ideals():
    for J in (MonomialIdeal.unit(3), MonomialIdeal.zero(3)):
        R = depth_report(J)
        assert (R.depth, R.projective_dimension) == (3, 0)


def test_taylor_generator_limit():
    gens = [tuple(1 if k == j or k == j + 1 else 0 for k in range(8)) for j in range(7)]
    gens += [(2, 0, 0, 0, 0, 0, 0, 1), (0, 2, 0, 0, 0, 0, 2, 0), (0, 0, 2, 0, 0, 2, 0, 0)]
    gens += [(0, 0, 0, 2, 2, 0, 0, 0), (3, 0, 0, 0, 0, 0, 0, 0), (0, 3, 0, 0, 0, 0, 0, 0)]
    gens += [(0, 0, 0, 0, 0, 0, 0, 4)]
    J = MonomialIdeal.from_generators(8, gens)
    assert len(J.gens) > MAX_TAYLOR_GENERATORS
    with pytest.raises(TaylorOverflow):
        depth_taylor_oracle(J)


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(1, 3), min_size=n, max_size=n), st.integers(1, n))))
def test_complete_intersection_depth(args):
    n, exps, c = args
    gens = [tuple(exps[k] if k == j else 0 for k in range(n)) for j in range(c)]
    assert depth_report(MonomialIdeal.from_generators(n, gens)).depth == n - c


@given(ideals(max_gens=6))
def test_koszul_and_taylor_agree(J):
    assert depth_report(J).depth == depth_taylor_oracle(J).depth


@given(ideals())
def test_depth_bounded_by_associated_prime_dimensions(J):
    R = depth_report(J)
    assert R.depth <= min(P.dim_quotient for P in associated_primes(J))
    assert R.dim_quotient == dim_quotient(J)
    assert R.is_cohen_macaulay == (R.depth == R.dim_quotient)


def polarize(J):
    """Squarefree polarization: x_k^e becomes x_{k,1} ... x_{k,e} in new variables."""
    width = [max(g[k] for g in J.gens) for k in range(J.n)]
    offset = [sum(width[:k]) for k in range(J.n)]
    m = sum(width)
    gens = []
    for g in J.gens:
        v = [0] * m
        for k, e in enumerate(g):
            for t in range(e):
                v[offset[k] + t] = 1
        gens.append(tuple(v))
    return MonomialIdeal.from_generators(m, gens)


@settings(max_examples=40)
@given(ideals(max_exp=2, max_gens=4, max_n=3))
def test_polarization_preserves_projective_dimension(J):
    P = polarize(J)
    assert depth_report(P).projective_dimension == depth_report(J).projective_dimension
