from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridmagic.counting import INTERIOR, count_generic
from gridmagic.ehrhart import (
    BOTH,
    FUNCTIONAL,
    HVECTOR,
    EhrhartData,
    dimension,
    elp_dimension,
    ehrhart_polynomial,
    evaluate,
    expand_series,
    formula_dimension,
    gorenstein_check,
    h_vector,
    interpolate,
    is_palindromic,
    is_unimodal,
    reciprocity_pairs,
    series_text,
)
from gridmagic.errors import EmptyPolytopeError, GridMagicError, NonBipartiteError, VerificationError
from gridmagic.graph import build_grid, build_torus


def test_grid_2x2_by_hand():
    # two matchings, a segment: L(t) = t + 1
    data = ehrhart_polynomial(2, 2)
    assert data.dimension == 1
    assert data.polynomial == [1, 1]
    assert data.h_vector == [1]
    assert data.gorenstein == {"verdict": True, "index": 2, "mode": HVECTOR}


def test_grid_2x3_by_hand():
    # three affinely independent matchings: a triangle, L(t) = C(t+2, 2)
    data = ehrhart_polynomial(2, 3)
    assert data.dimension == 2
    assert data.counts[:5] == [comb(t + 2, 2) for t in range(5)]
    assert data.h_vector == [1]


def test_grid_3x4():
    data = ehrhart_polynomial(3, 4)
    assert data.counts[:3] == [1, 11, 57]
    assert data.polynomial == [Fraction(1), Fraction(37, 12), Fraction(449, 120), Fraction(55, 24),
                               Fraction(3, 4), Fraction(1, 8), Fraction(1, 120)]
    assert data.h_vector == [1, 4, 1]
    assert sum(data.h_vector) == factorial(6) * data.polynomial[-1]
    assert data.series == "(z^2 + 4z + 1) / (1-z)^7"


def test_torus_2x4():
    data = ehrhart_polynomial(2, 4, "torus")
    assert data.dimension == 5
    assert data.counts[1] == 9
    assert data.h_vector == [1, 3, 3, 1]


def test_round_trip_dict():
    data = ehrhart_polynomial(3, 4)
    back = EhrhartData.from_dict(data.to_dict(), 3, 4)
    assert back == data


@pytest.mark.parametrize("g,expected", [
    (build_grid(2, 3), 2), (build_grid(3, 4), 6), (build_grid(4, 4), 9), (build_grid(2, 2), 1),
    (build_grid(1, 2), 0), (build_torus(2, 4), 5), (build_torus(4, 4), 17), (build_torus(2, 6), 7),
])
def test_dimension(g, expected):
    assert dimension(g) == expected


@pytest.mark.parametrize("m,n", [(2, 4), (3, 4), (4, 5), (4, 6), (2, 3), (4, 3), (6, 4)])
def test_dimension_formulas_agree(m, n):
    for topology in ("grid", "torus"):
        f = formula_dimension(m, n, topology)
        g = build_grid(m, n) if topology == "grid" else build_torus(m, n)
        assert f == elp_dimension(g)
        if topology == "grid" or (m % 2 == 0 and n % 2 == 0):
            assert dimension(g) == f


def test_odd_board_is_empty():
    assert formula_dimension(3, 3) is None
    with pytest.raises(EmptyPolytopeError):
        dimension(build_grid(3, 3))
    with pytest.raises(EmptyPolytopeError):
        ehrhart_polynomial(3, 5)


def test_non_bipartite_torus_rejected():
    with pytest.raises(NonBipartiteError):
        ehrhart_polynomial(2, 3, "torus")
    with pytest.raises(NonBipartiteError):
        gorenstein_check(4, 3, "torus")


def test_interpolate_and_evaluate():
    coeffs = interpolate([(0, 1), (1, 3), (2, 7)])
    assert coeffs == [1, 1, 1]
    assert evaluate(coeffs, -3) == 7


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=7))
def test_interpolate_recovers_polynomial(coeffs):
    pts = [(x, sum(c * x**i for i, c in enumerate(coeffs))) for x in range(len(coeffs))]
    got = interpolate(pts)
    assert [evaluate(got, x) for x in range(-5, 10)] == \
        [sum(c * x**i for i, c in enumerate(coeffs)) for x in range(-5, 10)]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 8).flatmap(
    lambda d: st.tuples(st.just(d), st.lists(st.integers(0, 50), min_size=1, max_size=d + 1))))
def test_hvector_series_round_trip(args):
    d, h = args
    h = [1] + h[1:]
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    counts = expand_series(h, d, d + 3)
    assert counts[0] == 1
    assert h_vector(counts, d) == h


def test_hvector_rejects_negative():
    # h = (1, -1) is not an h-vector of any lattice polytope
    counts = expand_series([1, -1], 3, 6)
    with pytest.raises(VerificationError):
        h_vector(counts, 3)


@pytest.mark.parametrize("h,pal,uni", [
    ([1], True, True), ([1, 4, 1], True, True), ([1, 0, 1], True, False),
    ([1, 2, 1, 2, 1], True, False), ([1, 3, 2], False, True), ([2, 1, 2], True, False),
])
def test_palindrome_unimodal_examples(h, pal, uni):
    assert is_palindromic(h) is pal
    assert is_unimodal(h) is uni


@settings(max_examples=200)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=8))
def test_unimodal_matches_definition(h):
    brute = any(all(h[i] <= h[i + 1] for i in range(k)) and
                all(h[i] >= h[i + 1] for i in range(k, len(h) - 1)) for k in range(len(h)))
    assert is_unimodal(h) == brute


def test_series_text():
    assert series_text([1], 2) == "(1) / (1-z)^3"
    assert series_text([1, 3, 3, 1], 5) == "(z^3 + 3z^2 + 3z + 1) / (1-z)^6"


@pytest.mark.parametrize("m,n,index", [(2, 2, 2), (2, 3, 3), (2, 5, 3), (3, 4, 5), (4, 4, 4), (1, 4, 1)])
def test_gorenstein_grids(m, n, index):
    res = gorenstein_check(m, n, mode=BOTH if (m, n) != (1, 4) else HVECTOR, t_max=index + 2)
    assert res.verdict and res.index == index


def test_non_gorenstein_4x5():
    res = gorenstein_check(4, 5, mode=HVECTOR)
    assert not res.verdict and res.index is None
    assert res.h_vector[0] == 1 and not is_palindromic(res.h_vector)


def test_functional_torus_2x4():
    res = gorenstein_check(2, 4, "torus", mode=FUNCTIONAL, t_max=5)
    assert res.verdict and res.index == 3


def test_functional_needs_room():
    with pytest.raises(GridMagicError):
        gorenstein_check(3, 4, mode=FUNCTIONAL, t_max=5)


def test_unknown_mode():
    with pytest.raises(ValueError):
        gorenstein_check(2, 2, mode="vibes")


@pytest.mark.parametrize("m,n,topology", [(2, 3, "grid"), (3, 4, "grid"), (2, 4, "torus"), (4, 4, "grid")])
def test_ehrhart_reciprocity(m, n, topology):
    data = ehrhart_polynomial(m, n, topology)
    for t, lhs, interior in reciprocity_pairs(data, range(1, 7)):
        assert lhs == interior


def test_torus_4x4_shift():
    g = build_torus(4, 4)
    interior = [count_generic(g, t, INTERIOR).value for t in range(7)]
    full = [count_generic(g, t).value for t in range(3)]
    assert interior[:4] == [0, 0, 0, 0]
    assert interior[4:] == full
