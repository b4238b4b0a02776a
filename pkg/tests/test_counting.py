import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridmagic.counting import (
    ALL,
    INTERIOR,
    count,
    count_generic,
    count_grid,
    enumerate_labellings,
    grid_sequence,
)
from gridmagic.errors import CapExceededError, NonBipartiteError
from gridmagic.graph import build_grid, build_torus, perfect_matchings
from gridmagic.labelling import gorenstein_witness, validate


@pytest.mark.parametrize("m,n,t", [(1, 2, 2), (2, 2, 3), (2, 3, 3), (1, 4, 3), (3, 2, 2), (2, 4, 2)])
@pytest.mark.parametrize("mode", [ALL, INTERIOR])
def test_grid_engine_matches_brute_force(brute, m, n, t, mode):
    g = build_grid(m, n)
    expected = len(brute(g, t, 1 if mode == INTERIOR else 0))
    assert count_grid(m, n, t, mode).value == expected
    assert count_generic(g, t, mode).value == expected


@pytest.mark.parametrize("t", [0, 1, 2])
def test_torus_engine_matches_brute_force(brute, t):
    g = build_torus(2, 4)
    assert count_generic(g, t).value == len(brute(g, t))


def test_reference_values():
    assert count_grid(3, 4, 1).value == 11
    assert count_grid(3, 4, 2).value == 57
    assert count_grid(3, 4, 4, INTERIOR).value == 0
    for n in range(3, 9):
        assert count_grid(2, n, 3, INTERIOR).value == 1


def test_odd_rows_single():
    for t in range(1, 5):
        assert count_grid(1, 3, t).value == 0
    assert count_grid(1, 3, 0).value == 1


def test_torus_perfect_matchings():
    g = build_torus(2, 4)
    assert count_generic(g, 1).value == len(perfect_matchings(g)) == 9
    assert count_generic(build_torus(4, 4), 4, INTERIOR).value >= 1


def test_generic_rejects_non_bipartite():
    with pytest.raises(NonBipartiteError):
        count_generic(build_torus(2, 3), 1)
    with pytest.raises(NonBipartiteError):
        enumerate_labellings(build_torus(4, 3), 1)


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("t", [0, 1, 2, 3, 4])
@pytest.mark.parametrize("mode", [ALL, INTERIOR])
def test_engine_equivalence(m, n, t, mode):
    assert count_grid(m, n, t, mode).value == count_generic(build_grid(m, n), t, mode).value


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 3))
def test_transpose_symmetry(m, n, t):
    assert count_grid(m, n, t).value == count_grid(n, m, t).value


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 4))
def test_interior_below_all_and_odd_vanishing(m, n, t):
    full = count_grid(m, n, t).value
    assert count_grid(m, n, t, INTERIOR).value <= full
    if m * n % 2:
        assert full == (1 if t == 0 else 0)


@pytest.mark.parametrize("m", range(1, 9))
def test_t1_is_matching_count(m):
    for n in range(1, 5):
        assert count_grid(m, n, 1).value == len(perfect_matchings(build_grid(m, n)))


@pytest.mark.parametrize("m,t", [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2)])
def test_sequence_matches_single_counts(m, t):
    seq = grid_sequence(m, t, 9)
    assert seq[0] == 1
    assert seq[1:] == [count_grid(m, n, t).value for n in range(1, 9)]


def test_enumerate_small():
    labs = enumerate_labellings(build_grid(2, 2), 1)
    assert len(labs) == 2
    assert [lab.labels for lab in labs] == sorted(lab.labels for lab in labs)


@pytest.mark.parametrize("case,m,n,t", [("3xn-t5", 3, 6, 5), ("4x4-t4", 4, 4, 4)])
def test_enumerate_interior_unique(case, m, n, t):
    [lab] = enumerate_labellings(build_grid(m, n), t, INTERIOR)
    assert lab.labels == gorenstein_witness(case, m, n).labels


@pytest.mark.parametrize("g,t", [(build_grid(3, 4), 3), (build_grid(2, 5), 2), (build_torus(2, 4), 2)])
def test_enumerate_length_equals_count(g, t):
    labs = enumerate_labellings(g, t)
    assert len(labs) == count(g, t).value
    assert len(set(lab.labels for lab in labs)) == len(labs)
    assert all(validate(lab).is_magic for lab in labs)


def test_enumerate_limit():
    with pytest.raises(CapExceededError) as info:
        enumerate_labellings(build_grid(3, 4), 2, limit=10)
    assert info.value.partial == 10


def test_table_cap():
    with pytest.raises(CapExceededError):
        count_grid(8, 2, 20, state_cap=10**6)


def test_large_values_are_exact():
    # forces the switch from int64 to Python integers
    big = count_grid(2, 60, 1).value
    fib = [1, 1]
    for _ in range(60):
        fib.append(fib[-1] + fib[-2])
    assert big == fib[60]
    v = count_grid(4, 40, 3).value
    assert v == grid_sequence(4, 3, 41)[40]
    assert v > 2**63


def test_deterministic():
    assert count_grid(4, 5, 6).value == count_grid(4, 5, 6).value


def test_mode_validation():
    with pytest.raises(ValueError):
        count_grid(2, 2, 1, "boundary")
    with pytest.raises(ValueError):
        count_grid(0, 2, 1)
