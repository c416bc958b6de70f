from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from driverforge.algebra import u_of
from driverforge.dense import hamiltonian_commutes
from driverforge.algebra import DriverHamiltonian
from driverforge.model import ConstraintSet
from driverforge.search import candidate_count, find_k_local_drivers, find_two_local_by_columns
from oracles import naive_commuting_us


def us(report, n):
    return [u_of(t, n) for t in report.terms]


def test_even_partition_pairs():
    cs = ConstraintSet.from_rows([[1, 1, 1, 1]], [2])
    rep = find_k_local_drivers(cs, 2)
    assert len(rep.terms) == 6
    assert all(len(t.v) == 1 and len(t.w) == 1 and min(t.v) < min(t.w) for t in rep.terms)
    assert hamiltonian_commutes(DriverHamiltonian.of(4, rep.terms), cs)


def test_powers_of_two_have_none():
    assert find_k_local_drivers(ConstraintSet.from_rows([[1, 2, 4, 8]]), 2).terms == ()


def test_ess_witness_found():
    rep = find_k_local_drivers(ConstraintSet.from_rows([[1, 1, 2]]), 3)
    assert (1, 1, -1) in us(rep, 3)


def test_k_range():
    cs = ConstraintSet.from_rows([[1, 1]])
    for k in (0, 3):
        with pytest.raises(ValueError):
            find_k_local_drivers(cs, k)


def test_output_order():
    rep = find_k_local_drivers(ConstraintSet.from_rows([[1, 1, 1, 1]]), 4)
    keys = []
    for u in us(rep, 4):
        support = tuple(i for i, x in enumerate(u) if x)
        keys.append((support, tuple(0 if u[i] > 0 else 1 for i in support)))
    assert keys == sorted(keys)


def test_weight_one_with_zero_column():
    cs = ConstraintSet.from_rows([[1, 0, 1]])
    rep = find_k_local_drivers(cs, 2)
    assert (0, 1, 0) in us(rep, 3)
    assert rep.candidates_checked == candidate_count(3, 2) + 3


@pytest.mark.parametrize(
    "rows, expected",
    [([[1, 1], [2, 2]], [(1, -1)]), ([[1, -1]], [(1, 1)]), ([[1, 2], [3, 4]], [])],
)
def test_two_local_by_columns(rows, expected):
    cs = ConstraintSet.from_rows(rows)
    assert us(find_two_local_by_columns(cs), 2) == expected


def test_zero_columns_two_local():
    cs = ConstraintSet.from_rows([[0, 1, 0]])
    assert us(find_two_local_by_columns(cs), 3) == [(1, 0, 1), (1, 0, -1)]


def test_parallel_matches_serial():
    cs = ConstraintSet.from_rows([[1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2, 3, 1, 2]])
    serial = find_k_local_drivers(cs, 4)
    parallel = find_k_local_drivers(cs, 4, workers=2)
    assert serial.candidates_checked == parallel.candidates_checked
    assert serial.terms == parallel.terms


matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-3, 3), min_size=n, max_size=n).filter(any), min_size=1, max_size=3
    )
)


@given(matrices, st.integers(1, 6))
def test_exhaustive_against_naive(rows, k):
    n = len(rows[0])
    k = min(k, n)
    rep = find_k_local_drivers(ConstraintSet.from_rows(rows), k)
    found = us(rep, n)
    assert len(found) == len(set(found))
    assert set(found) == naive_commuting_us(rows, k)
    zero_col = any(all(r[j] == 0 for r in rows) for j in range(n))
    assert rep.candidates_checked == sum(2 ** (j - 1) * comb(n, j) for j in range(2, k + 1)) + (n if zero_col else 0)


@given(matrices)
def test_found_terms_commute_dense(rows):
    n = len(rows[0])
    cs = ConstraintSet.from_rows(rows)
    rep = find_k_local_drivers(cs, min(3, n))
    for t in rep.terms:
        assert hamiltonian_commutes(DriverHamiltonian.of(n, [t]), cs)
