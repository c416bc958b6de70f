import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from driverforge.algebra import DriverTerm
from driverforge.feasibility import (
    NonCommutingTerm,
    build_transition_graph,
    components,
    connects_entire_space,
    enumerate_feasible,
    is_nontrivial,
    reachable_from,
)
from driverforge.model import ConstraintSet
from driverforge.search import find_k_local_drivers
from oracles import brute_feasible, transition_graph


def T(v, w):
    return DriverTerm(frozenset(i - 1 for i in v), frozenset(i - 1 for i in w))


EVEN4 = ConstraintSet.from_rows([[1, 1, 1, 1]], [2])
CHAIN4 = [T({1}, {2}), T({2}, {3}), T({3}, {4})]


def test_enumerate_cases():
    fs = enumerate_feasible(EVEN4)
    assert len(fs) == 6 and all(bin(x).count("1") == 2 for x in fs.states)
    assert enumerate_feasible(ConstraintSet.from_rows([[1, 1, 2]], [5])).states == ()
    assert enumerate_feasible(ConstraintSet.from_rows([[1, 1, 2]], [2])).states == (0b001, 0b110)


def test_chain_connects():
    report = connects_entire_space(build_transition_graph(enumerate_feasible(EVEN4), CHAIN4))
    assert report.connected and report.component_count == 1 and not report.degenerate


def test_single_term_disconnects():
    fs = build_transition_graph(enumerate_feasible(EVEN4), [T({1}, {2})])
    report = connects_entire_space(fs)
    assert not report.connected and report.component_count >= 2
    assert 0b1100 not in reachable_from(fs, [0b0011])
    assert is_nontrivial(fs)
    assert 0b0110 in reachable_from(fs, [0b1010])


def test_empty_space():
    fs = build_transition_graph(enumerate_feasible(ConstraintSet.from_rows([[1, 1, 2]], [5])), [T({1}, {2})])
    assert fs.edges == frozenset() and not is_nontrivial(fs)
    report = connects_entire_space(fs)
    assert report.connected and report.degenerate


def test_two_state_space():
    cs = ConstraintSet.from_rows([[1, 1, 4]], [1])
    fs = build_transition_graph(enumerate_feasible(cs), [T({1}, {2})])
    assert fs.states == (0b010, 0b100) and is_nontrivial(fs)


def test_singleton_degenerate():
    cs = ConstraintSet.from_rows([[1, 2, 4]], [7])
    report = connects_entire_space(build_transition_graph(enumerate_feasible(cs), []))
    assert report.connected and report.degenerate and report.component_sizes == (1,)


def test_rejects_noncommuting():
    with pytest.raises(NonCommutingTerm):
        build_transition_graph(enumerate_feasible(EVEN4), [T({1}, ())])


def test_redundant_long_hop():
    for n in range(3, 9):
        cs = ConstraintSet.from_rows([[1] * n], [n // 2])
        fs = enumerate_feasible(cs)
        short = build_transition_graph(fs, [T({1}, {2}), T({2}, {3})])
        both = build_transition_graph(short, [T({1}, {3})])
        assert components(short) == components(both)


@st.composite
def instance_with_terms(draw):
    n = draw(st.integers(2, 8))
    rows = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n).filter(any), min_size=1, max_size=2))
    values = draw(st.lists(st.integers(-2, 3), min_size=len(rows), max_size=len(rows)))
    return ConstraintSet.from_rows(rows, values)


@given(instance_with_terms(), st.data())
def test_against_networkx(cs, data):
    states = brute_feasible(cs.matrix, cs.values)
    fs = enumerate_feasible(cs)
    assert list(fs.states) == states
    terms = list(find_k_local_drivers(cs, min(3, cs.n)).terms)
    chosen = data.draw(st.lists(st.sampled_from(terms), max_size=5) if terms else st.just([]))
    built = build_transition_graph(fs, chosen)
    g = transition_graph(cs.n, states, [(set(t.v), set(t.w)) for t in chosen])
    assert built.edges == frozenset((min(a, b), max(a, b)) for a, b in g.edges)
    assert sorted(map(sorted, nx.connected_components(g))) == sorted(components(built))
    # monotone: adding every remaining term never increases the component count
    more = build_transition_graph(built, terms)
    assert len(components(more)) <= len(components(built))
