import json
import random
from dataclasses import replace

import pytest

from driverforge.algebra import DriverHamiltonian, term_from_u
from driverforge.reductions import oracle_equal_subset_sum
from driverforge.reductions.binary_lp import (
    REDUCED_FIXTURE_MATRIX,
    AdderInternal,
    Carry,
    ConsistencyError,
    IntegerVar,
    Sum,
    adder_count,
    backmap_solution,
    build_binary_lp,
    forward_propagate,
    layer_count,
    reduced_fixture,
)
from driverforge.verify import exact_commutator_is_zero
from oracles import all_null_vectors

FIXTURE_WITNESS = (1, 1, -1, -1, -1, 0, 1, 0, 0, 0, 0, 0, 0)
FIXTURE_SECOND = (1, -1) + (0,) * 11


def check_size(layout):
    n, m = layout.n, layer_count(layout.values)
    a = adder_count(n, m)
    rows, cols = layout.shape
    assert len(layout.adders) == a
    assert rows <= 6 * a + n * m and cols <= 5 * a + n


def test_fixture_matrix():
    layout = reduced_fixture()
    assert layout.matrix == REDUCED_FIXTURE_MATRIX
    assert layout.shape == (15, 13)


def test_fixture_witnesses():
    layout = reduced_fixture()
    assert layout.annihilates(FIXTURE_WITNESS)
    assert layout.annihilates(FIXTURE_SECOND)
    assert backmap_solution(layout, FIXTURE_WITNESS) == ((0, 1), (2,))
    assert backmap_solution(layout, FIXTURE_SECOND) == ((0,), (1,))


def test_fixture_forward():
    assert forward_propagate(reduced_fixture(), (1, 1, -1)) == FIXTURE_WITNESS
    assert forward_propagate(reduced_fixture(), (1, 0, 0)) is None


def test_fixture_exhaustive():
    heads = {tuple(int(x) for x in mu[:3]) for mu in all_null_vectors(REDUCED_FIXTURE_MATRIX)}
    assert heads == {(0, 0, 0), (1, 1, -1), (-1, -1, 1), (1, -1, 0), (-1, 1, 0)}


def test_layer_count():
    assert [layer_count([s]) for s in (1, 2, 3, 4, 5, 7, 8, 9)] == [1, 2, 3, 3, 4, 4, 4, 5]


def test_build_structure():
    layout = build_binary_lp((1, 1, 2))
    check_size(layout)
    m = layer_count((1, 1, 2))
    assert len(layout.forced_zero) == 3 * m
    assert layout.columns[:3] == (IntegerVar(0), IntegerVar(1), IntegerVar(2))
    roles = {type(c) for c in layout.columns[3:]}
    assert roles == {AdderInternal, Carry, Sum}
    # layer l of the bit section has (n - 1) * l adders
    per_layer = {}
    for spec in layout.adders:
        per_layer[spec.layer] = per_layer.get(spec.layer, 0) + 1
    assert [per_layer[l] for l in range(1, m + 1)] == [2 * l for l in range(1, m + 1)]
    tail = [per_layer[l] for l in sorted(per_layer) if l > m]
    assert tail == list(range(2 * m - 1, 0, -1))
    # bit coefficients on the shared integer columns
    for spec in layout.adders:
        if spec.layer <= m and spec.input_b.column < 3:
            assert spec.input_b.coeff == ((1, 1, 2)[spec.input_b.column] >> (spec.layer - 1)) & 1


def test_forced_rows_are_single_entry():
    layout = build_binary_lp((3, 5, 6))
    for r in layout.forced_zero:
        assert sorted(layout.matrix[r]).count(1) == 1 and sum(layout.matrix[r]) == 1


def test_build_rejects_small():
    with pytest.raises(ValueError):
        build_binary_lp((4,))


def test_pair_exhaustive():
    layout = build_binary_lp((1, 1))
    check_size(layout)
    assert layout.shape[1] == 7
    heads = {tuple(int(x) for x in mu[:2]) for mu in all_null_vectors(layout.matrix) if mu.any()}
    assert heads == {(1, -1), (-1, 1)}


def test_forward_random_equivalence():
    rng = random.Random(5)
    trials = 0
    for _ in range(300):
        values = tuple(rng.randint(1, 9) for _ in range(rng.randint(2, 6)))
        layout = build_binary_lp(values)
        check_size(layout)
        for _ in range(34):
            u = tuple(rng.choice((-1, 0, 0, 1)) for _ in values)
            mu = forward_propagate(layout, u)
            assert (mu is not None) == (sum(a * b for a, b in zip(u, values)) == 0)
            if mu is not None:
                assert layout.annihilates(mu)
            trials += 1
    assert trials >= 10_000


def test_layout_terms_commute():
    layout = build_binary_lp((1, 1))
    cs = layout.to_constraint_set()
    mu = forward_propagate(layout, (1, -1))
    assert exact_commutator_is_zero(DriverHamiltonian.of(cs.n, [term_from_u(mu)]), cs)
    assert backmap_solution(layout, term_from_u(mu)) == ((0,), (1,))


def test_backmap_round_trip_and_term():
    values = (3, 5, 6, 2, 7)
    layout = build_binary_lp(values)
    a, b = oracle_equal_subset_sum(values)
    u = tuple(1 if i in a else -1 if i in b else 0 for i in range(len(values)))
    mu = forward_propagate(layout, u)
    assert backmap_solution(layout, mu) == (a, b)
    term = term_from_u(mu)
    assert backmap_solution(layout, term) == (a, b)


def test_backmap_errors():
    layout = reduced_fixture()
    with pytest.raises(ValueError):
        backmap_solution(layout, (1, 0, 0) + (0,) * 10)
    with pytest.raises(ValueError):
        backmap_solution(layout, (0,) * 13)
    with pytest.raises(ConsistencyError):
        # only reachable if the gadget rows were dropped
        fake = replace(layout, rows=())
        backmap_solution(fake, (0, 0, 0, 1) + (0,) * 9)


def test_layout_json():
    doc = reduced_fixture().to_dict()
    json.dumps(doc)
    assert doc["forced_zero_rows"] == [13, 14, 15]
    assert doc["columns"][0] == {"role": "integer", "index": 1}
    assert doc["adders"][1]["input_b"] == {"column": 7, "coeff": 1}
