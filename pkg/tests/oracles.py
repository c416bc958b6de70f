"""Independent reference implementations used only by the tests.

Nothing here imports the search, verify, feasibility or reduction code paths
under test; each routine recomputes its answer from first principles.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Sequence

import networkx as nx
import numpy as np


def naive_commuting_us(matrix: Sequence[Sequence[int]], k: int) -> set[tuple[int, ...]]:
    """All canonical ``u`` in ``{-1,0,1}^n`` with weight ``1..k`` and ``C u = 0``."""
    n = len(matrix[0])
    out = set()
    for u in product((-1, 0, 1), repeat=n):
        support = [i for i, x in enumerate(u) if x]
        if not 1 <= len(support) <= k or u[support[0]] != 1:
            continue
        if all(sum(c * x for c, x in zip(row, u)) == 0 for row in matrix):
            out.add(u)
    return out


def brute_feasible(matrix: Sequence[Sequence[int]], values: Sequence[int]) -> list[int]:
    """Bitmasks (x_1 as MSB) with ``C x = b``, by direct loop."""
    n = len(matrix[0])
    out = []
    for x in range(1 << n):
        bits = [(x >> (n - 1 - i)) & 1 for i in range(n)]
        if all(sum(c * b for c, b in zip(row, bits)) == v for row, v in zip(matrix, values)):
            out.append(x)
    return out


def transition_graph(n: int, states: Sequence[int], pairs: Sequence[tuple[set[int], set[int]]]) -> nx.Graph:
    """Graph on ``states`` with an edge per ``(v, w)`` hop: 1s on ``v`` move to 0s on ``w``."""
    g = nx.Graph()
    g.add_nodes_from(states)
    members = set(states)
    for v, w in pairs:
        for x in states:
            bits = [(x >> (n - 1 - i)) & 1 for i in range(n)]
            if all(bits[i] for i in v) and not any(bits[i] for i in w):
                for i in v:
                    bits[i] = 0
                for i in w:
                    bits[i] = 1
                y = int("".join(map(str, bits)), 2)
                if y in members:
                    g.add_edge(x, y)
    return g


def ladder_matrix(n: int, y: set[int], v: set[int], w: set[int]) -> np.ndarray:
    """``Z^y S+^v S-^w`` as an explicit matrix, built element by element."""
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=np.int64)
    for col in range(dim):
        bits = [(col >> (n - 1 - i)) & 1 for i in range(n)]
        if not all(bits[i] == 1 for i in v) or any(bits[i] for i in w):
            continue
        sign = 1
        for i in y:
            sign *= 1 - 2 * bits[i]
        for i in v:
            bits[i] = 0
        for i in w:
            bits[i] = 1
        out[int("".join(map(str, bits)), 2), col] = sign
    return out


def spin_diagonal(coeffs: Sequence[int]) -> np.ndarray:
    n = len(coeffs)
    return np.array(
        [sum(c * (1 - 2 * ((x >> (n - 1 - i)) & 1)) for i, c in enumerate(coeffs)) for x in range(1 << n)],
        dtype=np.int64,
    )


def all_null_vectors(matrix: Sequence[Sequence[int]]) -> np.ndarray:
    """Every ``mu`` in ``{-1,0,1}^N`` with ``K mu = 0``, by literal enumeration."""
    K = np.asarray(matrix, dtype=np.int64)
    N = K.shape[1]
    if N > 14:
        raise ValueError(f"3^{N} assignments is too many to enumerate")
    powers = 3 ** np.arange(N - 1, -1, -1, dtype=np.int64)
    found = []
    for lo in range(0, 3**N, 1 << 18):
        idx = np.arange(lo, min(lo + (1 << 18), 3**N), dtype=np.int64)
        mus = (idx[:, None] // powers) % 3 - 1
        found.append(mus[~(mus @ K.T).any(axis=1)])
    return np.concatenate(found)


def milp_null_vector(matrix: Sequence[Sequence[int]], n_integer: int) -> tuple[int, ...] | None:
    """A ``mu`` in ``{-1,0,1}^N`` with ``K mu = 0`` and ``mu_i = 1`` on some leading column.

    Since ``-mu`` is a null vector whenever ``mu`` is, fixing each of the
    first ``n_integer`` entries to ``+1`` in turn is an exact test for a
    null vector that is nonzero there.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp

    K = np.asarray(matrix, dtype=float)
    N = K.shape[1]
    for i in range(n_integer):
        lb, ub = -np.ones(N), np.ones(N)
        lb[i] = ub[i] = 1
        res = milp(
            np.zeros(N),
            constraints=LinearConstraint(K, 0, 0),
            integrality=np.ones(N),
            bounds=Bounds(lb, ub),
        )
        if res.status == 0:
            return tuple(int(round(x)) for x in res.x)
        assert res.status == 2, res.message
    return None


def has_equal_subsets(values: Sequence[int]) -> bool:
    """Two nonempty disjoint index sets with equal sums, by plain 3^n loop."""
    for u in product((-1, 0, 1), repeat=len(values)):
        if 1 in u and -1 in u and sum(a * b for a, b in zip(u, values)) == 0:
            return True
    return False


def subsets_with_sum(values: Sequence[int], target: int) -> list[tuple[int, ...]]:
    """Nonempty index subsets summing to ``target``."""
    n = len(values)
    return [
        idx
        for r in range(1, n + 1)
        for idx in combinations(range(n), r)
        if sum(values[i] for i in idx) == target
    ]


def milp_unbalanced_null_vector(matrix: Sequence[Sequence[int]], values: Sequence[int]) -> tuple[int, ...] | None:
    """A null vector in ``{-1,0,1}^N`` whose leading entries have ``sum_i s_i mu_i >= 1``.

    ``None`` proves (up to the sign symmetry) that every null vector is
    balanced on the integer columns.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp

    K = np.asarray(matrix, dtype=float)
    N = K.shape[1]
    weights = np.zeros(N)
    weights[: len(values)] = values
    res = milp(
        np.zeros(N),
        constraints=[LinearConstraint(K, 0, 0), LinearConstraint(weights[None, :], 1, np.inf)],
        integrality=np.ones(N),
        bounds=Bounds(-np.ones(N), np.ones(N)),
    )
    if res.status == 0:
        return tuple(int(round(x)) for x in res.x)
    assert res.status == 2, res.message
    return None


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.ndim == 1:
        return (a[:, None] * b[None, :]).reshape(-1)
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(a.shape[0] * b.shape[0], -1)


def _kron_all(factors: list[np.ndarray]) -> np.ndarray:
    if len(factors) == 1:
        return factors[0]
    h = len(factors) // 2
    return _kron(_kron_all(factors[:h]), _kron_all(factors[h:]))


_I = np.eye(2, dtype=np.int8)
_Z = np.array([[1, 0], [0, -1]], dtype=np.int8)
_SPLUS = np.array([[0, 1], [0, 0]], dtype=np.int8)


def kron_term(n: int, y: set[int], v: set[int], w: set[int]) -> np.ndarray:
    """``Z^y S+^v S-^w`` as a dense int8 Kronecker product, qubit 1 leftmost."""
    factors = [_SPLUS if i in v else _SPLUS.T if i in w else _Z if i in y else _I for i in range(n)]
    return _kron_all(factors)


def kron_spin_diagonal(coeffs: Sequence[int]) -> np.ndarray:
    n = len(coeffs)
    one, z = np.ones(2, dtype=np.int64), np.array([1, -1], dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    for i, c in enumerate(coeffs):
        out += c * _kron_all([z if j == i else one for j in range(n)])
    return out


def milp_headless_null_vector(matrix: Sequence[Sequence[int]], n_integer: int) -> tuple[int, ...] | None:
    """A nonzero null vector in ``{-1,0,1}^N`` that vanishes on the first ``n_integer`` entries.

    Written as ``mu = p - q`` with binary ``p``, ``q``, ``p + q <= 1`` and
    ``sum(p + q) >= 1``, so a single solve settles existence.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp

    K = np.asarray(matrix, dtype=float)
    N = K.shape[1]
    eye = np.eye(N)
    ub = np.ones(2 * N)
    ub[:n_integer] = ub[N : N + n_integer] = 0
    res = milp(
        np.zeros(2 * N),
        constraints=[
            LinearConstraint(np.hstack([K, -K]), 0, 0),
            LinearConstraint(np.hstack([eye, eye]), 0, 1),
            LinearConstraint(np.ones((1, 2 * N)), 1, np.inf),
        ],
        integrality=np.ones(2 * N),
        bounds=Bounds(np.zeros(2 * N), ub),
    )
    if res.status == 0:
        x = np.round(res.x).astype(int)
        return tuple(int(a - b) for a, b in zip(x[:N], x[N:]))
    assert res.status == 2, res.message
    return None
