"""Dense exact matrices, used as an independent oracle at small ``n``.

Operators are built as Kronecker products of 2x2 integer matrices in the
basis ``|0> = (1, 0)``, ``|1> = (0, 1)`` with qubit 1 as the leftmost factor.
Rational coefficients are cleared by a common denominator, which does not
change whether a matrix is zero.  Complex matrices are returned as a
``(real, imag)`` pair of integer arrays.
"""

from __future__ import annotations

from math import lcm

import numpy as np

from .algebra import DriverHamiltonian
from .model import ConstraintSet

__all__ = [
    "DENSE_CAP",
    "commutator",
    "commutator_with_diagonal",
    "constraint_diagonal",
    "dense_constraint",
    "dense_hamiltonian",
    "hamiltonian_commutes",
    "offdiagonal_by_partial_trace",
]

DENSE_CAP = 12

I2 = np.array([[1, 0], [0, 1]], dtype=np.int64)
Z = np.array([[1, 0], [0, -1]], dtype=np.int64)
SPLUS = np.array([[0, 1], [0, 0]], dtype=np.int64)  # |0><1|
SMINUS = np.array([[0, 0], [1, 0]], dtype=np.int64)  # |1><0|


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.ndim == 1:
        return (a[:, None] * b[None, :]).reshape(-1)
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(a.shape[0] * b.shape[0], -1)


def _kron_all(factors: list[np.ndarray]) -> np.ndarray:
    """Kronecker product of ``factors`` in order, split in halves to keep operands small."""
    if len(factors) == 1:
        return factors[0]
    h = len(factors) // 2
    return _kron(_kron_all(factors[:h]), _kron_all(factors[h:]))


def _check(n: int) -> None:
    if n > DENSE_CAP:
        raise ValueError(f"dense oracle limited to n <= {DENSE_CAP}, got {n}")


def dense_hamiltonian(H: DriverHamiltonian) -> tuple[np.ndarray, np.ndarray]:
    """``D * H`` as integer (real, imag) parts, ``D`` the coefficient denominator lcm."""
    n = H.n
    _check(n)
    dim = 1 << n
    denom = lcm(1, *(f.denominator for t in H.terms for f in (t.coeff.re, t.coeff.im)))
    re = np.zeros((dim, dim), dtype=np.int64)
    im = np.zeros((dim, dim), dtype=np.int64)
    for t in H.terms:
        fwd, back = [], []
        for i in range(n):
            if i in t.v:
                fwd.append(SPLUS)
                back.append(SMINUS)
            elif i in t.w:
                fwd.append(SMINUS)
                back.append(SPLUS)
            elif i in t.y:
                fwd.append(Z)
                back.append(Z)
            else:
                fwd.append(I2)
                back.append(I2)
        T, Tdag = _kron_all(fwd), _kron_all(back)
        a = int(t.coeff.re * denom)
        b = int(t.coeff.im * denom)
        # (a + ib) T + (a - ib) T^dagger
        re += a * (T + Tdag)
        im += b * (T - Tdag)
    return re, im


def dense_constraint(coeffs) -> np.ndarray:
    """``sum_i c_i Z_i`` as a dense diagonal matrix."""
    n = len(coeffs)
    _check(n)
    out = np.zeros((1 << n, 1 << n), dtype=np.int64)
    for i, c in enumerate(coeffs):
        if c:
            factors = [Z if j == i else I2 for j in range(n)]
            out += c * _kron_all(factors)
    return out


def constraint_diagonal(coeffs) -> np.ndarray:
    """Diagonal of ``sum_i c_i Z_i``, from Kronecker products of 1-D diagonals."""
    n = len(coeffs)
    _check(n)
    one, z = np.ones(2, dtype=np.int64), np.diag(Z)
    out = np.zeros(1 << n, dtype=np.int64)
    for i, c in enumerate(coeffs):
        if c:
            out += c * _kron_all([z if j == i else one for j in range(n)])
    return out


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B - B @ A


def commutator_with_diagonal(A: np.ndarray, d: np.ndarray) -> np.ndarray:
    """``A D - D A`` for ``D = diag(d)``, without forming ``D``."""
    return A * d[None, :] - d[:, None] * A


def hamiltonian_commutes(H: DriverHamiltonian, cs: ConstraintSet) -> bool:
    re, im = dense_hamiltonian(H)
    for row in cs.constraints:
        d = constraint_diagonal(row.coeffs)
        if commutator_with_diagonal(re, d).any() or commutator_with_diagonal(im, d).any():
            return False
    return True


def offdiagonal_by_partial_trace(matrix: np.ndarray, n: int) -> bool:
    """True iff some ``Tr_k(M S+_k)`` or ``Tr_k(M S-_k)`` is nonzero.

    ``Tr_k(M S+_k) = <1|_k M |0>_k`` is the block of ``M`` raising qubit
    ``k``; the ``S-`` trace is the lowering block.
    """
    tensor = matrix.reshape((2,) * (2 * n))
    for k in range(n):
        raise_block = np.take(np.take(tensor, 1, axis=k), 0, axis=n + k - 1)
        lower_block = np.take(np.take(tensor, 0, axis=k), 1, axis=n + k - 1)
        if raise_block.any() or lower_block.any():
            return True
    return False
