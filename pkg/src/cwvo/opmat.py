"""Operational matrices for the Chebyshev wavelet basis.

Builds the first-derivative matrix D (and its powers), the change-of-basis
matrix P between the wavelet vector and the piecewise-monomial vector, the
variable-order derivative matrix T acting on piecewise monomials, and the
variable-order derivative matrix Q = P^{-1} T P acting on wavelets.

P is assembled in exact rational arithmetic (binomial shift composed with the
monomial-to-Chebyshev conversion) so the only rounding is the final division
by the irrational normalization constants. D, T, Q follow closed forms with
one Gamma evaluation per entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import lu_factor, lu_solve
from scipy.linalg.lapack import dgecon

from .basis import WaveletBasis, shifted_chebyshev_monomial_coeffs
from .scalars import gamma

__all__ = [
    "DenseMatrix",
    "OrderFunction",
    "derivative_matrix",
    "derivative_matrix_power",
    "monomial_change_matrix",
    "MonomialChangeFactor",
    "monomial_change_factor",
    "vo_monomial_matrix",
    "vo_wavelet_matrix",
    "condition_estimate_inf",
]

DenseMatrix = NDArray[np.float64]


@dataclass(frozen=True, slots=True)
class OrderFunction:
    """A variable derivative order: a map (x, t) -> order with integer bracket q.

    The bracket promises q - 1 < value(x, t) <= q at every point the solver
    evaluates; the matrix builders verify it per call.
    """

    q: int
    value: Callable[[float, float], float]

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError(f"order bracket q must be >= 1, got {self.q}")


def _bracketed_order(order: OrderFunction, x: float, t: float) -> float:
    vt = order.value(x, t)
    if not (order.q - 1 < vt <= order.q):
        raise ValueError(
            f"order {vt} at (x={x}, t={t}) violates bracket ({order.q - 1}, {order.q}]")
    return vt


def derivative_matrix(basis: WaveletBasis) -> DenseMatrix:
    """First-derivative matrix D: d/dt Psi(t) = D Psi(t) within each subinterval.

    Block diagonal with 2**k identical strictly-lower-triangular blocks.
    """
    M = basis.M
    F = np.zeros((M, M))
    scale = 2.0 ** (basis.k + 2)
    for i in range(2, M + 1):
        for j in range(1, i):
            if (i + j) % 2 == 1:
                sigma_ratio = 0.5 if j == 1 else 1.0  # sigma_{i-1}/sigma_{j-1}, sigma_0 = 2
                F[i - 1, j - 1] = scale * (i - 1) * math.sqrt(sigma_ratio)
    return np.kron(np.eye(basis.subintervals), F)


def derivative_matrix_power(basis: WaveletBasis, r: int) -> DenseMatrix:
    """r-th matrix power of D; zero for r >= M by nilpotence."""
    if r < 1:
        raise ValueError(f"power must be >= 1, got {r}")
    return np.linalg.matrix_power(derivative_matrix(basis), r)


def _exact_monomial_to_chebyshev(M: int) -> list[list[Fraction]]:
    """Inverse of the shifted-Chebyshev coefficient matrix, as exact rationals.

    Row m gives the coefficients of s**m in the basis T*_0(s)..T*_{M-1}(s).
    """
    coeff = [[Fraction(0)] * M for _ in range(M)]
    for j in range(M):
        for i, c in enumerate(shifted_chebyshev_monomial_coeffs(j)):
            coeff[j][i] = Fraction(int(c))
    # Forward substitution on the lower-triangular system coeff^T x = e_m.
    inv = [[Fraction(0)] * M for _ in range(M)]
    for m in range(M):
        for j in range(m, -1, -1):
            acc = Fraction(1 if j == m else 0)
            for l in range(j + 1, m + 1):
                acc -= inv[m][l] * coeff[l][j]
            inv[m][j] = acc / coeff[j][j]
    return inv


def monomial_change_matrix(basis: WaveletBasis) -> DenseMatrix:
    """Change-of-basis matrix P with Phi(t) = P Psi(t) identically.

    On subinterval n the global monomial t**m expands as
    2**(-k m) * sum_l C(m, l) n**(m-l) s**l with s = 2**k t - n; each s**l is
    then converted to the local Chebyshev family. Both steps run in exact
    rational arithmetic; rounding enters only through the final division by
    the wavelet normalization beta_j * 2**(k/2).
    """
    M, blocks = basis.M, basis.subintervals
    mono_to_cheb = _exact_monomial_to_chebyshev(M)
    inv_norm = np.empty(M)
    sqrt_pi = math.sqrt(math.pi)
    scale = 2.0 ** (basis.k / 2.0)
    inv_norm[0] = math.sqrt(math.pi / 2.0) / scale
    inv_norm[1:] = (sqrt_pi / 2.0) / scale
    P = np.zeros((basis.m_hat, basis.m_hat))
    for n in range(blocks):
        for m in range(M):
            row = [Fraction(0)] * M
            shift = Fraction(1, 2 ** (basis.k * m))
            for l in range(m + 1):
                w = shift * math.comb(m, l) * Fraction(n) ** (m - l)
                for j in range(l + 1):
                    row[j] += w * mono_to_cheb[l][j]
            base = n * M
            for j in range(M):
                P[base + m, base + j] = float(row[j]) * inv_norm[j]
    return P


@dataclass(frozen=True, eq=False)
class MonomialChangeFactor:
    """P together with its LU factorization, shared across solver rows."""

    matrix: DenseMatrix
    lu: DenseMatrix
    piv: NDArray[np.intp]

    def solve(self, rhs: NDArray[np.float64]) -> NDArray[np.float64]:
        return lu_solve((self.lu, self.piv), rhs, check_finite=False)


def monomial_change_factor(basis: WaveletBasis) -> MonomialChangeFactor:
    P = monomial_change_matrix(basis)
    lu, piv = lu_factor(P, check_finite=False)
    return MonomialChangeFactor(matrix=P, lu=lu, piv=piv)


def _vo_diagonal(basis: WaveletBasis, vt: float, q: int) -> NDArray[np.float64]:
    """Diagonal of the variable-order monomial matrix without the t**(-vt) factor."""
    d = np.zeros(basis.M)
    for j in range(q, basis.M):
        d[j] = math.factorial(j) / gamma(j - vt + 1.0)
    return np.tile(d, basis.subintervals)


def vo_monomial_matrix(
    basis: WaveletBasis, order: OrderFunction, x: float, t: float
) -> DenseMatrix:
    """Variable-order derivative matrix on the piecewise-monomial vector.

    Block diagonal with 2**k copies of
    t**(-vt) * diag(0, ..., 0, q!/Gamma(q-vt+1), ..., (M-1)!/Gamma(M-vt)),
    the first q diagonal entries zero, where vt = order.value(x, t).
    """
    if t <= 0.0:
        raise ValueError(f"variable-order matrix is singular at t = {t} <= 0")
    vt = _bracketed_order(order, x, t)
    return np.diag(_vo_diagonal(basis, vt, order.q) * t ** (-vt))


def vo_wavelet_matrix(
    basis: WaveletBasis,
    order: OrderFunction,
    x: float,
    t: float,
    change: MonomialChangeFactor | None = None,
) -> DenseMatrix:
    """Variable-order derivative matrix Q = P^{-1} T P on the wavelet vector.

    The scalar t**(-vt) is applied after the matrix product; P's factorization
    can be shared across calls via `change` since it does not depend on (x, t).
    """
    if t <= 0.0:
        raise ValueError(f"variable-order matrix is singular at t = {t} <= 0")
    vt = _bracketed_order(order, x, t)
    if change is None:
        change = monomial_change_factor(basis)
    d = _vo_diagonal(basis, vt, order.q)
    return change.solve(d[:, None] * change.matrix) * t ** (-vt)


def condition_estimate_inf(
    a: DenseMatrix, lu_piv: tuple[DenseMatrix, NDArray[np.intp]] | None = None
) -> float:
    """Infinity-norm condition estimate of a square matrix.

    Uses the LAPACK reciprocal-condition estimator on an LU factorization,
    so the cost beyond the factorization is O(n^2). Returns inf for a
    numerically singular matrix.
    """
    a = np.asarray(a, dtype=float)
    anorm = float(np.linalg.norm(a, np.inf)) if a.size else 0.0
    if anorm == 0.0:
        return math.inf
    if lu_piv is None:
        try:
            lu_piv = lu_factor(a, check_finite=False)
        except np.linalg.LinAlgError:
            return math.inf
    rcond, info = dgecon(lu_piv[0], anorm, norm="I")
    if info != 0 or rcond == 0.0:
        return math.inf
    return 1.0 / float(rcond)
