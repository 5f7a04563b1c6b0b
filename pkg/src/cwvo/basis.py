"""Chebyshev wavelet basis on [0, 1]: evaluation, weights, collocation nodes.

The basis splits [0, 1] into 2**k dyadic subintervals and carries M shifted
Chebyshev polynomials on each, scaled so the family is orthonormal under the
per-subinterval Chebyshev weight. A companion piecewise-monomial vector (the
plain powers t**m restricted to each subinterval) supports the change-of-basis
matrix used by the variable-order operational matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "WaveletBasis",
    "BasisVector",
    "shifted_chebyshev",
    "shifted_chebyshev_monomial_coeffs",
    "psi_vector",
    "phi_vector",
    "chebyshev_weight",
    "chebyshev_zeros",
]

# A basis vector is the dense length-m_hat evaluation of the wavelet (or
# piecewise monomial) family at one point; at most M entries are nonzero.
BasisVector = NDArray[np.float64]

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)


@dataclass(frozen=True, slots=True)
class WaveletBasis:
    """The (k, M) discretization: 2**k subintervals, M polynomials each.

    Attributes:
        k: dilation level (non-negative).
        M: polynomials per subinterval (positive).
        m_hat: total basis size 2**k * M, derived.
    """

    k: int
    M: int
    m_hat: int = field(init=False)

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError(f"dilation level k must be >= 0, got {self.k}")
        if self.M < 1:
            raise ValueError(f"polynomial count M must be >= 1, got {self.M}")
        object.__setattr__(self, "m_hat", (1 << self.k) * self.M)

    @property
    def subintervals(self) -> int:
        return 1 << self.k

    def subinterval_index(self, t: float) -> int:
        """Index n of the subinterval containing t.

        Subintervals are half-open [n/2**k, (n+1)/2**k) except the last,
        which is closed, so every t in [0, 1] belongs to exactly one block.
        """
        _check_unit_interval(t)
        return min(int(t * self.subintervals), self.subintervals - 1)

    def flat_index(self, n: int, m: int) -> int:
        """1-based position of wavelet (n, m) in the basis vector."""
        if not (0 <= n < self.subintervals and 0 <= m < self.M):
            raise ValueError(f"(n={n}, m={m}) outside basis ranges")
        return self.M * n + m + 1


def _check_unit_interval(t: float) -> None:
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"argument must lie in [0, 1], got {t}")


def _beta(m: int) -> float:
    return _SQRT_2_OVER_PI if m == 0 else _TWO_OVER_SQRT_PI


def shifted_chebyshev(m: int, t: float) -> float:
    """Shifted Chebyshev polynomial of the first kind on [0, 1].

    Evaluated by the three-term recurrence, which is stable where the
    explicit factorial sum cancels catastrophically for large m.
    """
    if m < 0:
        raise ValueError(f"degree must be >= 0, got {m}")
    _check_unit_interval(t)
    y = 2.0 * t - 1.0
    if m == 0:
        return 1.0
    prev, cur = 1.0, y
    for _ in range(m - 1):
        prev, cur = cur, 2.0 * y * cur - prev
    return cur


def shifted_chebyshev_monomial_coeffs(m: int) -> NDArray[np.float64]:
    """Monomial coefficients c_0..c_m of the degree-m shifted Chebyshev polynomial.

    Computed in exact integer arithmetic and converted last, so the result is
    exact whenever the integers fit a double (all m <= 20 and beyond).
    """
    if m < 0:
        raise ValueError(f"degree must be >= 0, got {m}")
    if m == 0:
        return np.array([1.0])
    coeffs = np.empty(m + 1)
    for i in range(m + 1):
        num = m * (-1) ** (m - i) * (1 << (2 * i)) * math.factorial(m + i - 1)
        coeffs[i] = float(num // (math.factorial(m - i) * math.factorial(2 * i)))
    return coeffs


def _local_chebyshev_column(basis: WaveletBasis, s: float) -> NDArray[np.float64]:
    """Values T*_0(s)..T*_{M-1}(s) by the recurrence, for s in [0, 1]."""
    out = np.empty(basis.M)
    y = 2.0 * s - 1.0
    out[0] = 1.0
    if basis.M > 1:
        out[1] = y
    for m in range(2, basis.M):
        out[m] = 2.0 * y * out[m - 1] - out[m - 2]
    return out


def psi_vector(basis: WaveletBasis, t: float) -> BasisVector:
    """Wavelet vector at t: block n holds beta_m * 2**(k/2) * T*_m(2**k t - n)."""
    _check_unit_interval(t)
    n = basis.subinterval_index(t)
    s = t * basis.subintervals - n
    vals = _local_chebyshev_column(basis, s)
    scale = 2.0 ** (basis.k / 2.0)
    out = np.zeros(basis.m_hat)
    for m in range(basis.M):
        out[n * basis.M + m] = _beta(m) * scale * vals[m]
    return out


def phi_vector(basis: WaveletBasis, t: float) -> BasisVector:
    """Piecewise-monomial vector at t: block n holds 1, t, ..., t**(M-1)."""
    _check_unit_interval(t)
    n = basis.subinterval_index(t)
    out = np.zeros(basis.m_hat)
    power = 1.0
    for m in range(basis.M):
        out[n * basis.M + m] = power
        power *= t
    return out


def chebyshev_weight(basis: WaveletBasis, n: int, t: float) -> float:
    """Chebyshev weight of subinterval n at t, singular at the endpoints."""
    if not 0 <= n < basis.subintervals:
        raise ValueError(f"subinterval index {n} outside [0, {basis.subintervals})")
    arg = 2.0 ** (basis.k + 1) * t - 2.0 * n - 1.0
    if abs(arg) >= 1.0:
        raise ValueError(
            f"weight is singular at subinterval endpoints (t={t}, n={n})")
    return 1.0 / math.sqrt(1.0 - arg * arg)


def chebyshev_zeros(N: int) -> NDArray[np.float64]:
    """Ascending zeros of the degree-N shifted Chebyshev polynomial."""
    if N < 1:
        raise ValueError(f"need N >= 1, got {N}")
    j = np.arange(1, N + 1)
    return 0.5 + 0.5 * np.cos((2.0 * (N - j) + 1.0) * math.pi / (2.0 * N))
