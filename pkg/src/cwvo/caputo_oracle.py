"""Independent evaluation of the variable-order Caputo derivative.

Validation-only module: it evaluates the derivative straight from its
integral definition with Gauss-Jacobi quadrature matched to the weakly
singular kernel, plus the closed form on monomials. The solver never calls
this path; tests use it to cross-check the operational-matrix route.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi

from .opmat import OrderFunction
from .scalars import gamma

__all__ = ["ScalarField", "caputo_vo_quadrature", "caputo_vo_monomial"]


@dataclass(frozen=True, slots=True)
class ScalarField:
    """A scalar function of (x, t), optionally with its analytic time derivative.

    When `dt` is absent the field must be smooth enough in t for central
    differencing with a step of order 1e-4.
    """

    value: Callable[[float, float], float]
    dt: Callable[[float, float], float] | None = None


def _time_derivative(u: ScalarField, x: float, t: float) -> float:
    if u.dt is not None:
        return u.dt(x, t)
    h = 1e-4 * max(1.0, abs(t))
    f = u.value
    return (-f(x, t + 2 * h) + 8 * f(x, t + h) - 8 * f(x, t - h) + f(x, t - 2 * h)) / (12 * h)


def caputo_vo_quadrature(
    u: ScalarField, order: OrderFunction, x: float, t: float, nodes: int = 64
) -> float:
    """Variable-order Caputo time derivative of u at (x, t) by quadrature.

    Evaluates 1/Gamma(1-g) * integral_0^t (t-s)^(-g) du/ds ds with
    g = order.value(x, t), using Gauss-Jacobi nodes whose weight matches the
    kernel singularity at s = t, so polynomial integrands are captured
    near-exactly. Only the bracket q = 1 (orders in (0, 1]) is supported; at
    g = 1 the derivative reduces to the classical du/dt, which is returned
    directly since the kernel representation degenerates there.
    """
    if order.q != 1:
        raise ValueError(f"quadrature oracle supports bracket q = 1 only, got q = {order.q}")
    if t <= 0.0:
        raise ValueError(f"Caputo derivative evaluated at t = {t} <= 0")
    if nodes < 1:
        raise ValueError(f"need at least one quadrature node, got {nodes}")
    g = order.value(x, t)
    if not (0.0 < g <= 1.0):
        raise ValueError(f"order {g} at (x={x}, t={t}) outside (0, 1]")
    if g == 1.0:
        return _time_derivative(u, x, t)
    # Substituting s = t(1+xi)/2 maps the kernel to the Jacobi weight
    # (1-xi)^(-g) on [-1, 1] and leaves the smooth factor du/ds.
    xi, w = roots_jacobi(nodes, -g, 0.0)
    s = (xi + 1.0) * (t / 2.0)
    deriv = np.array([_time_derivative(u, x, si) for si in s])
    return (t / 2.0) ** (1.0 - g) / gamma(1.0 - g) * float(w @ deriv)


def caputo_vo_monomial(m: int, order: OrderFunction, x: float, t: float) -> float:
    """Closed-form variable-order Caputo derivative of t**m at (x, t).

    Gamma(m+1)/Gamma(m-vt+1) * t**(m-vt) when m >= q, else 0: orders below
    the monomial degree differentiate it to zero just like integer calculus.
    """
    if m < 0:
        raise ValueError(f"monomial degree must be >= 0, got {m}")
    if t <= 0.0:
        raise ValueError(f"Caputo derivative evaluated at t = {t} <= 0")
    if m < order.q:
        return 0.0
    vt = order.value(x, t)
    return gamma(m + 1.0) / gamma(m - vt + 1.0) * t ** (m - vt)
