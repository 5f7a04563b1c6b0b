"""Problem definitions: the mobile-immobile transport equation and built-ins.

The governing equation on (x, t) in [0,1]^2 is

    alpha1 * u_t + alpha2 * D_t^gamma(x,t) u + mu1 * u_x - mu2 * u_xx = f(x, t)

with initial data u(x, 0) = g(x) and boundary data u(0, t) = h1(t),
u(1, t) = h2(t), where D_t^gamma is the variable-order Caputo time
derivative with 0 < gamma(x, t) <= 1. Four benchmark problems with known
exact solutions ship as built-ins; each source term satisfies the equation
for its exact solution, which `residual_source_check` verifies through the
independent quadrature oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .caputo_oracle import ScalarField, caputo_vo_quadrature
from .opmat import OrderFunction
from .scalars import gamma

__all__ = ["ProblemSpec", "builtin_example", "residual_source_check"]

_CORNER_TOL = 1e-12


@dataclass(frozen=True, slots=True)
class ProblemSpec:
    """Coefficients, data functions, and (optionally) the exact solution.

    Invariants checked at construction: alpha1, alpha2 >= 0; mu1, mu2 > 0;
    and corner compatibility g(0) = h1(0), g(1) = h2(0).
    """

    alpha1: float
    alpha2: float
    mu1: float
    mu2: float
    source_f: ScalarField
    initial_g: Callable[[float], float]
    boundary_h1: Callable[[float], float]
    boundary_h2: Callable[[float], float]
    gamma: OrderFunction
    exact: ScalarField | None = None

    def __post_init__(self) -> None:
        if self.alpha1 < 0.0 or self.alpha2 < 0.0:
            raise ValueError("alpha1 and alpha2 must be >= 0")
        if self.mu1 <= 0.0 or self.mu2 <= 0.0:
            raise ValueError("mu1 and mu2 must be > 0")
        if abs(self.initial_g(0.0) - self.boundary_h1(0.0)) > _CORNER_TOL:
            raise ValueError("incompatible corner: initial_g(0) != boundary_h1(0)")
        if abs(self.initial_g(1.0) - self.boundary_h2(0.0)) > _CORNER_TOL:
            raise ValueError("incompatible corner: initial_g(1) != boundary_h2(0)")


def _example_1() -> ProblemSpec:
    def order(x: float, t: float) -> float:
        return 1.0 - 0.5 * math.exp(-x * t)

    def u(x: float, t: float) -> float:
        return 10.0 * (t + 1.0) * x * x * (1.0 - x) ** 2

    def u_t(x: float, t: float) -> float:
        return 10.0 * x * x * (1.0 - x) ** 2

    def f(x: float, t: float) -> float:
        g = order(x, t)
        shape = 10.0 * x * x * (1.0 - x) ** 2
        caputo = shape * t ** (1.0 - g) / gamma(2.0 - g)
        advect = 10.0 * (t + 1.0) * (4.0 * x**3 - 6.0 * x**2 + 2.0 * x)
        disperse = 10.0 * (t + 1.0) * (12.0 * x**2 - 12.0 * x + 2.0)
        return shape + caputo + advect - disperse

    return ProblemSpec(
        alpha1=1.0, alpha2=1.0, mu1=1.0, mu2=1.0,
        source_f=ScalarField(value=f),
        initial_g=lambda x: 10.0 * x * x * (1.0 - x) ** 2,
        boundary_h1=lambda t: 0.0,
        boundary_h2=lambda t: 0.0,
        gamma=OrderFunction(q=1, value=order),
        exact=ScalarField(value=u, dt=u_t),
    )


def _example_2() -> ProblemSpec:
    def order(x: float, t: float) -> float:
        return 1.0 - 0.4 * math.sin(x + t) ** 2

    def u(x: float, t: float) -> float:
        return 10.0 * x**3 * t**3 * (1.0 - x) * (1.0 - t)

    def u_t(x: float, t: float) -> float:
        return 10.0 * x**3 * (1.0 - x) * (3.0 * t**2 - 4.0 * t**3)

    def f(x: float, t: float) -> float:
        g = order(x, t)
        xs = 10.0 * x**3 * (1.0 - x)
        caputo = xs * (6.0 * t ** (3.0 - g) / gamma(4.0 - g)
                       - 24.0 * t ** (4.0 - g) / gamma(5.0 - g))
        ts = t**3 - t**4
        advect = 10.0 * (3.0 * x**2 - 4.0 * x**3) * ts
        disperse = 10.0 * (6.0 * x - 12.0 * x**2) * ts
        return xs * (3.0 * t**2 - 4.0 * t**3) + caputo + 2.0 * advect - 2.0 * disperse

    zero = lambda s: 0.0
    return ProblemSpec(
        alpha1=1.0, alpha2=1.0, mu1=2.0, mu2=2.0,
        source_f=ScalarField(value=f),
        initial_g=zero, boundary_h1=zero, boundary_h2=zero,
        gamma=OrderFunction(q=1, value=order),
        exact=ScalarField(value=u, dt=u_t),
    )


def _example_3() -> ProblemSpec:
    def order(x: float, t: float) -> float:
        return 0.8 + 0.2 * math.exp(-x) * math.sin(t)

    def u(x: float, t: float) -> float:
        return t**3 * math.exp(x)

    def u_t(x: float, t: float) -> float:
        return 3.0 * t**2 * math.exp(x)

    def f(x: float, t: float) -> float:
        g = order(x, t)
        return (3.0 * t**2 + 3.0 * t ** (3.0 - g) / gamma(4.0 - g) - t**3) * math.exp(x)

    return ProblemSpec(
        alpha1=1.0, alpha2=0.5, mu1=1.0, mu2=2.0,
        source_f=ScalarField(value=f),
        initial_g=lambda x: 0.0,
        boundary_h1=lambda t: t**3,
        boundary_h2=lambda t: math.e * t**3,
        gamma=OrderFunction(q=1, value=order),
        exact=ScalarField(value=u, dt=u_t),
    )


def _example_4() -> ProblemSpec:
    def order(x: float, t: float) -> float:
        return 1.0 - math.exp(-x * t)

    def u(x: float, t: float) -> float:
        return t**3 * abs(2.0 * x - 1.0) ** 3

    def u_t(x: float, t: float) -> float:
        return 3.0 * t**2 * abs(2.0 * x - 1.0) ** 3

    def f(x: float, t: float) -> float:
        g = order(x, t)
        a = abs(2.0 * x - 1.0)
        caputo_part = (3.0 * t**2 + 6.0 * t ** (3.0 - g) / gamma(4.0 - g)) * a**3
        return caputo_part + (6.0 * a * (2.0 * x - 1.0) - 24.0 * a) * t**3

    return ProblemSpec(
        alpha1=1.0, alpha2=1.0, mu1=1.0, mu2=1.0,
        source_f=ScalarField(value=f),
        initial_g=lambda x: 0.0,
        boundary_h1=lambda t: t**3,
        boundary_h2=lambda t: t**3,
        gamma=OrderFunction(q=1, value=order),
        exact=ScalarField(value=u, dt=u_t),
    )


_BUILTINS = {1: _example_1, 2: _example_2, 3: _example_3, 4: _example_4}


def builtin_example(example_id: int) -> ProblemSpec:
    """One of the four built-in benchmark problems, fully populated.

    The order function of example 4 touches 0 on the axes x = 0 and t = 0;
    the solver only evaluates it at interior collocation points, so the
    problem is accepted as is rather than rejected at construction.
    """
    try:
        factory = _BUILTINS[example_id]
    except (KeyError, TypeError):
        raise ValueError(f"no built-in example with id {example_id!r}; choose 1..4") from None
    return factory()


def residual_source_check(spec: ProblemSpec, x: float, t: float) -> float:
    """PDE residual of the exact solution at an interior point.

    Assembles alpha1*u_t + alpha2*Caputo(u) + mu1*u_x - mu2*u_xx - f using
    the quadrature oracle for the fractional term and high-order central
    differences for the spatial derivatives. A small residual certifies that
    the stored source term is consistent with the stored exact solution.
    """
    if spec.exact is None:
        raise ValueError("residual_source_check requires an exact solution")
    if not (0.0 < x < 1.0 and 0.0 < t < 1.0):
        raise ValueError(f"check point must be interior, got ({x}, {t})")
    u = spec.exact
    if u.dt is not None:
        ut = u.dt(x, t)
    else:
        ht = 1e-4 * max(1.0, abs(t))
        ut = (-u.value(x, t + 2 * ht) + 8 * u.value(x, t + ht)
              - 8 * u.value(x, t - ht) + u.value(x, t - 2 * ht)) / (12 * ht)
    cap = caputo_vo_quadrature(u, spec.gamma, x, t)
    hx = 1e-4
    ux = (-u.value(x + 2 * hx, t) + 8 * u.value(x + hx, t)
          - 8 * u.value(x - hx, t) + u.value(x - 2 * hx, t)) / (12 * hx)
    hxx = 1e-3
    uxx = (-u.value(x + 2 * hxx, t) + 16 * u.value(x + hxx, t) - 30 * u.value(x, t)
           + 16 * u.value(x - hxx, t) - u.value(x - 2 * hxx, t)) / (12 * hxx**2)
    return (spec.alpha1 * ut + spec.alpha2 * cap + spec.mu1 * ux - spec.mu2 * uxx
            - spec.source_f.value(x, t))
