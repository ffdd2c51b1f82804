"""Single-interval and composite quadrature, exact error, and error bounds.

Jet providers feed the rules: a provider is a callable ``(x, m) ->
sequence of f, f', ..., f^(m) at x``.  With rational nodes and rational
jets everything stays exact; float inputs flow through as floats.

The error of the order-n rule is E_n = integral((-1)^n f^(n) K_n), which
needs only the n-th derivative of the integrand.  ``error_exact``
evaluates it with the reference integrator.  The bound estimators replace
f^(n) by its deviation from the midrange (uniform norm) or from the mean
(L2 norm), paired with the kernel's exact norms; extrema and means come
from sampling, so the bounds are estimates rather than rigorous
enclosures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .exactmath import rational
from .kernel import KernelSet, kernel_abs_integral, kernel_l2sq
from .oracle import ConvergenceError, OracleConfig, reference_integrate
from .weights import apply_rule, compute_weights, omega_coeffs

__all__ = [
    "Partition",
    "ErrorReport",
    "BoundPair",
    "integrate_single",
    "integrate_composite",
    "error_exact",
    "bound_uniform",
    "bound_l2",
    "e2_bound_f3",
    "e2_classical_f4",
    "sample_uniform",
    "refined_bounds",
    "observed_orders",
]


@dataclass(frozen=True)
class Partition:
    """Strictly increasing nodes x_0 < ... < x_m covering [x_0, x_m]."""

    nodes: tuple

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if len(self.nodes) < 2:
            raise ValueError("a partition needs at least two nodes")
        for left, right in zip(self.nodes, self.nodes[1:]):
            if not left < right:
                raise ValueError("partition nodes must be strictly increasing")

    @classmethod
    def uniform(cls, a, b, m: int) -> "Partition":
        """m equal subintervals with exact rational nodes."""
        if m < 1:
            raise ValueError("subinterval count must be >= 1")
        a = rational(a)
        b = rational(b)
        step = (b - a) / m
        return cls(tuple(a + k * step for k in range(m)) + (b,))

    @property
    def panel_count(self) -> int:
        return len(self.nodes) - 1


@dataclass(frozen=True)
class ErrorReport:
    """Quadrature outcome with optional reference, error, and bound estimates.

    ``actual_error`` is quadrature_value - reference_value.  Bounds are
    sampling-based estimates; ``derivative_order_used`` records which
    derivative fed them (n for the generic bounds, 3 for the n = 2
    third-derivative pair).
    """

    quadrature_value: float
    reference_value: float | None = None
    actual_error: float | None = None
    bound_uniform: float | None = None
    bound_l2: float | None = None
    bound_kind: str = "midrange"
    derivative_order_used: int = 0


class BoundPair(NamedTuple):
    uniform: float
    l2: float


def integrate_single(jets, n: int, a, b):
    """Apply the order-n rule on [a, b] using jets from ``jets(x, n-1)``."""
    rule = compute_weights(n, a, b)
    jet_a = jets(a, n - 1)
    jet_b = jets(b, n - 1)
    return apply_rule(rule, jet_a, jet_b)


def integrate_composite(jets, n: int, partition: Partition):
    """Composite order-n rule over a partition.

    Per panel [x_i, x_{i+1}] of width h the contribution is

        sum_j h^(j+1) * omega_j * (f^(j)(x_i) + (-1)^j f^(j)(x_{i+1}))

    with the interval-free coefficients omega_j.  Jets at interior nodes
    are evaluated once and shared by the adjacent panels.
    """
    omegas = omega_coeffs(n)
    nodes = partition.nodes
    node_jets = [jets(x, n - 1) for x in nodes]
    total = 0
    for i in range(len(nodes) - 1):
        h = nodes[i + 1] - nodes[i]
        left = node_jets[i]
        right = node_jets[i + 1]
        hp = h
        for j in range(n):
            total += hp * omegas[j] * (left[j] + (-1) ** j * right[j])
            hp = hp * h
    return total


def error_exact(f_n, kernel: KernelSet, cfg: OracleConfig | None = None) -> float:
    """The exact error integral E_n = integral((-1)^n f^(n)(x) K_n(x)).

    E_n is the signed defect of the rule: true integral = rule value + E_n.
    ``f_n`` evaluates the n-th derivative.  Raises
    :class:`~hermquad.oracle.ConvergenceError` if the reference integrator
    cannot meet its tolerance.
    """
    sign = -1.0 if kernel.n % 2 else 1.0
    kern = kernel.kernel
    result = reference_integrate(
        lambda x: sign * f_n(x) * kern(x), float(kernel.a), float(kernel.b), cfg
    )
    if not result.converged:
        raise ConvergenceError("error integral did not converge", result)
    return result.value


def _spread_half(samples) -> float:
    if len(samples) < 2:
        raise ValueError("need at least two derivative samples")
    return 0.5 * (max(samples) - min(samples))


def _trapezoid(samples, a: float, b: float) -> float:
    h = (b - a) / (len(samples) - 1)
    return h * (0.5 * samples[0] + sum(samples[1:-1]) + 0.5 * samples[-1])


def _l2_deviation(samples, a: float, b: float) -> float:
    if len(samples) < 2:
        raise ValueError("need at least two derivative samples")
    mean = _trapezoid(samples, a, b) / (b - a)
    squares = [(s - mean) ** 2 for s in samples]
    return math.sqrt(max(_trapezoid(squares, a, b), 0.0))


def bound_uniform(f_n_samples, kernel: KernelSet, tol: float = 1e-12) -> float:
    """|E_n| <= sup|f^(n) - midrange| * integral(|K_n|), from sampled extrema."""
    return _spread_half(f_n_samples) * kernel.abs_integral(tol)


def bound_l2(f_n_samples, kernel: KernelSet) -> float:
    """|E_n| <= ||f^(n) - mean||_2 * ||K_n||_2, deviation norm by trapezoid.

    Samples must lie on a uniform grid over [a, b] including both endpoints.
    """
    a = float(kernel.a)
    b = float(kernel.b)
    return _l2_deviation(f_n_samples, a, b) * math.sqrt(float(kernel.l2sq()))


def e2_bound_f3(f3_samples, kernel: KernelSet, tol: float = 1e-12) -> BoundPair:
    """Third-derivative bounds for the n = 2 rule.

    One integration by parts moves the error onto G, the first
    antiderivative of K_2 (G vanishes at both endpoints), giving

        |E_2| <= sup|f''' - midrange| * integral(|G|)
        |E_2| <= ||f''' - mean||_2 * ||G||_2

    with integral(|G|) = (b-a)^4/192 and ||G||_2^2 = (b-a)^7/30240.
    """
    if kernel.n != 2:
        raise ValueError("third-derivative bounds apply to the order-2 rule only")
    g = kernel.antiderivatives[0]
    a = float(kernel.a)
    b = float(kernel.b)
    uniform = _spread_half(f3_samples) * kernel_abs_integral(g, kernel.a, kernel.b, tol)
    l2 = _l2_deviation(f3_samples, a, b) * math.sqrt(
        float(kernel_l2sq(g, kernel.a, kernel.b))
    )
    return BoundPair(uniform, l2)


def e2_classical_f4(f4, a, b, cfg: OracleConfig | None = None) -> float:
    """E_2 through the fourth derivative: integral(f'''' * (x-a)^2 (x-b)^2 / 24).

    The weight polynomial is nonnegative, so for constant f'''' = c this
    equals c (b-a)^5 / 720.  Unlike the midrange/mean bounds this is an
    exact representation, evaluated with the reference integrator.
    """
    from .exactmath import Polynomial, X

    a = rational(a)
    b = rational(b)
    if a >= b:
        raise ValueError(f"interval must satisfy a < b, got [{a}, {b}]")
    weight: Polynomial = (X - a) ** 2 * (X - b) ** 2 / 24
    result = reference_integrate(lambda x: f4(x) * weight(x), float(a), float(b), cfg)
    if not result.converged:
        raise ConvergenceError("fourth-derivative error integral did not converge", result)
    return result.value


def sample_uniform(f, a, b, count: int = 257) -> list:
    """f on a uniform grid over [a, b], endpoints included."""
    if count < 2:
        raise ValueError("need at least two sample points")
    a = float(a)
    b = float(b)
    step = (b - a) / (count - 1)
    return [f(a + i * step) for i in range(count)]


def refined_bounds(f_deriv, kernel: KernelSet, count: int = 257):
    """Midrange/mean bounds with one sampling refinement pass.

    Computes both bounds on ``count`` samples, doubles the grid, and flags
    the result stable when neither bound moved by more than 1%.  Returns
    (uniform, l2, stable).
    """
    a, b = kernel.a, kernel.b
    coarse = sample_uniform(f_deriv, a, b, count)
    fine = sample_uniform(f_deriv, a, b, 2 * count - 1)
    coarse_pair = BoundPair(bound_uniform(coarse, kernel), bound_l2(coarse, kernel))
    fine_pair = BoundPair(bound_uniform(fine, kernel), bound_l2(fine, kernel))
    stable = all(
        abs(f - c) <= 0.01 * max(abs(f), 1e-300)
        for c, f in zip(coarse_pair, fine_pair)
    )
    return fine_pair.uniform, fine_pair.l2, stable


def observed_orders(errors) -> list:
    """log2 ratios of consecutive errors when the grid is halved; None where undefined."""
    orders = [None]
    for previous, current in zip(errors, errors[1:]):
        if previous > 0 and current > 0:
            orders.append(math.log2(previous / current))
        else:
            orders.append(None)
    return orders
