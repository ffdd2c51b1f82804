"""Error kernels of the endpoint-derivative quadrature rules.

The order-n rule commits the error

    E_n = integral( (-1)^n f^(n)(x) K_n(x) , a, b )

where K_n is a degree-n polynomial with leading coefficient 1/n! -- a
shifted, unnormalized Legendre polynomial on [a, b].  This module builds
K_n three independent ways and cross-checks are left to the caller:

* ``kernel_from_params``: K_n(x) = (x+c)^n/n! + sum_i delta_i x^i/i!, with
  the parameters fixed by matching repeated reverse integration by parts
  against the rule weights (``solve_params``);
* ``rodrigues_kernel``: K_n = (1/(2n)!) d^n/dx^n [(x-a)^n (x-b)^n];
* ``peano_kernel``: the Peano kernel of the rule's error functional, a
  degree-2n polynomial equal to (x-a)^n (x-b)^n / (2n)!, which must also
  equal the n-th antiderivative of K_n (``antiderivative_chain``).

Kernel sets are cached per exact (n, a, b) triple since the CLI and the
bound estimators query the same kernels repeatedly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmath import Polynomial, X, rational
from .weights import HermiteRule, _check_order, compute_weights

__all__ = [
    "KernelParams",
    "KernelSet",
    "RootIsolationError",
    "solve_params",
    "kernel_from_params",
    "rodrigues_kernel",
    "antiderivative_chain",
    "peano_kernel",
    "kernel_l2sq",
    "kernel_abs_integral",
    "isolate_roots",
    "kernel_set",
]


class RootIsolationError(RuntimeError):
    """Sign-change scanning produced an inconsistent root set."""


@dataclass(frozen=True)
class KernelParams:
    """Matched free parameters of the reverse-integration-by-parts kernel.

    For the parameter set that reproduces the quadrature weights,
    c = -(a+b)/2 and, for n >= 2, deltas[n-2] = -(b-a)^2 / (8(2n-1)).
    """

    n: int
    c: Fraction
    deltas: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("kernel order must be >= 1")
        if len(self.deltas) != self.n - 1:
            raise ValueError("expected n-1 delta parameters")


@dataclass(frozen=True)
class KernelSet:
    """A matched kernel with its antiderivative chain on [a, b].

    ``antiderivatives[j-1]`` is the j-th repeated integral of the kernel
    from a; every entry vanishes at both endpoints and the last equals
    (x-a)^n (x-b)^n / (2n)!.
    """

    n: int
    a: Fraction
    b: Fraction
    kernel: Polynomial
    antiderivatives: tuple
    params: KernelParams

    def l2sq(self) -> Fraction:
        return kernel_l2sq(self.kernel, self.a, self.b)

    def abs_integral(self, tol: float = 1e-12) -> float:
        return kernel_abs_integral(self.kernel, self.a, self.b, tol)

    def to_json_dict(self) -> dict:
        from .exactmath import format_rational

        return {
            "n": self.n,
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "coeffs": [format_rational(c) for c in self.kernel.coeffs],
            "params": {
                "c": format_rational(self.params.c),
                "deltas": [format_rational(d) for d in self.params.deltas],
            },
        }


def solve_params(n: int, a, b) -> KernelParams:
    """Solve the triangular matching system for the kernel parameters.

    c comes from the zeroth matching condition and is always -(a+b)/2;
    the j-th condition (j = 1..n-1) then determines delta_{n-1-j}:

        delta_{n-1-j} = (-1)^{j+1} w_a[j] - (a+c)^{j+1}/(j+1)!
                        - sum_{i=1}^{j-1} delta_{i+n-1-j} a^i / i!

    The i = 0 term of the tail sum is the unknown itself, which is why the
    sum starts at i = 1.  For n = 1 there are no deltas.
    """
    _check_order(n)
    a = rational(a)
    b = rational(b)
    if a >= b:
        raise ValueError(f"interval must satisfy a < b, got [{a}, {b}]")
    c = -(a + b) / 2
    if n == 1:
        return KernelParams(n=1, c=c, deltas=())
    rule = compute_weights(n, a, b)
    ac = a + c
    deltas = [None] * (n - 1)
    for j in range(1, n):
        tail = Fraction(0)
        for i in range(1, j):
            tail += deltas[i + n - 1 - j] * a ** i / math.factorial(i)
        deltas[n - 1 - j] = (
            (-1) ** (j + 1) * rule.w_a[j]
            - ac ** (j + 1) / math.factorial(j + 1)
            - tail
        )
    return KernelParams(n=n, c=c, deltas=tuple(deltas))


def kernel_from_params(params: KernelParams) -> Polynomial:
    """K_n(x) = (x+c)^n / n! + sum_{i=0}^{n-2} deltas[i] x^i / i!."""
    n = params.n
    result = (X + params.c) ** n / math.factorial(n)
    for i, d in enumerate(params.deltas):
        result = result + Polynomial.monomial(i, d / math.factorial(i))
    return result


def rodrigues_kernel(n: int, a, b) -> Polynomial:
    """K_n via the Rodrigues-style derivative form, (1/(2n)!) d^n [(x-a)^n (x-b)^n]."""
    _check_order(n)
    a = rational(a)
    b = rational(b)
    if a >= b:
        raise ValueError(f"interval must satisfy a < b, got [{a}, {b}]")
    w = (X - a) ** n * (X - b) ** n
    return w.derivative(n) / math.factorial(2 * n)


def antiderivative_chain(kernel: Polynomial, a, n: int) -> tuple:
    """Repeated integrals K^1..K^n of the kernel, each vanishing at a."""
    if n < 1:
        raise ValueError("chain length must be >= 1")
    a = rational(a)
    chain = []
    current = kernel
    for _ in range(n):
        current = current.antiderivative(a)
        chain.append(current)
    return tuple(chain)


def peano_kernel(n: int, a, b, rule: HermiteRule) -> Polynomial:
    """Peano kernel of the rule's error functional.

    K(x) = (b-x)^{2n}/(2n)! - sum_{k=0}^{n-1} w_b[k] (b-x)^{2n-1-k}/(2n-1-k)!

    For the exact rule weights this collapses to (x-a)^n (x-b)^n / (2n)!.
    """
    _check_order(n)
    a = rational(a)
    b = rational(b)
    if rule.n != n or rule.a != a or rule.b != b:
        raise ValueError("rule does not match the requested kernel (n, a, b)")
    bx = Polynomial((b, -1))
    result = bx ** (2 * n) / math.factorial(2 * n)
    for k in range(n):
        result = result - bx ** (2 * n - 1 - k) * (
            rule.w_b[k] / math.factorial(2 * n - 1 - k)
        )
    return result


def kernel_l2sq(kernel: Polynomial, a, b) -> Fraction:
    """Exact squared L2 norm, integral of K^2 over [a, b]."""
    return (kernel * kernel).integrate(a, b)


#: Bisection brackets shrink to this fraction of the interval width.
_ROOT_REL_WIDTH = Fraction(1, 10 ** 14)


def _isolate_roots_exact(poly: Polynomial, a: Fraction, b: Fraction) -> list:
    """Sign-change roots of ``poly`` in (a, b) as exact dyadic brackets.

    Scans 8*deg points placed at Chebyshev angles (interior, denser toward
    the endpoints, where Legendre-type roots cluster), then bisects each
    sign-change bracket down to 1e-14 of the interval width.  Scan points
    and bisection midpoints are rationals, so every sign is evaluated
    exactly; float cancellation cannot fake or hide a sign change even for
    high-degree kernels.  Roots of even multiplicity do not change sign
    and are invisible here; they also do not affect integrals of |poly|,
    which is what this feeds.
    """
    if poly.degree <= 0:
        return []
    count = 8 * poly.degree
    mid = (a + b) / 2
    half = (b - a) / 2
    offsets = sorted(rational(math.cos(math.pi * (k + 0.5) / count)) for k in range(count))
    points = [a] + [mid + half * t for t in offsets] + [b]
    values = [poly(x) for x in points]
    target = _ROOT_REL_WIDTH * (b - a)
    roots = []
    for i in range(len(points) - 1):
        v0, v1 = values[i], values[i + 1]
        if v0 == 0:
            # Interior scan point landing exactly on a root.
            if 0 < i:
                roots.append(points[i])
            continue
        if v1 == 0 or (v0 > 0) == (v1 > 0):
            continue
        x0, x1 = points[i], points[i + 1]
        positive = v0 > 0
        while x1 - x0 > target:
            xm = (x0 + x1) / 2
            fm = poly(xm)
            if fm == 0:
                x0 = x1 = xm
                break
            if (fm > 0) == positive:
                x0 = xm
            else:
                x1 = xm
        roots.append((x0 + x1) / 2)
    return sorted(roots)


def isolate_roots(poly: Polynomial, a, b) -> list:
    """Approximate locations of the sign-change roots of ``poly`` in (a, b)."""
    return [float(r) for r in _isolate_roots_exact(poly, rational(a), rational(b))]


def kernel_abs_integral(kernel: Polynomial, a, b, tol: float = 1e-12) -> float:
    """Numerically accurate integral of |K| over [a, b].

    Isolates the sign-change roots of K in (a, b) and sums the absolute
    values of exact antiderivative differences over the resulting
    subintervals, all in rational arithmetic.  Root placement is the only
    approximate step; the antiderivative is stationary at each root, so
    its effect is second order in the 1e-14 bracket width (far below
    ``tol`` for any tol >= 1e-13).

    Raises :class:`RootIsolationError` if the segment signs fail to
    alternate, which would indicate missed sign changes.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = rational(a)
    b = rational(b)
    if a >= b:
        raise ValueError(f"interval must satisfy a < b, got [{a}, {b}]")
    if kernel.is_zero():
        return 0.0
    cuts = [a] + _isolate_roots_exact(kernel, a, b) + [b]
    anti = kernel.antiderivative(a)
    total = Fraction(0)
    previous_sign = 0
    for i in range(len(cuts) - 1):
        lo, hi = cuts[i], cuts[i + 1]
        segment = anti(hi) - anti(lo)
        midpoint_value = kernel((lo + hi) / 2)
        sign = 1 if midpoint_value > 0 else (-1 if midpoint_value < 0 else 0)
        if sign == 0 or (previous_sign and sign == previous_sign):
            raise RootIsolationError(
                f"inconsistent sign pattern while integrating |K| on "
                f"[{float(lo)}, {float(hi)}]"
            )
        previous_sign = sign
        total += abs(segment)
    return float(total)


@lru_cache(maxsize=256)
def _kernel_set_cached(n: int, a: Fraction, b: Fraction) -> KernelSet:
    params = solve_params(n, a, b)
    kern = kernel_from_params(params)
    chain = antiderivative_chain(kern, a, n)
    return KernelSet(n=n, a=a, b=b, kernel=kern, antiderivatives=chain, params=params)


def kernel_set(n: int, a, b) -> KernelSet:
    """The matched kernel and its antiderivative chain, cached per (n, a, b)."""
    return _kernel_set_cached(n, rational(a), rational(b))
