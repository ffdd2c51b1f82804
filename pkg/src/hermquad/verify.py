"""Exact identity checks tying the weight, interpolant, and kernel routes together.

Everything here runs in rational arithmetic, so a check either holds
exactly or fails; there are no tolerances.  The CLI ``verify`` subcommand
prints one line per check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import Polynomial, X, rational
from .interpolant import JetPair, build_hermite
from .kernel import (
    antiderivative_chain,
    isolate_roots,
    kernel_from_params,
    peano_kernel,
    rodrigues_kernel,
    solve_params,
)
from .weights import apply_rule, compute_weights

__all__ = ["Check", "run_checks"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


def _monomial_jets(d: int, n: int, x: Fraction) -> tuple:
    """Derivatives 0..n-1 of x**d at a rational point."""
    out = []
    for j in range(n):
        if j > d:
            out.append(Fraction(0))
        else:
            out.append(math.perm(d, j) * x ** (d - j))
    return tuple(out)


def run_checks(n: int, a=0, b=1) -> list:
    """Run the exact identity suite for order n on [a, b]."""
    a = rational(a)
    b = rational(b)
    checks = []
    rule = compute_weights(n, a, b)
    params = solve_params(n, a, b)
    kern = kernel_from_params(params)
    width = b - a

    checks.append(
        Check(
            "weight symmetry w_b[j] = (-1)^j w_a[j]",
            all(rule.w_b[j] == (-1) ** j * rule.w_a[j] for j in range(n)),
        )
    )
    checks.append(
        Check("weight sum w_a[0] + w_b[0] = b - a", rule.w_a[0] + rule.w_b[0] == width)
    )

    exact = True
    for d in range(2 * n):
        value = apply_rule(rule, _monomial_jets(d, n, a), _monomial_jets(d, n, b))
        if value != Polynomial.monomial(d).integrate(a, b):
            exact = False
            break
    checks.append(Check(f"exact on monomials x^d, d <= {2 * n - 1}", exact))

    interp_ok = True
    for d in range(2 * n):
        pair = JetPair(a, b, _monomial_jets(d, n, a), _monomial_jets(d, n, b))
        h = build_hermite(pair)
        if h.integrate(a, b) != apply_rule(rule, pair.jet_a, pair.jet_b):
            interp_ok = False
            break
    checks.append(Check("interpolant integral equals the weighted rule", interp_ok))

    rod = rodrigues_kernel(n, a, b)
    checks.append(Check("matched kernel equals its Rodrigues form", kern == rod))
    checks.append(
        Check(
            "kernel leading coefficient is 1/n!",
            kern.leading_coefficient == Fraction(1, math.factorial(n)),
        )
    )

    chain = antiderivative_chain(kern, a, n)
    closed = (X - a) ** n * (X - b) ** n / math.factorial(2 * n)
    checks.append(
        Check("n-th antiderivative equals (x-a)^n (x-b)^n / (2n)!", chain[-1] == closed)
    )
    checks.append(
        Check(
            "Peano kernel of the rule equals the same closed form",
            peano_kernel(n, a, b, rule) == closed,
        )
    )
    checks.append(
        Check(
            "antiderivatives vanish at both endpoints",
            all(p(a) == 0 and p(b) == 0 for p in chain),
        )
    )

    checks.append(
        Check(
            "kernel orthogonal to x^m for m < n",
            all(
                (Polynomial.monomial(m) * kern).integrate(a, b) == 0 for m in range(n)
            ),
        )
    )
    reflected = kern.compose_affine(a + b, -1)
    checks.append(
        Check(
            "kernel symmetry K(a+b-x) = (-1)^n K(x)",
            reflected == kern * ((-1) ** n),
        )
    )

    if n >= 2:
        expected = {n - 2: -(width ** 2) / Fraction(8 * (2 * n - 1))}
        if n >= 3:
            expected[n - 3] = (a + b) * width ** 2 / Fraction(16 * (2 * n - 1))
        if n >= 4:
            expected[n - 4] = (
                width ** 2
                * (width ** 2 + (6 - 4 * n) * (a + b) ** 2)
                / Fraction(128 * (2 * n - 3) * (2 * n - 1))
            )
        checks.append(
            Check(
                "leading kernel parameters match their closed forms",
                all(params.deltas[i] == v for i, v in expected.items()),
            )
        )

    true_value = Polynomial.monomial(2 * n).integrate(a, b)
    rule_value = apply_rule(
        rule, _monomial_jets(2 * n, n, a), _monomial_jets(2 * n, n, b)
    )
    first_failure = Fraction(
        (-1) ** n * math.factorial(n) ** 2, math.factorial(2 * n + 1)
    ) * width ** (2 * n + 1)
    checks.append(
        Check(
            "error on x^(2n) equals (-1)^n (n!)^2 (b-a)^(2n+1) / (2n+1)!",
            true_value - rule_value == first_failure,
        )
    )

    roots = isolate_roots(kern, a, b)
    checks.append(
        Check(f"kernel has exactly {n} sign changes in (a, b)", len(roots) == n)
    )

    return checks
