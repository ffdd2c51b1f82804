"""Two-point interpolating polynomial from endpoint derivative jets.

The degree <= 2n-1 interpolant matching f^(j) at both endpoints for
j = 0..n-1 is assembled in product form,

    H(x) = (x-a)^n sum_k B_k (x-b)^k / k!  +  (x-b)^n sum_k A_k (x-a)^k / k!,

where A_k and B_k are the k-th derivatives of f(x)/(x-b)^n at a and of
f(x)/(x-a)^n at b.  Expanding those derivatives with the general Leibniz
rule gives closed forms in the endpoint jets:

    B_k = sum_{j=0}^{k} f^(j)(b) C(k,j) (-1)^{k-j} (n+k-j-1)! / ((n-1)! (b-a)^{n+k-j})

and A_k the same with a and b swapped (so with powers of a-b).

All arithmetic is exact; float jet entries are converted to rationals via
their exact binary expansion, so the returned polynomial reproduces the
given jets bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import Polynomial, rational

__all__ = ["JetPair", "leibniz_coeffs", "build_hermite"]


@dataclass(frozen=True)
class JetPair:
    """Derivatives 0..n-1 of an integrand at the two endpoints of [a, b]."""

    a: Fraction
    b: Fraction
    jet_a: tuple
    jet_b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", rational(self.a))
        object.__setattr__(self, "b", rational(self.b))
        object.__setattr__(self, "jet_a", tuple(self.jet_a))
        object.__setattr__(self, "jet_b", tuple(self.jet_b))
        if len(self.jet_a) != len(self.jet_b):
            raise ValueError("endpoint jets must have equal length")
        if not self.jet_a:
            raise ValueError("jets must carry at least the function value")
        if self.a == self.b:
            raise ValueError("endpoints must be distinct")

    @property
    def order(self) -> int:
        """Number of matched derivatives per endpoint (n)."""
        return len(self.jet_a)


def leibniz_coeffs(side: str, pair: JetPair) -> tuple:
    """The coefficients A_0..A_{n-1} (side "a") or B_0..B_{n-1} (side "b").

    Exact for rational jets; float jets are converted exactly first.
    """
    if side not in ("a", "b"):
        raise ValueError(f"side must be 'a' or 'b', got {side!r}")
    n = pair.order
    if side == "a":
        jets = tuple(rational(v) for v in pair.jet_a)
        base = pair.a - pair.b
    else:
        jets = tuple(rational(v) for v in pair.jet_b)
        base = pair.b - pair.a
    fact_n1 = math.factorial(n - 1)
    out = []
    for k in range(n):
        s = Fraction(0)
        for j in range(k + 1):
            s += (
                jets[j]
                * math.comb(k, j)
                * (-1) ** (k - j)
                * Fraction(math.factorial(n + k - j - 1), fact_n1)
                / base ** (n + k - j)
            )
        out.append(s)
    return tuple(out)


def build_hermite(pair: JetPair) -> Polynomial:
    """The degree <= 2n-1 polynomial matching both endpoint jets exactly."""
    if pair.a >= pair.b:
        raise ValueError("endpoints must satisfy a < b")
    n = pair.order
    coeffs_a = leibniz_coeffs("a", pair)
    coeffs_b = leibniz_coeffs("b", pair)
    xa = Polynomial((-pair.a, 1))
    xb = Polynomial((-pair.b, 1))
    sum_b = Polynomial()
    sum_a = Polynomial()
    for k in range(n):
        inv_kfact = Fraction(1, math.factorial(k))
        sum_b = sum_b + xb ** k * (coeffs_b[k] * inv_kfact)
        sum_a = sum_a + xa ** k * (coeffs_a[k] * inv_kfact)
    result = xa ** n * sum_b + xb ** n * sum_a
    assert result.degree <= 2 * n - 1
    return result
