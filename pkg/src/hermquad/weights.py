"""Closed-form quadrature weights for endpoint-derivative rules.

The order-n rule integrates the unique degree <= 2n-1 polynomial matching
f, f', ..., f^(n-1) at both endpoints, and takes the form

    integral(f, a, b)  ~  sum_j  w_a[j] f^(j)(a) + w_b[j] f^(j)(b)

with exact rational weights

    w_a[j] = (b-a)^(j+1) * n * sum_{k=j}^{n-1} C(k,j) (n+k-j-1)! / (n+k+1)!
    w_b[j] = (-1)^j * w_a[j].

The dimensionless coefficients ``omega_coeffs`` are the interval-free part,
w_a[j] = omega[j] * (b-a)^(j+1); the composite rule reuses them per panel.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import format_rational, parse_rational, rational

__all__ = [
    "DEFAULT_ORDER_CAP",
    "ORDER_CAP_ENV",
    "HermiteRule",
    "order_cap",
    "omega_coeffs",
    "compute_weights",
    "apply_rule",
]

#: Default cap on the rule order; weights for much larger n are still exact
#: but kernel degrees and factorial sizes grow without practical payoff.
DEFAULT_ORDER_CAP = 64

#: Environment variable overriding the order cap.
ORDER_CAP_ENV = "HQ_MAX_N"


def order_cap() -> int:
    raw = os.environ.get(ORDER_CAP_ENV)
    if raw is None:
        return DEFAULT_ORDER_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{ORDER_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{ORDER_CAP_ENV} must be >= 1, got {cap}")
    return cap


def _check_order(n) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"rule order must be a positive integer, got {n!r}")
    cap = order_cap()
    if n > cap:
        raise ValueError(
            f"rule order {n} exceeds the cap {cap} (override with {ORDER_CAP_ENV})"
        )


@dataclass(frozen=True)
class HermiteRule:
    """An order-n rule on [a, b]: weights for derivatives 0..n-1 at each endpoint.

    Immutable; weights are exact rationals satisfying w_b[j] = (-1)^j w_a[j]
    and w_a[0] + w_b[0] = b - a.
    """

    n: int
    a: Fraction
    b: Fraction
    w_a: tuple
    w_b: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("rule order must be >= 1")
        if self.a >= self.b:
            raise ValueError("rule interval must satisfy a < b")
        if len(self.w_a) != self.n or len(self.w_b) != self.n:
            raise ValueError("weight vectors must have length n")
        for j in range(self.n):
            if self.w_b[j] != (-1) ** j * self.w_a[j]:
                raise ValueError("endpoint weights must satisfy w_b[j] = (-1)^j w_a[j]")
        if self.w_a[0] + self.w_b[0] != self.b - self.a:
            raise ValueError("zeroth weights must sum to the interval length")

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "w_a": [format_rational(w) for w in self.w_a],
            "w_b": [format_rational(w) for w in self.w_b],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, doc: dict) -> "HermiteRule":
        return cls(
            n=int(doc["n"]),
            a=parse_rational(doc["a"]),
            b=parse_rational(doc["b"]),
            w_a=tuple(parse_rational(w) for w in doc["w_a"]),
            w_b=tuple(parse_rational(w) for w in doc["w_b"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "HermiteRule":
        return cls.from_json_dict(json.loads(text))


def omega_coeffs(n: int) -> tuple:
    """Interval-free weight coefficients: omega[j] = w_a[j] / (b-a)^(j+1).

    omega[0] is always 1/2, so the n = 1 rule is the trapezoidal rule.
    """
    _check_order(n)
    out = []
    for j in range(n):
        s = sum(
            Fraction(
                math.comb(k, j) * math.factorial(n + k - j - 1),
                math.factorial(n + k + 1),
            )
            for k in range(j, n)
        )
        out.append(n * s)
    return tuple(out)


def compute_weights(n: int, a, b) -> HermiteRule:
    """Exact rule of order n on [a, b].  Rejects n < 1, n above the cap, a >= b."""
    _check_order(n)
    a = rational(a)
    b = rational(b)
    if a >= b:
        raise ValueError(f"interval must satisfy a < b, got [{a}, {b}]")
    h = b - a
    omegas = omega_coeffs(n)
    w_a = tuple(w * h ** (j + 1) for j, w in enumerate(omegas))
    w_b = tuple((-1) ** j * w for j, w in enumerate(w_a))
    return HermiteRule(n=n, a=a, b=b, w_a=w_a, w_b=w_b)


def apply_rule(rule: HermiteRule, jet_a, jet_b):
    """Weighted sum of endpoint derivatives.

    ``jet_a[j]`` and ``jet_b[j]`` must supply f^(j) at a and b for
    j = 0..n-1 (longer jets are fine; the tail is ignored).  Exact when the
    jets are rational; float jets give a float result.
    """
    if len(jet_a) < rule.n or len(jet_b) < rule.n:
        raise ValueError(
            f"order-{rule.n} rule needs derivatives 0..{rule.n - 1} at both endpoints, "
            f"got jets of length {len(jet_a)} and {len(jet_b)}"
        )
    total = 0
    for j in range(rule.n):
        total += rule.w_a[j] * jet_a[j] + rule.w_b[j] * jet_b[j]
    return total
