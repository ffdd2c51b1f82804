"""Independent reference integrator.

Adaptive bisection on an embedded 7-point Gauss / 15-point Kronrod pair.
This is deliberately unrelated to the endpoint-derivative rules elsewhere
in the package: it samples interior nodes only and needs no derivatives,
so it can serve as an impartial referee for their errors.

Non-finite integrand samples (inf/nan, e.g. at an integrable endpoint or
interior singularity) taint a panel: tainted panels are forced to split
until the depth limit, after which the non-finite samples count as zero
and the panel width is charged to the error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "OracleConfig",
    "IntegralResult",
    "ConvergenceError",
    "reference_integrate",
]

# 15-point Kronrod abscissae for [-1, 1] (positive half, descending; the
# points at odd indices plus the origin form the embedded 7-point Gauss rule).
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
)

_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
)
_WGK_CENTER = 0.209482141084727828012999174891714

_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
)
_WG_CENTER = 0.417959183673469387755102040816327


@dataclass(frozen=True)
class OracleConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 48
    base_rule: str = "gauss-kronrod-7/15"

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


@dataclass(frozen=True)
class IntegralResult:
    value: float
    err_estimate: float
    converged: bool
    panels: int


class ConvergenceError(RuntimeError):
    """Raised by callers that insist on a converged result."""

    def __init__(self, message: str, result: IntegralResult):
        super().__init__(f"{message} (value={result.value}, err={result.err_estimate})")
        self.result = result


# Panel error estimates below this multiple of eps * integral(|f|) are
# float noise; refining further cannot improve them.
_NOISE_FACTOR = 50.0 * 2.220446049250313e-16


def _panel(f, lo: float, hi: float):
    """One embedded evaluation: (kronrod, gauss, kronrod of |f|, tainted)."""
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    tainted = False

    def sample(x):
        nonlocal tainted
        v = float(f(x))
        if not math.isfinite(v):
            tainted = True
            return 0.0
        return v

    fc = sample(center)
    kron = _WGK_CENTER * fc
    kron_abs = _WGK_CENTER * abs(fc)
    gauss = _WG_CENTER * fc
    for i, xi in enumerate(_XGK):
        dx = half * xi
        left = sample(center - dx)
        right = sample(center + dx)
        kron += _WGK[i] * (left + right)
        kron_abs += _WGK[i] * (abs(left) + abs(right))
        if i % 2 == 1:
            gauss += _WG[i // 2] * (left + right)
    return half * kron, half * gauss, half * kron_abs, tainted


def _refine(f, lo, hi, kron, gauss, kron_abs, tainted, budget, depth, cfg):
    err = abs(kron - gauss)
    if tainted:
        err = max(err, hi - lo)
    floor = max(budget, _NOISE_FACTOR * kron_abs)
    too_thin = (hi - lo) <= 1e-15 * max(abs(lo), abs(hi), 1.0)
    if depth >= cfg.max_depth or too_thin or (err <= floor and not tainted):
        return kron, err, 1
    mid = 0.5 * (lo + hi)
    lk, lg, la, lt = _panel(f, lo, mid)
    rk, rg, ra, rt = _panel(f, mid, hi)
    lv, le, lp = _refine(f, lo, mid, lk, lg, la, lt, 0.5 * budget, depth + 1, cfg)
    rv, re, rp = _refine(f, mid, hi, rk, rg, ra, rt, 0.5 * budget, depth + 1, cfg)
    return lv + rv, le + re, lp + rp + 1


def reference_integrate(f, a, b, cfg: OracleConfig | None = None) -> IntegralResult:
    """Adaptively integrate ``f`` over [a, b].

    Returns the value with an error estimate; ``converged`` is False when
    the estimate still exceeds max(abs_tol, rel_tol * |value|) after the
    depth limit.  Reversed limits negate the result; empty intervals give 0.
    """
    if cfg is None:
        cfg = OracleConfig()
    a = float(a)
    b = float(b)
    if a == b:
        return IntegralResult(0.0, 0.0, True, 0)
    sign = 1.0
    if a > b:
        a, b = b, a
        sign = -1.0
    kron, gauss, kron_abs, tainted = _panel(f, a, b)
    budget = max(cfg.abs_tol, cfg.rel_tol * abs(kron))
    value, err, panels = _refine(f, a, b, kron, gauss, kron_abs, tainted, budget, 0, cfg)
    converged = err <= max(cfg.abs_tol, cfg.rel_tol * abs(value))
    return IntegralResult(sign * value, err, converged, panels)
