"""Quadrature and contour Laurent-coefficient extraction.

Three tools, each matched to an integrand class:

* :func:`integrate_adaptive` -- Gauss-Kronrod (7, 15) with bisection, for
  smooth integrands on a closed interval.
* :func:`integrate_tanh_sinh` -- double-exponential rule for integrable
  endpoint singularities.  The endpoints themselves are never evaluated.
* :func:`contour_laurent` -- trapezoid rule on a circle about the origin,
  spectrally accurate for integrands analytic in an annulus.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .errors import ConvergenceError, DomainError, NonFiniteError


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_depth: int = 30
    ts_max_level: int = 12

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_depth < 1:
            raise DomainError("max_depth must be >= 1")
        if self.ts_max_level < 3:
            raise DomainError("ts_max_level must be >= 3")


@dataclass(frozen=True)
class IntegrationResult:
    value: float
    error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class ContourConfig:
    radius: float = 0.5
    min_nodes: int = 64
    max_nodes: int = 1024
    stabilization_tol: float = 1e-12

    def __post_init__(self):
        if not 0 < self.radius <= 0.75:
            raise DomainError(f"contour radius must lie in (0, 0.75], got {self.radius!r}")
        for n in (self.min_nodes, self.max_nodes):
            if n < 4 or n & (n - 1):
                raise DomainError(f"node counts must be powers of two >= 4, got {n}")
        if self.max_nodes < self.min_nodes:
            raise DomainError("max_nodes must be >= min_nodes")
        if not self.stabilization_tol > 0:
            raise DomainError("stabilization_tol must be positive")


@dataclass(frozen=True)
class LaurentCoefficients:
    """Coefficients of s^-1, s^0 and s^1 in a Laurent expansion about 0."""

    c_m1: complex
    c0: complex
    c1: complex
    nodes: int = 0


DEFAULT_QUAD = QuadConfig()
DEFAULT_CONTOUR = ContourConfig()


# ---------------------------------------------------------------------------
# Gauss-Kronrod
# ---------------------------------------------------------------------------

# 15-point Kronrod abscissae (non-negative half) and weights; the 7-point Gauss
# rule uses the odd-indexed abscissae.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def _eval(f: Callable[[float], float], x: float) -> float:
    y = float(f(x))
    if not math.isfinite(y):
        raise NonFiniteError(f"integrand returned {y!r} at x={x!r}")
    return y


def _gk15(f, a: float, b: float) -> tuple[float, float]:
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = _eval(f, c)
    kron = _WGK[7] * fc
    gauss = _WG[3] * fc
    for j in range(7):
        dx = h * _XGK[j]
        s = _eval(f, c - dx) + _eval(f, c + dx)
        kron += _WGK[j] * s
        if j % 2 == 1:
            gauss += _WG[j // 2] * s
    return kron * h, abs((kron - gauss) * h)


def integrate_adaptive(
    f: Callable[[float], float], a: float, b: float, cfg: QuadConfig = DEFAULT_QUAD
) -> IntegrationResult:
    """Adaptive G7-K15 quadrature of ``f`` over [a, b].

    An interval is accepted once its |K15 - G7| estimate is below its
    length-proportional share of max(abs_tol, rel_tol * |I|).
    """
    if not a < b:
        raise DomainError(f"integration needs a < b, got [{a!r}, {b!r}]")
    whole, whole_err = _gk15(f, a, b)
    evaluations = 15
    target = max(cfg.abs_tol, cfg.rel_tol * abs(whole))
    if whole_err <= target:
        return IntegrationResult(whole, whole_err, evaluations)

    length = b - a
    stack = [(a, b, 0)]
    value_parts = []
    err_parts = []
    while stack:
        lo, hi, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        if depth >= cfg.max_depth or not lo < mid < hi:
            raise ConvergenceError(f"adaptive quadrature exhausted depth on [{lo!r}, {hi!r}]")
        for x0, x1 in ((lo, mid), (mid, hi)):
            v, e = _gk15(f, x0, x1)
            evaluations += 15
            if e <= target * (x1 - x0) / length:
                value_parts.append(v)
                err_parts.append(e)
            else:
                stack.append((x0, x1, depth + 1))
    return IntegrationResult(math.fsum(value_parts), math.fsum(err_parts), evaluations)


# ---------------------------------------------------------------------------
# tanh-sinh
# ---------------------------------------------------------------------------

_HALF_PI = 0.5 * math.pi
_TS_T_MAX = 6.5


def _ts_node(t: float) -> tuple[float, float] | None:
    """Distance-to-endpoint fraction and Jacobian factor at parameter t >= 0.

    Returns (delta, w) with x = b - d*delta (or a + d*delta) and the weight
    d*w; None once delta underflows.
    """
    v = _HALF_PI * math.sinh(t)
    e = math.exp(-2.0 * v)
    if e == 0.0:
        return None
    delta = 2.0 * e / (1.0 + e)
    w = _HALF_PI * math.cosh(t) * 4.0 * e / (1.0 + e) ** 2
    return delta, w


def integrate_tanh_sinh(
    f: Callable[[float], float], a: float, b: float, cfg: QuadConfig = DEFAULT_QUAD
) -> IntegrationResult:
    """Double-exponential quadrature over (a, b).

    The step is halved level by level until two successive sums differ by
    less than max(abs_tol, rel_tol * |I|) at level >= 3.  Nodes that round
    onto an endpoint are dropped, so ``f`` is never called at a or b.
    """
    if not a < b:
        raise DomainError(f"integration needs a < b, got [{a!r}, {b!r}]")
    d = 0.5 * (b - a)
    c = 0.5 * (a + b)
    evaluations = 0

    def contribution(k_values, h):
        nonlocal evaluations
        parts = []
        for k in k_values:
            t = k * h
            if t > _TS_T_MAX:
                break
            node = _ts_node(t)
            if node is None:
                break
            delta, w = node
            if t == 0.0:
                parts.append(w * _eval(f, c))
                evaluations += 1
                continue
            off = d * delta
            for x in (b - off, a + off):
                if a < x < b:
                    parts.append(w * _eval(f, x))
                    evaluations += 1
        return math.fsum(parts)

    h = 1.0
    n_max = int(_TS_T_MAX / h) + 1
    total = contribution(range(0, n_max + 1), h)
    estimate = d * h * total
    prev = estimate
    for level in range(1, cfg.ts_max_level + 1):
        h *= 0.5
        n_max = int(_TS_T_MAX / h) + 1
        total += contribution(range(1, n_max + 1, 2), h)
        estimate = d * h * total
        diff = abs(estimate - prev)
        if level >= 3 and diff <= max(cfg.abs_tol, cfg.rel_tol * abs(estimate)):
            return IntegrationResult(estimate, diff, evaluations)
        prev = estimate
    raise ConvergenceError(
        f"tanh-sinh did not converge by level {cfg.ts_max_level} (last change {diff:.3g})"
    )


# ---------------------------------------------------------------------------
# Contour Laurent extraction
# ---------------------------------------------------------------------------


def contour_laurent(
    g: Callable[[complex], complex],
    pole_order_sought: int = 1,
    cfg: ContourConfig = DEFAULT_CONTOUR,
) -> LaurentCoefficients:
    """c_m = (1/2 pi i) \\oint g(s) s^(-m-1) ds on |s| = radius for m = -1, 0, 1.

    ``g`` must be analytic on 0 < |s| <= radius apart from a pole at 0 of
    order at most ``pole_order_sought`` (<= 3).  The node count doubles from
    ``min_nodes`` until all three coefficients move by less than
    ``stabilization_tol`` (scaled by max(1, |c|)).
    """
    if not 0 <= pole_order_sought <= 3:
        raise DomainError(f"pole order must be in 0..3, got {pole_order_sought}")
    r = cfg.radius
    samples: dict[int, complex] = {}

    def coefficients(n: int) -> tuple[complex, complex, complex]:
        # node j of an n-point rule equals node j * (max_nodes // n) of the finest rule
        stride = cfg.max_nodes // n
        acc = [0j, 0j, 0j]
        for j in range(n):
            key = j * stride
            val = samples.get(key)
            if val is None:
                s = r * cmath.exp(2j * math.pi * key / cfg.max_nodes)
                val = complex(g(s))
                if not (math.isfinite(val.real) and math.isfinite(val.imag)):
                    raise NonFiniteError(f"contour integrand returned {val!r} at s={s!r}")
                samples[key] = val
            u = cmath.exp(2j * math.pi * key / cfg.max_nodes)
            # g(s) s^-m with s = r u, m = -1, 0, 1
            acc[0] += val * (r * u)
            acc[1] += val
            acc[2] += val / (r * u)
        return acc[0] / n, acc[1] / n, acc[2] / n

    n = cfg.min_nodes
    prev = coefficients(n)
    while n < cfg.max_nodes:
        n *= 2
        cur = coefficients(n)
        if all(abs(x - y) <= cfg.stabilization_tol * max(1.0, abs(y)) for x, y in zip(prev, cur)):
            return LaurentCoefficients(*cur, nodes=n)
        prev = cur
    raise ConvergenceError(f"contour coefficients did not stabilise with {cfg.max_nodes} nodes")
