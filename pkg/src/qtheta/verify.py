"""Identity harness.

Each ``check_*`` function evaluates both sides of one identity through
independent routes (quadrature against a closed form, a contour integral
against a product, a sum against a product) and returns a
:class:`~qtheta.reports.CheckReport`.  :func:`run_all` sweeps every check
over its default parameter grid.
"""

from __future__ import annotations

import cmath
import dataclasses
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping

from . import qspecial as qs
from . import series_core as sc
from . import special_functions as sf
from .errors import DomainError
from .quadrature import QuadConfig, contour_laurent, integrate_adaptive, integrate_tanh_sinh
from .reports import CheckReport

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

DEFAULT_TOLERANCES: dict[str, float] = {
    "classical_raabe": 1e-9,
    "genfunc": 0.0,
    "inner_antiderivative": 1e-9,
    "lerch": 1e-8,
    "main_theta": 1e-6,
    "main_theta_routes": 1e-12,
    "nk": 1e-7,
    "partition": 0.0,
    "raabe_q": 1e-7,
    "raabe_q_special": 1e-7,
    "residue_formula": 1e-9,
    "t_limit": 1e-3,
    "theorem2": 1e-8,
    "theta_gamma_link": 1e-9,
    "theta_zero": 0.0,
    "triple_product": 1e-10,
    "zeta_q_residue": 1e-8,
}

# quadrature budget well inside the tightest quadrature-based tolerance
CHECK_QUAD = QuadConfig(abs_tol=1e-11, rel_tol=1e-11)
# the two halves of the theta integral must agree to this
THETA_HALVES_TOL = 1e-9
T_LIMIT_STEPS = (1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class Tolerances:
    """Per-check tolerances.  ``global_tol`` (if set) overrides every entry."""

    overrides: Mapping[str, float] = field(default_factory=dict)
    global_tol: float | None = None

    def __post_init__(self):
        unknown = set(self.overrides) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise DomainError(f"unknown check ids in tolerance overrides: {sorted(unknown)}")
        for v in list(self.overrides.values()) + ([self.global_tol] if self.global_tol is not None else []):
            if not v > 0:
                raise DomainError(f"tolerance overrides must be positive, got {v!r}")

    def get(self, check_id: str) -> float:
        if self.global_tol is not None:
            return self.global_tol
        return self.overrides.get(check_id, DEFAULT_TOLERANCES[check_id])

    def as_dict(self) -> dict[str, float]:
        return {k: self.get(k) for k in sorted(DEFAULT_TOLERANCES)}


def _tol(check_id: str, tol: float | None) -> float:
    return DEFAULT_TOLERANCES[check_id] if tol is None else tol


def _need_q(q: float) -> qs.QBase:
    if not q > 1:
        raise DomainError(f"q must exceed 1, got {q!r}")
    return qs.QBase(q)


def _need_t(t: float, strict: bool = True) -> None:
    if t < 0 or (strict and t == 0) or math.isnan(t):
        raise DomainError(f"t must be {'> 0' if strict else '>= 0'}, got {t!r}")


# ---------------------------------------------------------------------------
# Raabe-type integrals
# ---------------------------------------------------------------------------


def check_classical_raabe(t: float, tol: float | None = None) -> CheckReport:
    _need_t(t, strict=False)
    integrand = lambda x: sf.log_gamma(x + t)
    if t == 0:
        # log Gamma(x) ~ -log x at the left end
        res = integrate_tanh_sinh(integrand, 0.0, 1.0, CHECK_QUAD)
    else:
        res = integrate_adaptive(integrand, 0.0, 1.0, CHECK_QUAD)
    rhs = LOG_SQRT_2PI + (t * math.log(t) - t if t > 0 else 0.0)
    return CheckReport.compare(
        "classical_raabe", {"t": t}, res.value, rhs, _tol("classical_raabe", tol),
        notes=f"{'tanh-sinh' if t == 0 else 'Gauss-Kronrod'} with {res.evaluations} evaluations",
    )


def raabe_q_bracket(q: float, t: float) -> float:
    """The t > 0 closed form (without log C_q), written exactly as derived:

    -1/(2 q^t log q) [ (1-q^t)/(1-q^-t) (2 Li2(q^-t) + log^2(1-q^-t))
                       + 2 (1-q^t)/(1-q^-t) log((1-q)/(1-q^t)) log(1-q^-t)
                       - q^t log^2((1-q)/(1-q^t)) ]
    """
    lq = math.log(q)
    qt = math.exp(t * lq)
    u = math.exp(-t * lq)
    one_minus_qt = -math.expm1(t * lq)
    one_minus_u = -math.expm1(-t * lq)
    ratio = one_minus_qt / one_minus_u
    log_1mu = math.log(one_minus_u)
    a = math.log((1.0 - q) / one_minus_qt)
    bracket = (
        ratio * (2.0 * sf.dilog(u) + log_1mu**2)
        + 2.0 * ratio * a * log_1mu
        - qt * a * a
    )
    return -bracket / (2.0 * qt * lq)


def raabe_q_limit(q: float) -> float:
    """t -> 0 limit of :func:`raabe_q_bracket`: (2 zeta(2) + log^2(q-1)) / (2 log q)."""
    return (2.0 * sf.ZETA2 + math.log(q - 1.0) ** 2) / (2.0 * math.log(q))


def _theorem2_factor(s: complex, q: float, t: float) -> complex:
    """(q-1)^s (q^t-1)^(1-s) 2F1(1,1;s+1;q^-t) / (q^t log q)."""
    lq = math.log(q)
    qt = math.exp(t * lq)
    return (
        cmath.exp(s * math.log(q - 1.0) + (1.0 - s) * math.log(qt - 1.0))
        * sf.hyp2f1_11(s + 1.0, 1.0 / qt)
        / (qt * lq)
    )


def _residue_route(q: float, t: float) -> float:
    coeffs = contour_laurent(lambda s: _theorem2_factor(s, q, t) / s**3, 3)
    return coeffs.c_m1.real


def check_raabe_q(q: float, t: float, tol: float | None = None) -> CheckReport:
    base = _need_q(q)
    _need_t(t)
    tol = _tol("raabe_q", tol)
    res = integrate_adaptive(lambda x: qs.log_q_gamma(x + t, base), 0.0, 1.0, CHECK_QUAD)
    rhs = qs.c_q(base) + raabe_q_bracket(q, t)
    rep = CheckReport.compare("raabe_q", {"q": q, "t": t}, res.value, rhs, tol)
    if rep.passed:
        return rep
    alt = qs.c_q(base) + _residue_route(q, t)
    agree = abs(alt - res.value) <= tol
    note = (
        "closed-form bracket disagrees with quadrature; the contour residue route "
        + ("agrees with quadrature" if agree else f"is also off ({alt!r})")
    )
    return dataclasses.replace(rep, notes=note)


def check_raabe_q_special(q: float, tol: float | None = None) -> CheckReport:
    base = _need_q(q)
    # log Gamma_q(x) ~ -log x as x -> 0+
    res = integrate_tanh_sinh(lambda x: qs.log_q_gamma(x, base), 0.0, 1.0, CHECK_QUAD)
    rhs = math.fsum(
        [
            sf.ZETA2 / base.log_q,
            0.5 * (math.log(q - 1.0) - base.log_q / 6.0),
            sc.log_q_pochhammer_inf(1.0 / q, 1.0 / q),
        ]
    )
    return CheckReport.compare(
        "raabe_q_special", {"q": q}, res.value, rhs, _tol("raabe_q_special", tol),
        notes=f"tanh-sinh with {res.evaluations} evaluations",
    )


def check_t_limit(q: float, tol: float | None = None) -> CheckReport:
    """Approach of the t > 0 closed form to its t -> 0 limit.

    Passes when the value at the smallest t is within ``tol`` of the limit
    (absolute or relative, as for every report) and the deviations shrink
    monotonically along the t sequence.
    """
    _need_q(q)
    tol = _tol("t_limit", tol)
    limit = raabe_q_limit(q)
    values = [raabe_q_bracket(q, t) for t in T_LIMIT_STEPS]
    errs = [abs(v - limit) for v in values]
    monotone = all(e1 > e2 for e1, e2 in zip(errs, errs[1:]))
    # first-order behaviour is t (log(t log q) - 1 - log(q-1)); removing it
    # gives a Richardson-style estimate of the limit
    t_last = T_LIMIT_STEPS[-1]
    corrected = values[-1] - t_last * (math.log(t_last * math.log(q)) - 1.0 - math.log(q - 1.0))
    notes = (
        "deviations " + ", ".join(f"t={t:g}: {e:.3e}" for t, e in zip(T_LIMIT_STEPS, errs))
        + f"; monotone={monotone}; leading-term-corrected deviation {abs(corrected - limit):.3e}"
    )
    rep = CheckReport.compare("t_limit", {"q": q}, values[-1], limit, tol, notes=notes)
    if not monotone:
        rep = dataclasses.replace(rep, passed=False)
    return rep


# ---------------------------------------------------------------------------
# Integrated q-Hurwitz zeta and its ingredients
# ---------------------------------------------------------------------------


def _need_s(s: float) -> None:
    if not s >= 1.25:
        raise DomainError(f"s must be >= 1.25 for the direct-sum regime, got {s!r}")


def check_theorem2(q: float, t: float, s: float, tol: float | None = None) -> CheckReport:
    base = _need_q(q)
    _need_t(t)
    _need_s(s)
    res = integrate_adaptive(
        lambda x: qs.zeta_q(s, x + t, base, method="direct").real, 0.0, 1.0, CHECK_QUAD
    )
    rhs = (_theorem2_factor(complex(s), q, t) / s).real
    return CheckReport.compare("theorem2", {"q": q, "s": s, "t": t}, res.value, rhs, _tol("theorem2", tol))


def check_inner_antiderivative(q: float, t: float, s: float, n: int, tol: float | None = None) -> CheckReport:
    _need_q(q)
    _need_t(t)
    _need_s(s)
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a natural number, got {n!r}")
    n = int(n)
    lq = math.log(q)
    res = integrate_adaptive(
        lambda x: math.expm1((n + x + t) * lq) ** (-s), 0.0, 1.0, CHECK_QUAD
    )

    def piece(y: float) -> float:
        qy = math.exp(y * lq)
        return math.expm1(y * lq) ** (1.0 - s) / qy * sf.hyp2f1_11(s + 1.0, 1.0 / qy).real

    rhs = (piece(n + t) - piece(n + t + 1.0)) / (s * lq)
    return CheckReport.compare(
        "inner_antiderivative", {"n": n, "q": q, "s": s, "t": t}, res.value, rhs,
        _tol("inner_antiderivative", tol),
    )


def check_residue_formula(q: float, t: float, tol: float | None = None) -> CheckReport:
    _need_q(q)
    _need_t(t)
    lhs = _residue_route(q, t)
    lq = math.log(q)
    qt = math.exp(t * lq)
    u = 1.0 / qt
    a = math.log((q - 1.0) / math.expm1(t * lq))
    one_minus_qt = -math.expm1(t * lq)
    bracket = (
        one_minus_qt * sf.d2_hyp2f1_dc2(u)
        + 2.0 * one_minus_qt * a * sf.d_hyp2f1_dc(u)
        - qt * a * a
    )
    rhs = -bracket / (2.0 * qt * lq)
    return CheckReport.compare("residue_formula", {"q": q, "t": t}, lhs, rhs, _tol("residue_formula", tol))


# ---------------------------------------------------------------------------
# Regularized products
# ---------------------------------------------------------------------------


def check_lerch(x: float, tol: float | None = None) -> CheckReport:
    if not x > 0:
        raise DomainError(f"x must be positive, got {x!r}")
    lhs = -sf.hurwitz_zeta_s_derivative_at_0(x)
    rhs = LOG_SQRT_2PI - sf.log_gamma(x)
    return CheckReport.compare("lerch", {"x": x}, lhs, rhs, _tol("lerch", tol), notes="log domain")


def check_nk(x: float, q: float, tol: float | None = None) -> CheckReport:
    base = _need_q(q)
    if not x > 0:
        raise DomainError(f"x must be positive, got {x!r}")
    lhs = qs.zeta_regularized_product_q(x, base)
    rhs = qs.c_q(base) - qs.log_q_gamma(x, base)
    return CheckReport.compare("nk", {"q": q, "x": x}, lhs, rhs, _tol("nk", tol), notes="log domain")


def check_zeta_q_residue(q: float, x: float, tol: float | None = None) -> CheckReport:
    base = _need_q(q)
    if not x > 0:
        raise DomainError(f"x must be positive, got {x!r}")
    coeffs = qs.zeta_q_laurent(x, base)
    return CheckReport.compare(
        "zeta_q_residue", {"q": q, "x": x}, coeffs.c_m1.real, 1.0 / base.log_q, _tol("zeta_q_residue", tol),
        notes=f"{coeffs.nodes} contour nodes",
    )


# ---------------------------------------------------------------------------
# Theta function identities
# ---------------------------------------------------------------------------


def _need_p(p: float) -> qs.NomeP:
    if not 0 < p < 1:
        raise DomainError(f"p must lie in (0, 1), got {p!r}")
    return qs.NomeP(p)


def check_triple_product(y: float, p: float, tol: float | None = None) -> CheckReport:
    nome = _need_p(p)
    if not y > 0:
        raise DomainError(f"y must be positive, got {y!r}")
    p2 = p * p
    lhs = sc.q_pochhammer_inf(p2, p2) * sc.q_pochhammer_inf(p * y, p2) * sc.q_pochhammer_inf(p / y, p2)
    # sum (-1)^n p^(n^2) y^n is theta_4(w) with e^(2 i w) = y
    rhs = qs.theta4(complex(0.0, -0.5 * math.log(y)), nome).real
    return CheckReport.compare("triple_product", {"p": p, "y": y}, lhs, rhs, _tol("triple_product", tol))


def check_theta_gamma_link(x: float, q: float, tol: float | None = None) -> CheckReport:
    base = _need_q(q)
    if not 0 < x < 1:
        raise DomainError(f"x must lie in (0, 1), got {x!r}")
    base2 = qs.QBase(q * q)
    lhs = -qs.log_q_gamma(x, base2) - qs.log_q_gamma(1.0 - x, base2)
    lq = base.log_q
    q_2 = 1.0 / (q * q)
    rhs = math.fsum(
        [
            2.0 * x * (1.0 - x) * lq,
            -3.0 * sc.log_q_pochhammer_inf(q_2, q_2),
            -math.log(q * q - 1.0),
            math.log(qs.theta4_imag(-(1.0 - 2.0 * x) * lq / 2.0, base.nome())),
        ]
    )
    return CheckReport.compare(
        "theta_gamma_link", {"q": q, "x": x}, lhs, rhs, _tol("theta_gamma_link", tol), notes="log domain"
    )


def main_theta_rhs(p: float) -> tuple[float, float]:
    """Closed-form value of the theta integral by the Euler product and by
    the partition series: -zeta(2) - log p log (p^2;p^2)_inf and
    -zeta(2) + log p log sum P(n) p^(2n)."""
    p2 = p * p
    log_p = math.log(p)
    via_product = -sf.ZETA2 - log_p * sc.log_q_pochhammer_inf(p2, p2)
    via_partitions = -sf.ZETA2 + log_p * math.log(sc.partition_gf(p2))
    return via_product, via_partitions


def check_main_theta(p: float, tol: float | None = None) -> CheckReport:
    """integral_{-L}^{L} log theta_4(i t, p) dt = -zeta(2) - log p log (p^2;p^2)_inf."""
    nome = _need_p(p)
    L = nome.L
    integrand = lambda t: math.log(qs.theta4_imag(t, nome))
    whole = integrate_tanh_sinh(integrand, -L, L, CHECK_QUAD)
    left = integrate_tanh_sinh(integrand, -L, 0.0, CHECK_QUAD)
    right = integrate_tanh_sinh(integrand, 0.0, L, CHECK_QUAD)
    halves_gap = abs(left.value - right.value)
    rhs, _ = main_theta_rhs(p)
    rep = CheckReport.compare(
        "main_theta", {"p": p}, whole.value, rhs, _tol("main_theta", tol),
        notes=f"tanh-sinh with {whole.evaluations} evaluations; |I[-L,0] - I[0,L]| = {halves_gap:.3e}",
    )
    if halves_gap > THETA_HALVES_TOL:
        rep = dataclasses.replace(rep, passed=False, notes=rep.notes + " exceeds symmetry tolerance")
    return rep


def check_main_theta_routes(p: float, tol: float | None = None) -> CheckReport:
    _need_p(p)
    via_product, via_partitions = main_theta_rhs(p)
    return CheckReport.compare(
        "main_theta_routes", {"p": p}, via_partitions, via_product, _tol("main_theta_routes", tol),
        notes="partition series against Euler product",
    )


def check_theta_zero(p: str | float | Fraction, N: int = 50, tol: float | None = None) -> CheckReport:
    # floats are read as the decimal they print as, so 0.3 means 3/10
    frac = Fraction(repr(p)) if isinstance(p, float) else Fraction(p)
    value = qs.theta_zero_cancellation(frac, N)
    return CheckReport.compare(
        "theta_zero", {"N": N, "p": str(frac)}, float(value), 0.0, _tol("theta_zero", tol),
        notes=f"exact partial sum over n in [-{N}, {N + 1}] = {value}",
    )


# ---------------------------------------------------------------------------
# Exact layer
# ---------------------------------------------------------------------------


def partitions_by_parts(n_max: int) -> list[int]:
    """P(0..n_max) by the coin-change recurrence over allowed part sizes."""
    counts = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for n in range(part, n_max + 1):
            counts[n] += counts[n - part]
    return counts


def check_genfunc(kind: str, N: int = 200, tol: float | None = None) -> CheckReport:
    rep = sc.genfunc_identity_check(kind, N)
    return dataclasses.replace(rep, tol=_tol("genfunc", tol), passed=rep.abs_err <= _tol("genfunc", tol))


def check_partition(n_max: int = 50, tol: float | None = None) -> CheckReport:
    table = sc.partition_numbers(n_max)
    oracle = partitions_by_parts(n_max)
    mismatches = sum(1 for a, b in zip(table.values, oracle) if a != b)
    return CheckReport.compare(
        "partition", {"n_max": n_max}, float(mismatches), 0.0, _tol("partition", tol),
        notes=f"pentagonal recurrence vs parts recurrence; P({n_max}) = {table[n_max]}",
    )


# ---------------------------------------------------------------------------
# Registry and runner
# ---------------------------------------------------------------------------


def _grid(**axes: Iterable[Any]) -> tuple[dict[str, Any], ...]:
    keys = sorted(axes)
    out: list[dict[str, Any]] = [{}]
    for k in keys:
        out = [dict(d, **{k: v}) for d in out for v in axes[k]]
    return tuple(out)


@dataclass(frozen=True)
class CheckSpec:
    func: Callable[..., CheckReport]
    grid: tuple[dict[str, Any], ...]


CHECKS: dict[str, CheckSpec] = {
    "classical_raabe": CheckSpec(check_classical_raabe, _grid(t=[0.0, 1.0, 2.0])),
    "genfunc": CheckSpec(check_genfunc, _grid(kind=[k.value for k in sc.GenFuncKind], N=[200])),
    "inner_antiderivative": CheckSpec(
        check_inner_antiderivative,
        tuple(
            dict(q=q, t=t, s=s, n=n)
            for (q, t, s) in ((1.5, 2.0, 3.0), (2.0, 1.0, 2.0), (3.0, 0.25, 1.5))
            for n in (0, 1, 3)
        ),
    ),
    "lerch": CheckSpec(check_lerch, _grid(x=[0.5, 1.0, 1.5, 2.0, 3.0])),
    "main_theta": CheckSpec(check_main_theta, _grid(p=[0.2, 0.5, 0.8])),
    "main_theta_routes": CheckSpec(check_main_theta_routes, _grid(p=[0.2, 0.5, 0.8])),
    "nk": CheckSpec(check_nk, _grid(x=[0.5, 1.0, 2.5], q=[1.5, 2.0, 5.0])),
    "partition": CheckSpec(check_partition, _grid(n_max=[50])),
    "raabe_q": CheckSpec(check_raabe_q, _grid(q=[1.5, 2.0, 5.0, 10.0], t=[0.25, 0.5, 1.0, 2.0])),
    "raabe_q_special": CheckSpec(check_raabe_q_special, _grid(q=[1.2, 1.5, 2.0, 5.0, 20.0])),
    "residue_formula": CheckSpec(check_residue_formula, _grid(q=[1.5, 2.0, 10.0], t=[0.5, 1.0, 2.0])),
    "t_limit": CheckSpec(check_t_limit, _grid(q=[1.5, 2.0, 3.0])),
    "theorem2": CheckSpec(check_theorem2, _grid(q=[1.5, 2.0, 5.0], t=[0.25, 1.0, 2.0], s=[1.5, 2.0, 3.0])),
    "theta_gamma_link": CheckSpec(check_theta_gamma_link, _grid(x=[0.1, 0.25, 0.5, 0.75, 0.9], q=[1.5, 2.0])),
    "theta_zero": CheckSpec(check_theta_zero, _grid(p=["1/2", "1/3"], N=[50])),
    "triple_product": CheckSpec(check_triple_product, _grid(y=[0.5, 1.0, 2.0], p=[0.3, 0.5])),
    "zeta_q_residue": CheckSpec(check_zeta_q_residue, _grid(q=[1.5, 2.0, 5.0], x=[0.5, 1.0, 2.0])),
}


def params_key(params: Mapping[str, Any]) -> str:
    return json.dumps(params, sort_keys=True, default=str)


def grid_for(check_id: str, overrides: Mapping[str, Any] | None = None) -> list[dict[str, Any]]:
    """Default grid of ``check_id`` with any overridden parameters pinned.

    Overrides for parameters the check does not take are ignored.
    """
    entry = CHECKS[check_id]
    points = []
    seen = set()
    for point in entry.grid:
        pt = dict(point)
        for k, v in (overrides or {}).items():
            if k in pt:
                pt[k] = v
        key = params_key(pt)
        if key not in seen:
            seen.add(key)
            points.append(pt)
    return points


def run_check(check_id: str, params: Mapping[str, Any], tol: float) -> CheckReport:
    """Run one check, turning any exception into a failed report."""
    try:
        rep = CHECKS[check_id].func(**params, tol=tol)
    except Exception as exc:  # noqa: BLE001 - reported, never raised
        return CheckReport.failure(check_id, dict(params), tol, f"{type(exc).__name__}: {exc}")
    return dataclasses.replace(rep, params=dict(params)) if rep.params != dict(params) else rep


def run_all(
    tol: Tolerances | None = None,
    names: Iterable[str] | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> list[CheckReport]:
    """Run the selected checks (all by default) over their grids.

    Reports come back sorted by check id, then canonical parameter JSON.
    """
    tol = tol or Tolerances()
    selected = sorted(CHECKS) if names is None else sorted(set(names))
    unknown = [n for n in selected if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks {unknown}; valid: {sorted(CHECKS)}")
    reports = []
    for check_id in selected:
        for params in grid_for(check_id, overrides):
            reports.append(run_check(check_id, params, tol.get(check_id)))
    reports.sort(key=lambda r: (r.check_id, params_key(r.params)))
    return reports
