"""q-analogues: q-numbers, the q-gamma function for q > 1, the constant C_q,
the q-Hurwitz zeta function and Jacobi's theta_4.

The q-gamma function follows the q > 1 convention

    Gamma_q(z) = (q-1)^(1-z) q^(z(z-1)/2) (1/q; 1/q)_inf / (q^-z; 1/q)_inf,

which satisfies Gamma_q(z+1) = [z]_q Gamma_q(z) and Gamma_q(1) = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConvergenceError, DomainError
from .quadrature import DEFAULT_CONTOUR, ContourConfig, LaurentCoefficients, contour_laurent
from .series_core import DEFAULT_POLICY, TruncationPolicy, log_q_pochhammer_exp

__all__ = [
    "QBase",
    "NomeP",
    "LaurentCoefficients",
    "q_number",
    "log_q_gamma",
    "c_q",
    "zeta_q",
    "zeta_q_laurent",
    "zeta_regularized_product_q",
    "theta4",
    "theta4_imag",
    "theta_zero_cancellation",
]


@dataclass(frozen=True)
class QBase:
    """Base q > 1 of the gamma side."""

    q: float
    log_q: float = field(init=False, repr=False)

    def __post_init__(self):
        q = float(self.q)
        if not (q > 1 and math.isfinite(q)):
            raise DomainError(f"q must be a finite number > 1, got {self.q!r}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "log_q", math.log(q))

    def nome(self) -> "NomeP":
        return NomeP(1.0 / self.q)


@dataclass(frozen=True)
class NomeP:
    """Theta nome 0 < p < 1.  ``L`` is the distance from 0 to the first zero
    of t -> theta_4(i t, p)."""

    p: float
    L: float = field(init=False, repr=False)

    def __post_init__(self):
        p = float(self.p)
        if not 0 < p < 1:
            raise DomainError(f"nome must satisfy 0 < p < 1, got {self.p!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "L", abs(math.log(p)) / 2.0)

    @classmethod
    def from_base(cls, base: QBase) -> "NomeP":
        return cls(1.0 / base.q)


def _base(base: QBase | float) -> QBase:
    return base if isinstance(base, QBase) else QBase(base)


def _nome(nome: NomeP | float) -> NomeP:
    return nome if isinstance(nome, NomeP) else NomeP(nome)


def q_number(x: float, base: QBase | float) -> float:
    """[x]_q = (q^x - 1)/(q - 1)."""
    b = _base(base)
    return math.expm1(x * b.log_q) / (b.q - 1.0)


# ---------------------------------------------------------------------------
# q-gamma and C_q
# ---------------------------------------------------------------------------


def log_q_gamma(z: float, base: QBase | float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """log Gamma_q(z) for z > 0 and q > 1."""
    b = _base(base)
    if not z > 0:
        raise DomainError(f"log_q_gamma needs z > 0, got {z!r}")
    lq = b.log_q
    return math.fsum(
        [
            (1.0 - z) * math.log(b.q - 1.0),
            0.5 * z * (z - 1.0) * lq,
            log_q_pochhammer_exp(lq, lq, policy),
            -log_q_pochhammer_exp(z * lq, lq, policy),
        ]
    )


def c_q(base: QBase | float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """log C_q = -log(q)/12 + (1/2 - log(q-1)/(2 log q)) log(q-1) + log (1/q; 1/q)_inf."""
    b = _base(base)
    lq = b.log_q
    lqm1 = math.log(b.q - 1.0)
    return math.fsum(
        [-lq / 12.0, (0.5 - lqm1 / (2.0 * lq)) * lqm1, log_q_pochhammer_exp(lq, lq, policy)]
    )


# ---------------------------------------------------------------------------
# q-Hurwitz zeta
# ---------------------------------------------------------------------------

DISK_RADIUS = 0.75


def _zeta_q_direct(s: complex, x: float, b: QBase, policy: TruncationPolicy) -> complex:
    # [n+x+1]_q / [n+x]_q >= q, so |term| shrinks at least by q^-Re(s) per step
    rho = math.exp(-s.real * b.log_q)
    log_qm1 = math.log(b.q - 1.0)
    total = 0j
    terms = []
    for n in range(policy.max_terms):
        log_qn = math.log(math.expm1((n + x) * b.log_q)) - log_qm1
        term = cmath.exp(-s * log_qn)
        terms.append(term)
        total += term
        if abs(term) * rho / (1.0 - rho) <= policy.term_eps * (1.0 + abs(total)):
            return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    raise ConvergenceError(f"direct zeta_q sum at s={s!r} not certified within {policy.max_terms} terms")


def _zeta_q_continued(s: complex, x: float, b: QBase, policy: TruncationPolicy) -> complex:
    # zeta_q(s, x) = (q-1)^s sum_k (s)_k/k! q^(-x(s+k)) / (1 - q^-(s+k))
    lq = b.log_q
    decay = math.exp(-x * lq)
    abs_s = abs(s)
    coef = 1.0 + 0j
    terms = []
    total = 0j
    for k in range(policy.max_terms):
        if k:
            coef *= (s + k - 1) / k
        w = cmath.exp(-(s + k) * lq)
        denom = 1.0 - w
        if abs(denom) < 1e-14:
            raise DomainError(f"zeta_q has a pole at s={s!r} (lattice point s = -{k} + 2 pi i m / log q)")
        term = coef * cmath.exp(-x * (s + k) * lq) / denom
        terms.append(term)
        total += term
        re_shift = s.real + k
        if k > abs_s and re_shift > 0:
            rho = decay * max(1.0, (abs_s + k) / (k + 1))
            if rho < 1.0:
                majorant = abs(coef) * math.exp(-x * re_shift * lq) / -math.expm1(-re_shift * lq)
                if majorant * rho / (1.0 - rho) <= policy.term_eps * (1.0 + abs(total)):
                    summed = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
                    return cmath.exp(s * math.log(b.q - 1.0)) * summed
    raise ConvergenceError(f"continued zeta_q at s={s!r} not certified within {policy.max_terms} terms")


def zeta_q(
    s: complex,
    x: float,
    base: QBase | float,
    policy: TruncationPolicy = DEFAULT_POLICY,
    method: str = "auto",
) -> complex:
    """q-Hurwitz zeta sum_{n>=0} [n+x]_q^(-s), continued to a disk about s = 0.

    ``method`` is ``"direct"`` (Re s >= 1), ``"continued"`` (binomial
    k-series, usable on 0 < |s| <= 0.75 and also for Re s >= 1) or
    ``"auto"``, which picks direct for Re s >= 1 and continued otherwise.
    """
    b = _base(base)
    s = complex(s)
    if not x > 0:
        raise DomainError(f"zeta_q needs x > 0, got {x!r}")
    if s == 0:
        raise DomainError("zeta_q has a simple pole at s = 0")
    if method == "auto":
        if s.real >= 1:
            method = "direct"
        elif abs(s) <= DISK_RADIUS * (1.0 + 1e-12):
            method = "continued"
        else:
            raise DomainError(f"s={s!r} lies outside both evaluation regimes (|s| <= 0.75 or Re s >= 1)")
    if method == "direct":
        if s.real < 1:
            raise DomainError(f"direct zeta_q sum needs Re s >= 1, got s={s!r}")
        return _zeta_q_direct(s, x, b, policy)
    if method == "continued":
        return _zeta_q_continued(s, x, b, policy)
    raise ValueError(f"unknown method {method!r}")


def zeta_q_laurent(
    x: float,
    base: QBase | float,
    cfg: ContourConfig = DEFAULT_CONTOUR,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> LaurentCoefficients:
    """Laurent coefficients c_-1, c_0, c_1 of zeta_q(s, x) about s = 0."""
    b = _base(base)
    # nearest singularities besides s = 0: s = -1 and s = +-2 pi i / log q
    if cfg.radius >= 2.0 * math.pi / b.log_q:
        raise DomainError(f"contour radius {cfg.radius} reaches a singularity of zeta_q for q={b.q}")
    return contour_laurent(lambda s: _zeta_q_continued(s, x, b, policy), 1, cfg)


def zeta_regularized_product_q(
    x: float,
    base: QBase | float,
    cfg: ContourConfig = DEFAULT_CONTOUR,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> float:
    """log of the regularized product of ([n+x]_q)_{n>=0}: -Res_{s=0} zeta_q(s,x)/s^2."""
    if not x > 0:
        raise DomainError(f"needs x > 0, got {x!r}")
    c1 = zeta_q_laurent(x, base, cfg, policy).c1
    if abs(c1.imag) > 1e-9:
        raise ConvergenceError(f"extracted c_1 has imaginary part {c1.imag:.3g}")
    return -c1.real


# ---------------------------------------------------------------------------
# theta_4
# ---------------------------------------------------------------------------


def _gaussian_tail(log_p: float, lin: float, n: int, quad_shift: int = 0) -> float:
    """Bound on sum_{m>n} exp((m^2 - quad_shift m) log p + lin m) for a geometric
    ratio that decreases in m; inf if not yet geometric."""
    m = n + 1
    rho = math.exp((2 * m + 1 - quad_shift) * log_p + lin)
    if rho >= 1.0:
        return math.inf
    return math.exp((m * m - quad_shift * m) * log_p + lin * m) / (1.0 - rho)


def theta4(w: complex, nome: NomeP | float, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """theta_4(w, p) = 1 + 2 sum_{n>=1} (-1)^n p^(n^2) cos(2 n w).

    Accuracy is contractual for |Im w| <= L + 1.
    """
    nm = _nome(nome)
    w = complex(w)
    y = abs(w.imag)
    if y > nm.L + 1.0:
        raise ConvergenceError(f"|Im w| = {y:.6g} exceeds the window L + 1 = {nm.L + 1:.6g}")
    log_p = math.log(nm.p)
    terms = [1.0 + 0j]
    for n in range(1, policy.max_terms + 1):
        sign = -2.0 if n % 2 else 2.0
        terms.append(sign * math.exp(n * n * log_p) * cmath.cos(2 * n * w))
        if 2.0 * _gaussian_tail(log_p, 2.0 * y, n) <= policy.term_eps:
            return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    raise ConvergenceError(f"theta_4 series not certified within {policy.max_terms} terms")


def theta4_imag(t: float, nome: NomeP | float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """theta_4(i t, p) for |t| <= L, as a real number.

    Near the zeros +-L the series is regrouped by pairing n with 1 - n:

        theta_4(i t, p) = 2 e^u sum_{n>=1} (-1)^n p^(n(n-1)) sinh((2n-1) u),  u = |t| - L,

    which keeps full relative accuracy as t -> +-L and vanishes exactly there.
    """
    nm = _nome(nome)
    t = float(t)
    L = nm.L
    a = abs(t)
    if a > L * (1.0 + 1e-12):
        raise ConvergenceError(f"|t| = {a!r} lies outside [-L, L] with L = {L!r}")
    a = min(a, L)
    log_p = math.log(nm.p)
    if a <= 0.5 * L:
        terms = [1.0]
        for n in range(1, policy.max_terms + 1):
            sign = -2.0 if n % 2 else 2.0
            terms.append(sign * math.exp(n * n * log_p) * math.cosh(2 * n * a))
            if 2.0 * _gaussian_tail(log_p, 2.0 * a, n) <= policy.term_eps:
                return math.fsum(terms)
    else:
        u = a - L
        terms = []
        for n in range(1, policy.max_terms + 1):
            sign = -1.0 if n % 2 else 1.0
            terms.append(sign * math.exp(n * (n - 1) * log_p) * math.sinh((2 * n - 1) * u))
            if 2.0 * _gaussian_tail(log_p, 2.0 * abs(u), n, quad_shift=1) <= policy.term_eps:
                return 2.0 * math.exp(u) * math.fsum(terms)
    raise ConvergenceError(f"theta_4 series not certified within {policy.max_terms} terms")


def theta_zero_cancellation(nome: NomeP | Fraction | float | str, N: int) -> Fraction:
    """Exact partial sum of theta_4 at its zero, sum_{n=-N}^{N+1} (-1)^n p^(n^2 - n).

    Terms n and 1 - n carry equal powers and opposite signs, so the result
    is exactly zero for every N.
    """
    if isinstance(nome, NomeP):
        p = Fraction(nome.p)
    else:
        p = Fraction(nome)
    if not 0 < p < 1:
        raise DomainError(f"nome must satisfy 0 < p < 1, got {p}")
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    total = Fraction(0)
    for n in range(-N, N + 2):
        term = p ** (n * n - n)
        total += -term if n % 2 else term
    return total
