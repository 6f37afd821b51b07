"""Classical special functions used by the q-Raabe and theta identities."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import ConvergenceError, DomainError
from .quadrature import DEFAULT_CONTOUR, ContourConfig, contour_laurent
from .series_core import DEFAULT_POLICY, TruncationPolicy

ZETA2 = math.pi**2 / 6.0
EULER_GAMMA = 0.5772156649015329


# ---------------------------------------------------------------------------
# Dilogarithm
# ---------------------------------------------------------------------------


def _dilog_series(z: float, policy: TruncationPolicy) -> float:
    # |z| <= 1/2: tail after n terms is below |z|^(n+1) / ((n+1)^2 (1 - |z|))
    az = abs(z)
    terms = []
    zn = 1.0
    for n in range(1, policy.max_terms + 1):
        zn *= z
        terms.append(zn / (n * n))
        if az ** (n + 1) / ((n + 1) ** 2 * (1.0 - az)) <= policy.term_eps:
            return math.fsum(terms)
    raise ConvergenceError(f"dilogarithm series at z={z!r} did not converge")


def dilog(z: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Real dilogarithm Li2(z) for z <= 1.

    Direct series on |z| <= 1/2, Euler reflection on (1/2, 1], Landen's
    identity Li2(z) = -Li2(z/(z-1)) - log(1-z)^2/2 for z < -1/2.
    """
    z = float(z)
    if z > 1.0 or math.isnan(z):
        raise DomainError(f"real dilogarithm needs z <= 1, got {z!r}")
    if z == 1.0:
        return ZETA2
    if z == 0.0:
        return 0.0
    if abs(z) <= 0.5:
        return _dilog_series(z, policy)
    if z > 0.5:
        return ZETA2 - math.log(z) * math.log1p(-z) - _dilog_series(1.0 - z, policy)
    w = z / (z - 1.0)
    return -dilog(w, policy) - 0.5 * math.log1p(-z) ** 2


# ---------------------------------------------------------------------------
# 2F1(1, 1; c; z) and its c-derivatives at c = 1
# ---------------------------------------------------------------------------


def hyp2f1_11(c: complex, z: float, policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """2F1(1, 1; c; z) = sum_k k! / (c)_k z^k for Re(c) > 0 and |z| < 1.

    Successive terms have ratio (k+1) z / (c+k); the tail is bounded by a
    geometric series once that ratio is provably below one.
    """
    c = complex(c)
    if not c.real > 0:
        raise DomainError(f"2F1(1,1;c;z) needs Re(c) > 0, got c={c!r}")
    if not abs(z) < 1:
        raise DomainError(f"2F1(1,1;c;z) needs |z| < 1, got z={z!r}")
    az = abs(z)
    total = 1.0 + 0j
    term = 1.0 + 0j
    for k in range(policy.max_terms):
        term *= (k + 1) * z / (c + k)
        total += term
        # every later ratio (j+1)|z|/|c+j|, j > k, is at most rho
        kk = k + 1
        rho = az * max(1.0, (kk + 1) / (kk + c.real))
        if rho < 1.0 and abs(term) * rho / (1.0 - rho) <= policy.term_eps * (1.0 + abs(total)):
            return total
        if term == 0:
            return total
    raise ConvergenceError(f"2F1(1,1;{c!r};{z!r}) not certified within {policy.max_terms} terms")


def d_hyp2f1_dc(z: float) -> float:
    """d/dc 2F1(1, 1; c; z) at c = 1, i.e. log(1-z)/(1-z)."""
    if not abs(z) < 1:
        raise DomainError(f"needs |z| < 1, got {z!r}")
    return math.log1p(-z) / (1.0 - z)


def d2_hyp2f1_dc2(z: float) -> float:
    """d^2/dc^2 2F1(1, 1; c; z) at c = 1, i.e. (2 Li2(z) + log(1-z)^2)/(1-z)."""
    if not abs(z) < 1:
        raise DomainError(f"needs |z| < 1, got {z!r}")
    return (2.0 * dilog(z) + math.log1p(-z) ** 2) / (1.0 - z)


# ---------------------------------------------------------------------------
# Gamma family
# ---------------------------------------------------------------------------


def digamma_int(n: int) -> float:
    """psi(n) = H_{n-1} - gamma for integer n >= 1."""
    if n < 1:
        raise DomainError(f"digamma_int needs n >= 1, got {n}")
    return math.fsum([1.0 / k for k in range(1, n)] + [-EULER_GAMMA])


def trigamma_int(n: int) -> float:
    """psi'(n) = zeta(2) - H_{n-1,2} for integer n >= 1."""
    if n < 1:
        raise DomainError(f"trigamma_int needs n >= 1, got {n}")
    return math.fsum([ZETA2] + [-1.0 / (k * k) for k in range(1, n)])


def log_gamma(x: float) -> float:
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x!r}")
    return math.lgamma(x)


# ---------------------------------------------------------------------------
# Hurwitz zeta
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_even(m_max: int) -> tuple[Fraction, ...]:
    """(B_2, B_4, ..., B_{2 m_max}) from the standard recurrence."""
    B = [Fraction(1)]
    for n in range(1, 2 * m_max + 1):
        acc = Fraction(0)
        binom = 1
        for k in range(n):
            acc += binom * B[k]
            binom = binom * (n + 1 - k) // (k + 1)
        B.append(-acc / (n + 1))
    return tuple(B[2 * j] for j in range(1, m_max + 1))


_EM_TERMS = 15
_EM_COEFFS = tuple(
    float(b) / math.factorial(2 * j) for j, b in enumerate(_bernoulli_even(_EM_TERMS), start=1)
)


def hurwitz_zeta(s: complex, x: float) -> complex:
    """zeta(s, x) = sum_{n>=0} (n + x)^(-s) by Euler-Maclaurin summation.

    Valid for s != 1 and x > 0.  The head sum runs to N with
    N + x >= max(6, 3|s|/4); Bernoulli corrections are added while they keep
    shrinking.  Error (relative to max(1, |zeta|)) is ~1e-13 for |s| <= 10
    with Re(s) >= -4.  For more negative Re(s) the head sum cancels in
    double precision: ~1e-10 at Re(s) = -6, ~1e-6 at Re(s) = -10.
    """
    s = complex(s)
    if not x > 0:
        raise DomainError(f"Hurwitz zeta needs x > 0, got {x!r}")
    if s == 1:
        raise DomainError("Hurwitz zeta has a pole at s = 1")
    N = max(0, math.ceil(max(6.0, 0.75 * abs(s)) - x))
    parts = [(n + x) ** (-s) for n in range(N)]
    a = N + x
    a_pow = a ** (-s)
    parts.append(a ** (1 - s) / (s - 1))
    parts.append(0.5 * a_pow)
    # j-th correction: B_2j/(2j)! * (s)_(2j-1) * a^(-s-2j+1)
    poch = s
    a_inv2 = 1.0 / (a * a)
    power = a_pow / a
    last = math.inf
    for j, coeff in enumerate(_EM_COEFFS, start=1):
        term = coeff * poch * power
        if abs(term) > last:
            break
        parts.append(term)
        last = abs(term)
        if last == 0.0:
            break
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        power *= a_inv2
    return complex(math.fsum(p.real for p in parts), math.fsum(p.imag for p in parts))


def hurwitz_zeta_s_derivative_at_0(x: float, cfg: ContourConfig = DEFAULT_CONTOUR) -> float:
    """d/ds zeta(s, x) at s = 0, read off a contour Taylor coefficient."""
    if not x > 0:
        raise DomainError(f"Hurwitz zeta needs x > 0, got {x!r}")
    coeffs = contour_laurent(lambda s: hurwitz_zeta(s, x), 0, cfg)
    return coeffs.c1.real
