"""Series and product primitives with certified truncation.

Every infinite product or series here stops only once an explicit bound on
the discarded tail falls below the requested tolerance.  The exact layer
(partition numbers, harmonic numbers, power-series coefficients) works in
Python integers and :class:`fractions.Fraction`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import ConvergenceError, DomainError
from .reports import CheckReport


@dataclass(frozen=True)
class TruncationPolicy:
    """Termination rule for infinite series and products.

    A computation stops as soon as a proven bound on its remaining tail is
    below ``term_eps``; hitting ``max_terms`` first raises ConvergenceError.
    """

    term_eps: float = 1e-16
    max_terms: int = 10000

    def __post_init__(self):
        if not (self.term_eps > 0 and math.isfinite(self.term_eps)):
            raise DomainError(f"term_eps must be positive, got {self.term_eps!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise DomainError(f"max_terms must be a positive integer, got {self.max_terms!r}")


DEFAULT_POLICY = TruncationPolicy()


# ---------------------------------------------------------------------------
# q-Pochhammer products
# ---------------------------------------------------------------------------


def _log_tail_bound(a_abs: float, q_abs: float, n: int) -> float:
    """Bound on sum_{k>=n} -log(1 - |a| |q|^k); inf when not yet applicable."""
    x = a_abs * q_abs**n
    if x >= 1.0:
        return math.inf
    if x == 0.0:
        return 0.0
    return x / ((1.0 - q_abs) * (1.0 - x))


def q_pochhammer_inf(a: float, q: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """(a; q)_inf = prod_{k>=0} (1 - a q^k) for |q| < 1.

    Relative truncation error is at most ``policy.term_eps``.
    """
    if not abs(q) < 1:
        raise DomainError(f"q-Pochhammer needs |q| < 1, got q={q!r}")
    a = float(a)
    q = float(q)
    a_abs, q_abs = abs(a), abs(q)
    # relative error exp(tail) - 1 <= eps  <=>  tail <= log1p(eps)
    tail_budget = math.log1p(policy.term_eps)
    prod = 1.0
    qk = 1.0
    for k in range(policy.max_terms):
        prod *= 1.0 - a * qk
        if prod == 0.0:
            return 0.0
        qk *= q
        if _log_tail_bound(a_abs, q_abs, k + 1) <= tail_budget:
            return prod
    raise ConvergenceError(
        f"(a;q)_inf with a={a!r}, q={q!r} not certified within {policy.max_terms} factors"
    )


def log_q_pochhammer_inf(a: float, q: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """log (a; q)_inf for 0 <= a < 1 and 0 < q < 1, summed in the log domain."""
    if not 0 <= a < 1:
        raise DomainError(f"log q-Pochhammer needs 0 <= a < 1, got a={a!r}")
    if not 0 < q < 1:
        raise DomainError(f"log q-Pochhammer needs 0 < q < 1, got q={q!r}")
    terms = []
    x = float(a)
    for k in range(policy.max_terms):
        terms.append(math.log1p(-x))
        x *= q
        if _log_tail_bound(a, q, k + 1) <= policy.term_eps:
            return math.fsum(terms)
    raise ConvergenceError(
        f"log (a;q)_inf with a={a!r}, q={q!r} not certified within {policy.max_terms} factors"
    )


def log_q_pochhammer_exp(alpha: float, beta: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """log (e^-alpha; e^-beta)_inf = sum_k log(1 - e^{-(alpha + k beta)}).

    Taking exponents instead of the base keeps full relative accuracy in the
    first factor when ``alpha`` is tiny, where ``1 - e^-alpha`` would cancel.
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta!r}")
    one_minus_q = -math.expm1(-beta)
    terms = []
    for k in range(policy.max_terms):
        x = alpha + k * beta
        terms.append(math.log(-math.expm1(-x)))
        xn = math.exp(-(x + beta))
        if xn / (one_minus_q * (1.0 - xn)) <= policy.term_eps:
            return math.fsum(terms)
    raise ConvergenceError(
        f"log q-Pochhammer (alpha={alpha!r}, beta={beta!r}) not certified within {policy.max_terms} factors"
    )


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartitionTable:
    """P(0), ..., P(n_max) as exact integers."""

    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def n_max(self) -> int:
        return len(self.values) - 1


def _extend_partitions(values: list[int]) -> int:
    """Append P(n) for n = len(values) using the pentagonal-number recurrence."""
    n = len(values)
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        g2 = g1 + k
        term = values[n - g1]
        if g2 <= n:
            term += values[n - g2]
        total += term if k % 2 else -term
        k += 1
    values.append(total)
    return total


def partition_numbers(n_max: int) -> PartitionTable:
    """Partition numbers P(0..n_max) by Euler's pentagonal recurrence."""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    values = [1]
    for _ in range(n_max):
        _extend_partitions(values)
    return PartitionTable(tuple(values))


def _iter_partitions() -> Iterator[int]:
    values = [1]
    yield 1
    while True:
        yield _extend_partitions(values)


# P(n) < exp(PARTITION_GROWTH * sqrt(n)) for every n >= 1.
PARTITION_GROWTH = math.pi * math.sqrt(2.0 / 3.0)


def _partition_tail_bound(p: float, n: int) -> float:
    """Bound on sum_{m>n} P(m) p^m from the exp(c sqrt m) growth bound."""
    m = n + 1
    log_p = math.log(p)
    rho = p * math.exp(PARTITION_GROWTH / (2.0 * math.sqrt(m)))
    if rho >= 1.0:
        return math.inf
    return math.exp(PARTITION_GROWTH * math.sqrt(m) + m * log_p) / (1.0 - rho)


def partition_gf(p: float, policy: TruncationPolicy = DEFAULT_POLICY, n_max: int | None = None) -> float:
    """sum_n P(n) p^n for 0 < p < 1, truncated once the tail is below term_eps.

    ``n_max`` caps the number of terms (defaults to ``policy.max_terms``).
    """
    if not 0 < p < 1:
        raise DomainError(f"partition generating function needs 0 < p < 1, got {p!r}")
    cap = policy.max_terms if n_max is None else n_max
    terms = []
    pn = 1.0
    for n, pval in enumerate(_iter_partitions()):
        terms.append(pval * pn if pn else 0.0)
        if _partition_tail_bound(p, n) <= policy.term_eps:
            return math.fsum(terms)
        if n >= cap:
            break
        pn *= p
    raise ConvergenceError(f"partition series at p={p!r} not certified within {cap} terms")


# ---------------------------------------------------------------------------
# Exact harmonic numbers and generating functions
# ---------------------------------------------------------------------------


def harmonic(n: int) -> Fraction:
    """H_n = sum_{k=1}^n 1/k, exactly."""
    if n < 0:
        raise DomainError(f"harmonic number needs n >= 0, got {n}")
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def harmonic2(n: int) -> Fraction:
    """H_{n,2} = sum_{k=1}^n 1/k^2, exactly."""
    if n < 0:
        raise DomainError(f"harmonic number needs n >= 0, got {n}")
    return sum((Fraction(1, k * k) for k in range(1, n + 1)), Fraction(0))


@dataclass(frozen=True)
class RationalCoefficientList:
    """Exact power-series coefficients; ``coeffs[n]`` multiplies z^n."""

    coeffs: tuple[Fraction, ...]

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)


class GenFuncKind(str, enum.Enum):
    HN = "Hn"
    HN_SQ = "Hn_sq"
    HN2 = "Hn2"
    HN_OVER_N = "Hn_over_n"


def _log1m_series(N: int) -> list[Fraction]:
    # log(1 - z) = -sum z^n / n
    return [Fraction(0)] + [Fraction(-1, n) for n in range(1, N + 1)]


def _dilog_series(N: int) -> list[Fraction]:
    return [Fraction(0)] + [Fraction(1, n * n) for n in range(1, N + 1)]


def _mul(a: Sequence[Fraction], b: Sequence[Fraction], N: int) -> list[Fraction]:
    out = [Fraction(0)] * (N + 1)
    for i, ai in enumerate(a[: N + 1]):
        if ai:
            for j in range(N + 1 - i):
                out[i + j] += ai * b[j]
    return out


def _div_one_minus_z(a: Sequence[Fraction]) -> list[Fraction]:
    out = []
    acc = Fraction(0)
    for c in a:
        acc += c
        out.append(acc)
    return out


def genfunc_coeffs_closed(kind: GenFuncKind | str, N: int) -> RationalCoefficientList:
    """Coefficients 0..N of the closed form attached to ``kind``.

    Hn         log(1-z)/(1-z)
    Hn_over_n  Li2(z) + log(1-z)^2 / 2
    Hn_sq      (Li2(z) + log(1-z)^2) / (1-z)
    Hn2        Li2(z) / (1-z)
    """
    kind = GenFuncKind(kind)
    if N < 0:
        raise DomainError(f"order must be >= 0, got {N}")
    log1m = _log1m_series(N)
    li2 = _dilog_series(N)
    if kind is GenFuncKind.HN:
        coeffs = _div_one_minus_z(log1m)
    elif kind is GenFuncKind.HN2:
        coeffs = _div_one_minus_z(li2)
    else:
        log_sq = _mul(log1m, log1m, N)
        if kind is GenFuncKind.HN_OVER_N:
            coeffs = [d + s / 2 for d, s in zip(li2, log_sq)]
        else:
            coeffs = _div_one_minus_z([d + s for d, s in zip(li2, log_sq)])
    return RationalCoefficientList(tuple(coeffs))


def genfunc_coeffs_direct(kind: GenFuncKind | str, N: int) -> RationalCoefficientList:
    """The harmonic-number sequence the closed form is claimed to generate.

    For ``Hn`` the sequence is -H_n, matching -sum H_n z^n = log(1-z)/(1-z).
    """
    kind = GenFuncKind(kind)
    h = Fraction(0)
    h2 = Fraction(0)
    out = [Fraction(0)]
    for n in range(1, N + 1):
        h += Fraction(1, n)
        h2 += Fraction(1, n * n)
        if kind is GenFuncKind.HN:
            out.append(-h)
        elif kind is GenFuncKind.HN_SQ:
            out.append(h * h)
        elif kind is GenFuncKind.HN2:
            out.append(h2)
        else:
            out.append(h / n)
    return RationalCoefficientList(tuple(out[: N + 1]))


def genfunc_identity_check(kind: GenFuncKind | str, N: int) -> CheckReport:
    kind = GenFuncKind(kind)
    if N < 1:
        raise DomainError(f"order must be >= 1, got {N}")
    closed = genfunc_coeffs_closed(kind, N)
    direct = genfunc_coeffs_direct(kind, N)
    diffs = [abs(c - d) for c, d in zip(closed.coeffs, direct.coeffs)]
    worst = max(diffs)
    mismatches = sum(1 for d in diffs if d)
    return CheckReport.compare(
        "genfunc",
        {"kind": kind.value, "N": N},
        float(worst),
        0.0,
        0.0,
        notes=f"exact rational comparison of {N + 1} coefficients, {mismatches} mismatches",
    )
