"""Numerical verification of q-Raabe integrals and theta-function identities."""

from .errors import ConvergenceError, DomainError, NonFiniteError, QThetaError
from .qspecial import (
    NomeP,
    QBase,
    c_q,
    log_q_gamma,
    q_number,
    theta4,
    theta4_imag,
    theta_zero_cancellation,
    zeta_q,
    zeta_q_laurent,
    zeta_regularized_product_q,
)
from .quadrature import (
    ContourConfig,
    IntegrationResult,
    LaurentCoefficients,
    QuadConfig,
    contour_laurent,
    integrate_adaptive,
    integrate_tanh_sinh,
)
from .reports import CheckReport
from .series_core import (
    GenFuncKind,
    TruncationPolicy,
    genfunc_coeffs_closed,
    genfunc_coeffs_direct,
    genfunc_identity_check,
    harmonic,
    harmonic2,
    log_q_pochhammer_inf,
    partition_gf,
    partition_numbers,
    q_pochhammer_inf,
)
from .special_functions import (
    d2_hyp2f1_dc2,
    d_hyp2f1_dc,
    digamma_int,
    dilog,
    hurwitz_zeta,
    hurwitz_zeta_s_derivative_at_0,
    hyp2f1_11,
    log_gamma,
    trigamma_int,
)
from .verify import CHECKS, Tolerances, run_all

__version__ = "0.1.0"
