#!/usr/bin/env python3
"""Error of fixed-size trapezoid rules for the s^1 Laurent coefficient of
zeta_q(s, x) about s = 0, for a few radii.

Shows geometric convergence with rate set by the nearest singularity
(s = -1) relative to the radius, and the roundoff floor.
"""

import cmath
import math

from qtheta.qspecial import c_q, log_q_gamma, zeta_q

Q, X = 2.0, 1.0


def rule(n: int, r: float) -> complex:
    nodes = [r * cmath.exp(2j * math.pi * j / n) for j in range(n)]
    return sum(zeta_q(s, X, Q, method="continued") / s for s in nodes) / n


def main() -> None:
    # c_1 = -(log C_q - log Gamma_q(x)) serves as the reference
    ref = -(c_q(Q) - log_q_gamma(X, Q))
    radii = (0.25, 0.5, 0.75)
    print("nodes" + "".join(f"{'r=' + str(r):>14}" for r in radii))
    for n in (4, 8, 16, 32, 64, 128):
        print(f"{n:5d}" + "".join(f"{abs(rule(n, r) - ref):14.3e}" for r in radii))


if __name__ == "__main__":
    main()
