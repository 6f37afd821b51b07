#!/usr/bin/env python3
"""How the t > 0 q-Raabe closed form approaches its t -> 0 limit.

The deviation behaves like t (log(t log q) - 1 - log(q - 1)), so at
t = 1e-4 it is still about 1e-3.  Subtracting that term leaves a residual
of order t^2.
"""

import math

from qtheta.verify import raabe_q_bracket, raabe_q_limit


def main() -> None:
    print(f"{'q':>5}{'t':>10}{'deviation':>14}{'leading term':>14}{'residual':>12}")
    for q in (1.5, 2.0, 3.0, 10.0):
        limit = raabe_q_limit(q)
        for k in range(1, 7):
            t = 10.0**-k
            dev = raabe_q_bracket(q, t) - limit
            lead = t * (math.log(t * math.log(q)) - 1.0 - math.log(q - 1.0))
            print(f"{q:5g}{t:10.0e}{dev:14.4e}{lead:14.4e}{dev - lead:12.2e}")


if __name__ == "__main__":
    main()
