"""Acceptance criteria, one test per criterion.

Each criterion prints a single ``[PASS]``/``[FAIL]`` line with its worst
error.  Run directly (``python tests/test_acceptance.py``) for the summary
lines alone.
"""

from __future__ import annotations

import cmath
import math
import os
import subprocess
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracles import brute_force_partition_counts  # noqa: E402
from qtheta import verify as V  # noqa: E402
from qtheta.cli import sample_rows  # noqa: E402
from qtheta.qspecial import NomeP, log_q_gamma, q_number, theta4, theta4_imag, zeta_q, zeta_q_laurent  # noqa: E402
from qtheta.quadrature import ContourConfig, integrate_adaptive, integrate_tanh_sinh  # noqa: E402
from qtheta.series_core import partition_gf, partition_numbers, q_pochhammer_inf  # noqa: E402
from qtheta.special_functions import (  # noqa: E402
    ZETA2,
    d2_hyp2f1_dc2,
    d_hyp2f1_dc,
    dilog,
    hurwitz_zeta_s_derivative_at_0,
    hyp2f1_11,
    log_gamma,
)


def _sweep(check_id, tol, **override):
    """All reports of ``check_id`` over its grid; pass iff abs_err <= tol for each."""
    reps = [V.run_check(check_id, p, tol) for p in V.grid_for(check_id, override)]
    worst = max(r.abs_err for r in reps)
    return all(r.passed and r.abs_err <= tol for r in reps), worst, len(reps)


def criterion_1():
    t0 = time.perf_counter()
    ok, worst, n = _sweep("raabe_q", 1e-7)
    elapsed = time.perf_counter() - t0
    return ok and elapsed < 10, f"{n} points, max abs_err {worst:.2e}, {elapsed:.2f} s"


def criterion_2():
    ok, worst, n = _sweep("raabe_q_special", 1e-7)
    return ok, f"{n} points, max abs_err {worst:.2e}"


def criterion_3():
    ok2, w2, n2 = _sweep("theorem2", 1e-8)
    oki, wi, ni = _sweep("inner_antiderivative", 1e-9)
    return ok2 and oki, f"theorem2 {n2} points max {w2:.2e}; inner {ni} points max {wi:.2e}"


def criterion_4():
    ok, worst, n = _sweep("residue_formula", 1e-9)
    return ok, f"{n} points, max abs_err {worst:.2e}"


def criterion_5():
    ok_m, w_m, _ = _sweep("main_theta", 1e-6)
    ok_r, w_r, _ = _sweep("main_theta_routes", 1e-12)
    zeros = [V.check_theta_zero(p) for p in ("1/2", "1/3")]
    ok_z = all(r.lhs == 0.0 and r.passed for r in zeros)
    return ok_m and ok_r and ok_z, f"integral max {w_m:.2e}; routes max {w_r:.2e}; exact zeros {ok_z}"


def criterion_6():
    ok_l, w_l, _ = _sweep("lerch", 1e-8)
    ok_n, w_n, _ = _sweep("nk", 1e-7)
    ok_z, w_z, _ = _sweep("zeta_q_residue", 1e-8)
    return ok_l and ok_n and ok_z, f"lerch {w_l:.2e}; nk {w_n:.2e}; residue {w_z:.2e}"


def criterion_7():
    ok_t, w_t, _ = _sweep("triple_product", 1e-10)
    ok_g, w_g, _ = _sweep("theta_gamma_link", 1e-9)
    return ok_t and ok_g, f"triple product {w_t:.2e}; theta-gamma {w_g:.2e}"


def criterion_8():
    reps = [V.check_genfunc(k, 200) for k in ("Hn", "Hn_sq", "Hn2", "Hn_over_n")]
    ok_g = all(r.passed and r.lhs == 0 for r in reps)
    table = partition_numbers(50)
    ok_p = tuple(table[n] for n in range(51)) == brute_force_partition_counts(50)
    return ok_g and ok_p and table[10] == 42, f"genfunc exact {ok_g}; brute force n<=50 {ok_p}; P(10)={table[10]}"


def criterion_9():
    ok, worst, _ = _sweep("classical_raabe", 1e-9)
    direct = integrate_tanh_sinh(log_gamma, 0.0, 1.0).value
    err = abs(direct - 0.5 * math.log(2 * math.pi))
    return ok and err <= 1e-9, f"grid max {worst:.2e}; integral of log Gamma err {err:.2e}"


def criterion_10():
    proc = subprocess.run(
        [sys.executable, "-m", "qtheta.cli", "sample", "--p", "0.5"],
        capture_output=True, text=True, check=False,
    )
    if proc.returncode != 0:
        return False, f"exit {proc.returncode}: {proc.stderr.strip()}"
    lines = proc.stdout.split("\n")
    rows = [tuple(map(float, ln.split(","))) for ln in lines[1:-1]]
    vals = [v for _, v in rows]
    mid = len(vals) // 2
    ends = max(abs(vals[0]), abs(vals[-1]))
    centre = abs(vals[mid] - 0.121124208002)
    even = max(abs(a - b) for a, b in zip(vals, reversed(vals)))
    unimodal = all(b > a for a, b in zip(vals[:mid], vals[1 : mid + 1])) and all(v > 0 for v in vals[1:-1])
    ok = lines[0] == "t,theta4" and ends <= 1e-12 and centre <= 1e-9 and even <= 1e-12 and unimodal
    return ok, f"endpoints {ends:.1e}; centre err {centre:.1e}; asymmetry {even:.1e}; unimodal {unimodal}"


def _property_checks():
    """(name, passed) for every module invariant."""
    out = []
    ps = (0.1, 0.3, 0.5, 0.7, 0.9)
    out.append(("gf * pochhammer = 1", all(abs(partition_gf(p) * q_pochhammer_inf(p, p) - 1) <= 1e-12 for p in ps)))
    grid = [i / 20 for i in range(20)]
    out.append(("pochhammer decreasing in a", all(
        q_pochhammer_inf(a, q) >= q_pochhammer_inf(b, q) for q in (0.2, 0.5, 0.9) for a, b in zip(grid, grid[1:])
    )))
    out.append(("dilog reflection", all(
        abs(dilog(z) + dilog(1 - z) + math.log(z) * math.log1p(-z) - ZETA2) <= 1e-13 for z in [k / 10 for k in range(1, 10)]
    )))
    out.append(("2F1(1,1;2;z) closed form", all(
        abs(hyp2f1_11(2.0, z).real * z + math.log1p(-z)) <= 1e-12 for z in (0.1, -0.1, 0.5, -0.5, 0.9)
    )))
    fd_ok = True
    for z in (-0.5, 0.25, 0.5, 0.75):
        d1 = (hyp2f1_11(1 + 1e-5, z) - hyp2f1_11(1 - 1e-5, z)).real / 2e-5
        d2 = (hyp2f1_11(1 + 1e-4, z) - 2 * hyp2f1_11(1.0, z) + hyp2f1_11(1 - 1e-4, z)).real / 1e-8
        fd_ok &= abs(d1 - d_hyp2f1_dc(z)) <= 1e-6 and abs(d2 - d2_hyp2f1_dc2(z)) <= 1e-5
    out.append(("parameter derivatives vs finite differences", fd_ok))
    out.append(("Lerch via contour", all(
        abs(math.exp(-hurwitz_zeta_s_derivative_at_0(x) + log_gamma(x)) / math.sqrt(2 * math.pi) - 1) <= 1e-8
        for x in (0.5, 1, 1.5, 2, 3)
    )))
    out.append(("q-gamma functional equation", all(
        abs(log_q_gamma(x + 1, q) - log_q_gamma(x, q) - math.log(q_number(x, q))) <= 1e-10
        for x in (0.25, 0.5, 1, 1.7, 3) for q in (1.5, 2, 5)
    )))
    out.append(("theta4 parity", all(
        abs(theta4(w, p) - theta4(-w, p)) <= 1e-13 for w in (0.3, 1.2 + 0.4j, -2 + 0.9j) for p in (0.2, 0.5, 0.8)
    )))
    pos = True
    for p in (0.2, 0.5, 0.8):
        L = NomeP(p).L
        pos &= all(theta4_imag(k / 200 * L * (1 - 1e-3), p) > 0 for k in range(-200, 201))
    out.append(("theta4_imag positive between zeros", pos))
    out.append(("Gauss-Kronrod exact to degree 10", all(
        abs(integrate_adaptive(lambda x, k=k: x**k, 0, 1).value - 1 / (k + 1)) <= 1e-14 for k in range(11)
    )))
    out.append(("tanh-sinh log x by level 10", abs(
        integrate_tanh_sinh(math.log, 0, 1, V.QuadConfig(ts_max_level=10)).value + 1
    ) <= 1e-10))
    a = zeta_q_laurent(1.0, 2.0, ContourConfig(radius=0.3))
    b = zeta_q_laurent(1.0, 2.0, ContourConfig(radius=0.5))
    out.append(("contour radius independence", all(
        abs(x - y) <= 1e-10 for x, y in ((a.c_m1, b.c_m1), (a.c0, b.c0), (a.c1, b.c1))
    )))

    def rule(n):
        nodes = [0.5 * cmath.exp(2j * math.pi * j / n) for j in range(n)]
        return sum(zeta_q(s, 1.0, 2.0) / s for s in nodes) / n

    errs = [abs(rule(n) - b.c1) for n in (16, 32, 64)]
    out.append(("contour error decay per doubling", all(
        e1 <= e0 / 1e3 or e1 <= 1e-13 for e0, e1 in zip(errs, errs[1:])
    )))
    main = [V.check_main_theta(p) for p in (0.2, 0.5, 0.8)]
    out.append(("theta integral halves agree", all(float(r.notes.rsplit("= ", 1)[1]) <= 1e-9 for r in main)))
    out.append(("t -> 0 limit consistency", all(V.check_t_limit(q).passed for q in (1.5, 2.0, 3.0))))
    out.append(("deterministic reports", [r.to_dict() for r in V.run_all(names=["lerch", "nk"])]
                == [r.to_dict() for r in V.run_all(names=["lerch", "nk"])]))
    vals = [v for _, v in sample_rows(0.5, -NomeP(0.5).L, NomeP(0.5).L, 200)]
    out.append(("sample palindromic", all(abs(x - y) <= 1e-12 for x, y in zip(vals, reversed(vals)))))
    return out


def criterion_11():
    results = _property_checks()
    failed = [name for name, ok in results if not ok]
    return not failed, f"{len(results) - len(failed)}/{len(results)} properties" + (
        f"; failing: {', '.join(failed)}" if failed else ""
    )


CRITERIA = [
    (1, "q-Raabe closed form", criterion_1),
    (2, "q-Raabe at t = 0", criterion_2),
    (3, "zeta_q integral and antiderivative", criterion_3),
    (4, "residue formula", criterion_4),
    (5, "theta integral", criterion_5),
    (6, "regularized products", criterion_6),
    (7, "triple product and theta-gamma link", criterion_7),
    (8, "exact layer", criterion_8),
    (9, "classical Raabe", criterion_9),
    (10, "theta4 sample data", criterion_10),
    (11, "property suite", criterion_11),
]


def _line(num, title, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d} {title}: {detail}"


@pytest.mark.parametrize("num, title, func", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, func, capsys):
    ok, detail = func()
    with capsys.disabled():
        print("\n" + _line(num, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    all_ok = True
    for num, title, func in CRITERIA:
        ok, detail = func()
        all_ok &= ok
        print(_line(num, title, ok, detail))
    sys.exit(0 if all_ok else 1)
