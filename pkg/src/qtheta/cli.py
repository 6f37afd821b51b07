"""Command-line front end: ``qtheta check | eval | sample``.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage or domain
error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys
from datetime import datetime, timezone
from typing import Any, Sequence

from . import qspecial as qs
from . import series_core as sc
from . import special_functions as sf
from . import verify
from .errors import QThetaError
from .quadrature import DEFAULT_CONTOUR
from .reports import CheckReport

SCHEMA_VERSION = "1.0"
TOL_ENV = "QTHETA_TOL"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Canonical serialization
# ---------------------------------------------------------------------------


def _encode(obj: Any) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return "%.17g" % obj if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        items = sorted(obj.items())
        return "{" + ",".join(json.dumps(str(k)) + ":" + _encode(v) for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps_canonical(obj: Any) -> str:
    """JSON with sorted keys, no whitespace and floats as %.17g (non-finite -> null).

    Parsing the output and dumping it again reproduces it byte for byte.
    """
    return _encode(obj) + "\n"


def report_document(
    reports: Sequence[CheckReport],
    tolerances: verify.Tolerances,
    overrides: dict[str, Any] | None = None,
    generated_at: str | None = None,
) -> dict[str, Any]:
    if generated_at is None:
        generated_at = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    config = {
        "tolerances": tolerances.as_dict(),
        "truncation": dataclasses.asdict(sc.DEFAULT_POLICY),
        "quadrature": dataclasses.asdict(verify.CHECK_QUAD),
        "contour": dataclasses.asdict(DEFAULT_CONTOUR),
        "overrides": dict(overrides or {}),
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "generated_at": generated_at,
        "config": config,
        "reports": [r.to_dict() for r in reports],
    }


REPORT_CSV_FIELDS = ("check_id", "params", "lhs", "rhs", "abs_err", "rel_err", "tol", "pass", "notes")


def reports_to_csv(reports: Sequence[CheckReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_CSV_FIELDS)
    for r in reports:
        d = r.to_dict()
        params = ";".join(f"{k}={_encode(v).strip(chr(34))}" for k, v in sorted(r.params.items()))
        writer.writerow(
            [d["check_id"], params]
            + [_encode(d[k]) for k in ("lhs", "rhs", "abs_err", "rel_err", "tol")]
            + ["true" if r.passed else "false", r.notes]
        )
    return buf.getvalue()


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

PARAM_FLAGS = ("q", "t", "p", "x", "s", "y", "n", "kind")


def _validate_overrides(ov: dict[str, Any]) -> None:
    if "q" in ov and not ov["q"] > 1:
        raise UsageError(f"--q must exceed 1, got {ov['q']}")
    if "p" in ov and not 0 < ov["p"] < 1:
        raise UsageError(f"--p must lie in (0, 1), got {ov['p']}")
    if "t" in ov and not ov["t"] >= 0:
        raise UsageError(f"--t must be >= 0, got {ov['t']}")
    if "x" in ov and not ov["x"] > 0:
        raise UsageError(f"--x must be positive, got {ov['x']}")
    if "y" in ov and not ov["y"] > 0:
        raise UsageError(f"--y must be positive, got {ov['y']}")
    if "n" in ov and ov["n"] < 0:
        raise UsageError(f"--n must be >= 0, got {ov['n']}")
    if "kind" in ov and ov["kind"] not in {k.value for k in sc.GenFuncKind}:
        raise UsageError(f"--kind must be one of {[k.value for k in sc.GenFuncKind]}")


def _tolerances(cli_tol: float | None) -> verify.Tolerances:
    if cli_tol is not None:
        return verify.Tolerances(global_tol=cli_tol)
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            value = float(env)
        except ValueError:
            raise UsageError(f"{TOL_ENV} must be a number, got {env!r}") from None
        return verify.Tolerances(global_tol=value)
    return verify.Tolerances()


def cmd_check(args: argparse.Namespace) -> int:
    names = list(dict.fromkeys(args.names))
    if "all" in names:
        if len(names) > 1:
            raise UsageError("'all' cannot be combined with other check names")
        selected = sorted(verify.CHECKS)
    else:
        unknown = [n for n in names if n not in verify.CHECKS]
        if unknown:
            raise UsageError(
                f"unknown check(s) {', '.join(unknown)}; valid names: all, " + ", ".join(sorted(verify.CHECKS))
            )
        selected = names
    overrides = {k: getattr(args, k) for k in PARAM_FLAGS if getattr(args, k) is not None}
    _validate_overrides(overrides)
    if args.tol is not None and not args.tol > 0:
        raise UsageError("--tol must be positive")
    tolerances = _tolerances(args.tol)
    reports = verify.run_all(tolerances, selected, overrides)
    if args.format == "csv":
        text = reports_to_csv(reports)
    else:
        text = dumps_canonical(report_document(reports, tolerances, overrides))
    _write(text, args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def _fmt(v: float) -> str:
    return "%.15g" % v


def _fmt_complex(z: complex) -> str:
    return _fmt(z.real) if z.imag == 0 else f"{_fmt(z.real)} {_fmt(z.imag)}"


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"eval {args.function} needs " + ", ".join("--" + n.replace("_", "-") for n in missing))


def cmd_eval(args: argparse.Namespace) -> int:
    fn = args.function
    if fn == "qgamma":
        _need(args, "z", "q")
        v = qs.log_q_gamma(args.z, args.q)
        print(_fmt(v if args.log else math.exp(v)))
    elif fn == "cq":
        _need(args, "q")
        v = qs.c_q(args.q)
        print(_fmt(v if args.log else math.exp(v)))
    elif fn == "dilog":
        _need(args, "z")
        print(_fmt(sf.dilog(args.z)))
    elif fn == "theta4":
        _need(args, "p")
        if args.t is not None and args.x is None:
            print(_fmt(qs.theta4_imag(args.t, args.p)))
        else:
            w = complex(args.x or 0.0, args.t or 0.0)
            print(_fmt_complex(qs.theta4(w, args.p)))
    elif fn == "zetaq":
        _need(args, "s", "x", "q")
        print(_fmt_complex(qs.zeta_q(complex(args.s, args.s_im), args.x, args.q)))
    elif fn == "partition":
        if args.n is not None:
            if args.n < 0:
                raise UsageError("--n must be >= 0")
            print(sc.partition_numbers(args.n)[args.n])
        else:
            _need(args, "p")
            print(_fmt(sc.partition_gf(args.p)))
    elif fn == "hyp2f1":
        _need(args, "c", "z")
        print(_fmt_complex(sf.hyp2f1_11(complex(args.c, args.c_im), args.z)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# sample
# ---------------------------------------------------------------------------


def sample_rows(p: float, t_from: float, t_to: float, steps: int) -> list[tuple[float, float]]:
    """``steps + 1`` equally spaced samples of theta_4(i t, p).

    Interior nodes are ((steps - i) t_from + i t_to) / steps, so a symmetric
    range gives exactly mirrored abscissae; the end nodes are the bounds.
    """
    if steps < 2:
        raise UsageError(f"--steps must be >= 2, got {steps}")
    nome = qs.NomeP(p)
    rows = []
    for i in range(steps + 1):
        if i == 0:
            t = t_from
        elif i == steps:
            t = t_to
        else:
            t = ((steps - i) * t_from + i * t_to) / steps
        rows.append((t, qs.theta4_imag(t, nome)))
    return rows


def cmd_sample(args: argparse.Namespace) -> int:
    if not 0 < args.p < 1:
        raise UsageError(f"--p must lie in (0, 1), got {args.p}")
    L = qs.NomeP(args.p).L
    t_from = -L if args.t_from is None else args.t_from
    t_to = L if args.t_to is None else args.t_to
    rows = sample_rows(args.p, t_from, t_to, args.steps)
    text = "t,theta4\n" + "".join("%.17g,%.17g\n" % row for row in rows)
    _write(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qtheta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pc = sub.add_parser("check", help="run identity checks")
    pc.add_argument("names", nargs="+", help="check ids or 'all'")
    for flag in ("q", "t", "p", "x", "s", "y"):
        pc.add_argument(f"--{flag}", type=float)
    pc.add_argument("--n", type=int)
    pc.add_argument("--kind")
    pc.add_argument("--tol", type=float)
    pc.add_argument("--out")
    pc.add_argument("--format", choices=("json", "csv"), default="json")
    pc.set_defaults(handler=cmd_check)

    pe = sub.add_parser("eval", help="evaluate one function")
    pe.add_argument("function", choices=("qgamma", "theta4", "dilog", "zetaq", "partition", "cq", "hyp2f1"))
    for flag in ("q", "z", "p", "t", "x", "s", "c"):
        pe.add_argument(f"--{flag}", type=float)
    pe.add_argument("--s-im", type=float, default=0.0)
    pe.add_argument("--c-im", type=float, default=0.0)
    pe.add_argument("--n", type=int)
    pe.add_argument("--log", action="store_true", help="print the logarithm (qgamma, cq)")
    pe.set_defaults(handler=cmd_eval)

    ps = sub.add_parser("sample", help="tabulate theta_4(i t, p) between its zeros")
    ps.add_argument("--p", type=float, required=True)
    ps.add_argument("--from", dest="t_from", type=float)
    ps.add_argument("--to", dest="t_to", type=float)
    ps.add_argument("--steps", type=int, default=200)
    ps.add_argument("--out", default="-")
    ps.set_defaults(handler=cmd_sample)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QThetaError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
