"""
Command-line front end.

    dirichlet-lab gen --fn phi --limit 100
    dirichlet-lab convolve --f id --g mu --limit 1000 --at 12
    dirichlet-lab sum --fn sigma --k 1 --s 3 --x 1000000
    dirichlet-lab series --fn sigma --k 1 --s 2 --limit 100000
    dirichlet-lab verify phi-wintner --format json
    dirichlet-lab verify all
    dirichlet-lab constants --zeta 2 --zeta 3 --gamma

Exit status: 0 ok / verdict pass, 2 verdict fail, 3 inconclusive or a
violated precondition, 64 usage errors, 70 overflow or numeric errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from . import report as rpt
from .constants import euler_gamma, zeta
from .convolve import convolve_naive, dirichlet_convolve
from .errors import (
    DomainError,
    InvalidArgument,
    NumericError,
    PreconditionViolated,
    TableOverflowError,
)
from .funcs import FUNCTION_IDS, IntFunctionTable, make_table, scale_by_power
from .presets import PRESETS, VerifyConfig, default_limit, run_preset
from .sums import abel_partial_sum, dirichlet_partial_sum, prefix_sums
from .verify import FAIL, PASS, AsymptoticLaw, decade_checkpoints, evaluate_law

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 2, 3
EXIT_USAGE, EXIT_SOFTWARE = 64, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v != int(v):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


def _checkpoint_list(text):
    try:
        return tuple(_int(p) for p in text.split(",") if p.strip())
    except argparse.ArgumentTypeError as e:
        raise argparse.ArgumentTypeError(f"bad checkpoint list: {e}") from None


def _limit(args):
    return default_limit() if args.limit is None else args.limit


def _table(fn, k, limit, scale=None):
    t = make_table(fn, limit, k)
    if scale:
        return scale_by_power(t, scale)
    return t


def _write(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table_text(t, fmt):
    if fmt == "json":
        values = [int(v) if isinstance(t, IntFunctionTable) else float(v) for v in t.values]
        return rpt.dumps({"name": t.name, "limit": t.limit, "values": values})
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(("n", "value"))
    for n, v in enumerate(t.values.tolist(), start=1):
        w.writerow((n, rpt.fmt(v)))
    return buf.getvalue()


def cmd_gen(args):
    t = _table(args.fn, args.k, _limit(args), args.scale)
    _write(args, _table_text(t, args.format))
    return EXIT_OK


def cmd_convolve(args):
    limit = _limit(args)
    f = _table(args.f, args.fk, limit, args.f_scale)
    g = _table(args.g, args.gk, limit, args.g_scale)
    if args.at is not None:
        if not 1 <= args.at <= limit:
            raise InvalidArgument(f"--at {args.at} outside 1..{limit}")
        h = dirichlet_convolve(f, g)
        naive = convolve_naive(f, g, args.at)
        _write(args, f"{rpt.fmt(h[args.at])}\n")
        if naive != h[args.at]:
            print(f"warning: divisor enumeration gives {rpt.fmt(naive)}", file=sys.stderr)
        return EXIT_OK
    _write(args, _table_text(dirichlet_convolve(f, g), args.format))
    return EXIT_OK


def cmd_sum(args):
    t = _table(args.fn, args.k, args.x)
    if args.method == "abel":
        value = abel_partial_sum(t, args.s, args.x)
    elif args.s == 0 and isinstance(t, IntFunctionTable):
        _write(args, f"{prefix_sums(t).exact(args.x)}\n")
        return EXIT_OK
    else:
        value = dirichlet_partial_sum(t, args.s, args.x)
    _write(args, f"{rpt.fmt(value)}\n")
    return EXIT_OK


def cmd_series(args):
    limit = _limit(args)
    xs = list(args.checkpoints) if args.checkpoints else decade_checkpoints(limit, start=10)
    t = _table(args.fn, args.k, max(xs) if xs else limit)
    B = prefix_sums(t)
    rows = []
    for x in xs:
        rows.append({"x": x, "direct": dirichlet_partial_sum(t, args.s, x),
                     "abel": abel_partial_sum(t, args.s, x, sums=B)})
    if args.format == "json":
        _write(args, rpt.dumps({"function": t.name, "s": args.s, "rows": rows}))
    else:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(("x", "direct", "abel"))
        for r in rows:
            w.writerow((r["x"], rpt.fmt(r["direct"]), rpt.fmt(r["abel"])))
        _write(args, buf.getvalue())
    return EXIT_OK


def _config(args):
    return VerifyConfig(
        limit=args.limit,
        checkpoints=args.checkpoints,
        tol=args.tol,
        decay_threshold=args.decay_threshold,
        trend_slack=args.trend_slack,
        k=args.k,
    )


def _exit_for(verdict):
    return {PASS: EXIT_OK, FAIL: EXIT_FAIL}.get(verdict, EXIT_INCONCLUSIVE)


def _result_dict(name, reports, verdict):
    if len(reports) == 1:
        return dict(rpt.report_to_dict(reports[0]), preset=name)
    return {"preset": name, "verdict": verdict,
            "reports": [rpt.report_to_dict(r) for r in reports]}


def _text(name, reports, verdict):
    lines = [f"{name}: {verdict.upper()}"]
    for r in reports:
        lines.append(f"  {r.law.kind} law: {r.law.description}  -> {r.verdict}")
        for c in r.checkpoints:
            lines.append(f"    x={c.x:<10d} measured={c.measured:<24.17g} "
                         f"predicted={c.predicted:<24.17g} deviation={c.deviation:.3e}")
        if r.estimate is not None:
            lines.append(f"    slope estimate {r.estimate:.12g}")
    return "\n".join(lines) + "\n"


def _run_custom(args, cfg):
    if not args.fn or not args.law:
        raise UsageError("verify custom needs --fn and --law")
    if args.law in ("power", "little-o") and args.alpha is None:
        raise UsageError(f"--law {args.law} needs --alpha")
    if args.law in ("power", "log") and args.coefficient is None:
        raise UsageError(f"--law {args.law} needs --coefficient")
    limit = cfg.resolved_limit()
    t = _table(args.fn, args.k, limit, args.scale)
    if args.law == "power":
        law = AsymptoticLaw.power(args.alpha, args.coefficient, description="custom power law")
    elif args.law == "log":
        law = AsymptoticLaw.log(args.coefficient, description="custom log law")
    else:
        law = AsymptoticLaw.little_o(args.alpha, description="custom little-o law")
    r = evaluate_law(law, prefix_sums(t), cfg.grid(), tol_final=cfg.tol,
                     trend_slack=cfg.trend_slack, decay_threshold=cfg.decay_threshold)
    return [r], r.verdict


def _run_one(name, args, cfg):
    try:
        if name == "custom":
            reports, verdict = _run_custom(args, cfg)
        else:
            res = run_preset(name, cfg)
            reports, verdict = list(res.reports), res.verdict
    except PreconditionViolated as e:
        return name, None, "inconclusive", str(e)
    return name, reports, verdict, None


def cmd_verify(args):
    cfg = _config(args)
    names = list(PRESETS) if args.target == "all" else [args.target]
    results = [_run_one(n, args, cfg) for n in names]

    if args.format == "json":
        docs = []
        for name, reports, verdict, err in results:
            if reports is None:
                docs.append({"preset": name, "verdict": "precondition-violated", "error": err})
            else:
                docs.append(_result_dict(name, reports, verdict))
        _write(args, rpt.dumps(docs[0] if len(docs) == 1 else {"presets": docs}))
    elif args.format == "csv":
        reports, labels = [], []
        for name, rs, _, _ in results:
            for i, r in enumerate(rs or []):
                reports.append(r)
                labels.append(name if len(rs) == 1 else f"{name}#{i}")
        if reports:
            _write(args, rpt.emit_csv(reports, labels))
    else:
        out = []
        for name, reports, verdict, err in results:
            out.append(f"{name}: PRECONDITION VIOLATED: {err}\n" if reports is None
                       else _text(name, reports, verdict))
        _write(args, "".join(out))

    for name, reports, verdict, err in results:
        if err:
            print(f"{name}: {err}", file=sys.stderr)
    verdicts = [v for _, _, v, _ in results]
    if all(v == PASS for v in verdicts):
        return EXIT_OK
    if any(v == FAIL for v in verdicts):
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE


def cmd_constants(args):
    lines = []
    for s in args.zeta or []:
        c = zeta(s, args.tol)
        lines.append(f"zeta({s:g}) = {rpt.fmt(c.value)} +/- {rpt.fmt(c.error_bound)} [{c.method}]")
    if args.gamma or not args.zeta:
        c = euler_gamma(args.tol)
        lines.append(f"gamma = {rpt.fmt(c.value)} +/- {rpt.fmt(c.error_bound)} [{c.method}]")
    _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dirichlet-lab",
                description="Arithmetic-function tables, Dirichlet convolutions and "
                            "empirical checks of summatory-function asymptotics.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fn_args(sp, flag="--fn", dest=None, kflag="--k"):
        sp.add_argument(flag, dest=dest, choices=FUNCTION_IDS, required=True)
        sp.add_argument(kflag, dest=(dest + "k") if dest else "k", type=_int, default=1,
                        help="exponent for id and sigma (default 1)")

    sp = sub.add_parser("gen", help="write a function table")
    fn_args(sp)
    sp.add_argument("--limit", type=_int)
    sp.add_argument("--scale", type=float, help="divide values by n**scale")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("convolve", help="Dirichlet convolution of two tables")
    fn_args(sp, "--f", "f", "--fk")
    fn_args(sp, "--g", "g", "--gk")
    sp.add_argument("--f-scale", type=float)
    sp.add_argument("--g-scale", type=float)
    sp.add_argument("--limit", type=_int)
    sp.add_argument("--at", type=_int, help="print only (f*g)(n)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_convolve)

    sp = sub.add_parser("sum", help="sum_{n<=x} f(n)/n^s")
    fn_args(sp)
    sp.add_argument("--s", type=float, default=0.0)
    sp.add_argument("--x", type=_int, required=True)
    sp.add_argument("--method", choices=("direct", "abel"), default="direct")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_sum)

    sp = sub.add_parser("series", help="partial Dirichlet series at checkpoints, direct and Abel")
    fn_args(sp)
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--limit", type=_int)
    sp.add_argument("--checkpoints", type=_checkpoint_list)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("verify", help="run a preset, all presets, or a custom law")
    sp.add_argument("target", choices=PRESETS + ("all", "custom"))
    sp.add_argument("--limit", type=_int)
    sp.add_argument("--checkpoints", type=_checkpoint_list)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--decay-threshold", type=float, default=0.1)
    sp.add_argument("--trend-slack", type=float, default=1.5)
    sp.add_argument("--k", type=_int, default=1, help="k for the sigma_k presets")
    sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sp.add_argument("--output")
    sp.add_argument("--fn", choices=FUNCTION_IDS, help="custom: summed function")
    sp.add_argument("--scale", type=float, help="custom: divide f(n) by n**scale")
    sp.add_argument("--law", choices=("power", "log", "little-o"))
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--coefficient", type=float)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("constants", help="zeta(s) and Euler's constant with error bounds")
    sp.add_argument("--zeta", type=float, action="append")
    sp.add_argument("--gamma", action="store_true")
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_constants)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidArgument, DomainError) as e:
        print(f"dirichlet-lab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionViolated as e:
        print(f"dirichlet-lab: precondition violated: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (TableOverflowError, NumericError) as e:
        print(f"dirichlet-lab: {e}", file=sys.stderr)
        return EXIT_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
