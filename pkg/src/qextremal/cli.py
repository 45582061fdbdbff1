"""Command-line front end.

Exit codes: 0 success, 1 failed self-check in ``counterexample``, 2 bad input.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__
from .catalog import builtin, epsilon3, epsilon4
from .channel import KrausSet, dual, tensor
from .choi import choi_of
from .documents import channel_to_dict, choi_to_dict, dumps, load_channel
from .extremal import (
    Verdict,
    analyze,
    tensor_nonextremality_check,
    ucpt_rank_bound_coarse,
)
from .matcore import InputError, TolerancePolicy


def resolve(spec: str) -> tuple[KrausSet, dict]:
    """Load ``spec`` as a channel document path, else as a builtin name."""
    path = Path(spec)
    if path.is_file():
        return load_channel(path)
    try:
        nc = builtin(spec)
    except InputError:
        if path.suffix == ".json" or "/" in spec:
            raise InputError(f"no such file: {spec}") from None
        raise InputError(f"{spec!r} is neither a file nor a builtin channel") from None
    return nc.kraus, {"name": nc.name, "provenance": nc.provenance}


def _tolerance(args) -> TolerancePolicy:
    return TolerancePolicy(rel_rank_tol=args.rank_tol, abs_check_tol=args.check_tol)


def report_document(k: KrausSet, tol: TolerancePolicy, name: str | None = None,
                    timing: bool = False) -> dict:
    t0 = time.perf_counter()
    report = analyze(k, tol)
    elapsed = time.perf_counter() - t0
    doc = {
        "tool": "qextremal",
        "version": __version__,
        "tolerance": {"rank_tol": tol.rel_rank_tol, "check_tol": tol.abs_check_tol},
        "input": name,
        "report": report.to_dict(),
    }
    if timing:
        doc["timing_seconds"] = elapsed
    return doc


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_analyze(args) -> int:
    if (args.input is None) == (args.builtin is None):
        raise InputError("give exactly one of INPUT or --builtin")
    k, meta = resolve(args.builtin if args.builtin is not None else args.input)
    name = meta.get("name", args.input)
    _emit(dumps(report_document(k, _tolerance(args), name, args.timing)), args.out)
    return 0


def cmd_tensor(args) -> int:
    a, ma = resolve(args.a)
    b, mb = resolve(args.b)
    name = f"{ma.get('name', args.a)} (x) {mb.get('name', args.b)}"
    _emit(dumps(channel_to_dict(tensor(a, b), name=name)), args.out)
    return 0


def cmd_dual(args) -> int:
    a, ma = resolve(args.a)
    name = f"dual({ma.get('name', args.a)})"
    _emit(dumps(channel_to_dict(dual(a), name=name)), args.out)
    return 0


def cmd_choi(args) -> int:
    a, _ = resolve(args.a)
    _emit(dumps(choi_to_dict(choi_of(a))), args.out)
    return 0


def cmd_counterexample(args) -> int:
    tol = _tolerance(args)
    factors = {3: epsilon3(), 4: epsilon4()}
    reports = {n: analyze(f.kraus, tol) for n, f in factors.items()}
    ok = True
    out = sys.stdout
    report_dir = Path(args.report_dir) if args.report_dir else None
    if report_dir is not None:
        report_dir.mkdir(parents=True, exist_ok=True)

    for n, f in factors.items():
        r = reports[n]
        extreme = r.extreme_ucpt is Verdict.TRUE
        ok &= extreme
        out.write(f"factor {f.name}: dim {n}, CR {r.choi_rank}, "
                  f"extreme UCPT {r.extreme_ucpt.value}, "
                  f"rank bound sqrt(2*{n}^2-1) = {r.ucpt_rank_bound:.4f}\n")
        if report_dir is not None:
            (report_dir / f"{f.name}.json").write_text(
                dumps(report_document(f.kraus, tol, f.name)), encoding="utf-8")

    for n in (3, 4):
        for m in (3, 4):
            k = tensor(factors[n].kraus, factors[m].kraus)
            r = analyze(k, tol)
            shortcut = tensor_nonextremality_check(factors[n].kraus, factors[m].kraus, tol)
            bound = ucpt_rank_bound_coarse(n * m)
            product_ok = (r.channel_class.ucpt
                          and r.choi_rank == reports[n].choi_rank * reports[m].choi_rank
                          and r.choi_rank > bound
                          and shortcut
                          and r.extreme_ucpt is Verdict.FALSE)
            ok &= product_ok
            out.write(f"pair ({n},{m}): class {r.channel_class.name}, "
                      f"CR {reports[n].choi_rank}*{reports[m].choi_rank} = {r.choi_rank} "
                      f"{'>' if r.choi_rank > bound else '<='} sqrt(2)*{n * m} = {bound:.4f}, "
                      f"extreme UCPT {r.extreme_ucpt.value} "
                      f"(decided by {r.ucpt.decided_by}) "
                      f"-> {'not extreme' if product_ok else 'CHECK FAILED'}\n")
            if report_dir is not None:
                name = f"eps{n}_x_eps{m}"
                (report_dir / f"{name}.json").write_text(
                    dumps(report_document(k, tol, name)), encoding="utf-8")

    out.write("all four products non-extreme, all factors extreme: "
              f"{'yes' if ok else 'NO'}\n")
    return 0 if ok else 1


def cmd_version(args) -> int:
    print(f"qextremal {__version__}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qextremal",
        description="Kraus-form quantum channels: class membership and extremality "
                    "in CPT, UCP and UCPT.")
    sub = p.add_subparsers(dest="command", required=True)

    def tol_flags(sp):
        sp.add_argument("--rank-tol", type=float, default=1e-9,
                        help="relative eigenvalue cutoff for numerical ranks")
        sp.add_argument("--check-tol", type=float, default=1e-9,
                        help="max-norm tolerance for identity checks")

    a = sub.add_parser("analyze", help="extremality report as JSON")
    a.add_argument("input", nargs="?", help="channel document or builtin name")
    a.add_argument("--builtin", help="builtin channel, e.g. eps3, id:2, fourier:3")
    a.add_argument("--out", "-o", help="write to this file instead of stdout")
    a.add_argument("--timing", action="store_true",
                   help="add wall-clock timing (makes output non-reproducible)")
    tol_flags(a)
    a.set_defaults(func=cmd_analyze)

    t = sub.add_parser("tensor", help="Kraus tensor product of two channels")
    t.add_argument("a")
    t.add_argument("b")
    t.add_argument("--out", "-o")
    t.set_defaults(func=cmd_tensor)

    d = sub.add_parser("dual", help="Hilbert-Schmidt dual channel")
    d.add_argument("a")
    d.add_argument("--out", "-o")
    d.set_defaults(func=cmd_dual)

    c = sub.add_parser("choi", help="dump the Choi matrix as JSON")
    c.add_argument("a")
    c.add_argument("--out", "-o")
    c.set_defaults(func=cmd_choi)

    x = sub.add_parser("counterexample",
                       help="check that eps_n (x) eps_m is not extreme UCPT for n, m in {3, 4}")
    x.add_argument("--report-dir", help="also write JSON reports into this directory")
    tol_flags(x)
    x.set_defaults(func=cmd_counterexample)

    v = sub.add_parser("version")
    v.set_defaults(func=cmd_version)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"qextremal: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
