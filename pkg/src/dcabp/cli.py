"""Command-line front end: convert, verify, gen, stats and bench.

Exit codes: 0 success, 1 verification failed, 2 invalid input, 3 violated
precondition (the diagnostic goes to stderr as JSON).
"""
from __future__ import annotations

import argparse
import csv
import json
import re
import sys
import time
from typing import List, Optional

from . import io, verify
from .abp import ScalarAbp
from .convert import abp_to_pencil, general_to_abp
from .errors import DcAbpError, NotHomogeneous, ParseError, PreconditionError
from .instgen import elem_sym_abp, power_sum_abp, random_hom_abp, synth_r_regular_pencil
from .pencil import Pencil, constant_rank

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_PRECONDITION = 3

FAMILIES = ("powersum", "elemsym", "random-abp", "r-regular")
CSV_COLUMNS = ("family", "n", "d", "s", "r", "path", "out_size", "out_width", "bound_size", "ratio", "millis")


class UsageError(DcAbpError):
    pass


def _diagnose(exc: Exception) -> dict:
    out = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, NotHomogeneous):
        out["degrees"] = list(exc.degrees)
    return out


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# -- instance families ---------------------------------------------------------------------


def build_instance(family: str, n: int, d: int, w: int = 2, blocks: int = 2, seed: int = 0):
    """The generated object for a family: an ABP, or a pencil for ``r-regular``."""
    if family == "powersum":
        return power_sum_abp(n, d)
    if family == "elemsym":
        return elem_sym_abp(n, d)
    if family == "random-abp":
        return random_hom_abp(n, d, w, seed=seed)
    if family == "r-regular":
        if blocks < 1:
            raise UsageError("--blocks must be >= 1")
        return synth_r_regular_pencil(
            [abp_to_pencil(random_hom_abp(n, d, w, seed=seed + i)) for i in range(blocks)]
        )
    raise UsageError(f"unknown family {family!r}")


def _instance_pencil(obj) -> Pencil:
    return obj if isinstance(obj, Pencil) else abp_to_pencil(obj)


# -- commands ----------------------------------------------------------------------------------


def cmd_convert(args) -> int:
    p = io.load(args.inp)
    if not isinstance(p, Pencil):
        raise ParseError("convert expects a pencil as input")
    abp, report = general_to_abp(p, args.degree, mode=args.mode, truncation=args.truncation,
                                 size_constant=args.size_constant, r_size_constant=args.r_size_constant,
                                 seed=args.seed)
    io.dump(abp, args.out)
    text = io.dumps(report.to_json())
    if args.report:
        _write_text(args.report, text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    a = io.load(args.a)
    if args.b is None:
        if args.degree is None:
            raise UsageError("verify needs --b, or --degree to certify homogeneity of --a")
        v = verify.certify_homogeneous(a, args.degree, trials=args.trials, seed=args.seed,
                                       symbolic=True if args.symbolic else None)
    else:
        b = io.load(args.b)
        if args.symbolic:
            v = verify.symbolic_equal(a, b)
        else:
            v = verify.pit_equal(a, b, trials=args.trials, seed=args.seed)
    sys.stdout.write(io.dumps(v.to_json()))
    return EXIT_OK if v.ok else EXIT_VERIFY_FAILED


def cmd_gen(args) -> int:
    obj = build_instance(args.family, args.n, args.d, args.w, args.blocks, args.seed)
    io.dump(obj, args.out)
    return EXIT_OK


def stats(obj) -> dict:
    if isinstance(obj, Pencil):
        rep = constant_rank(obj)
        return {"kind": "pencil", "s": obj.s, "nvars": obj.nvars, "rank0": rep.rank0, "r": rep.r,
                "regular": rep.is_regular}
    if isinstance(obj, ScalarAbp):
        return {"kind": "scalar", "nvars": obj.nvars, "size": 0, "width": 0, "homogeneous": True}
    return {
        "kind": "abp",
        "nvars": obj.nvars,
        "widths": list(obj.widths),
        "size": obj.size(),
        "width": obj.width(),
        "layers": obj.n_layers,
        "matrices": obj.k,
        "homogeneous": obj.is_homogeneous(),
        "labels_homogeneous": obj.labels_homogeneous(),
        "degree_bound": obj.degree_bound(),
    }


def cmd_stats(args) -> int:
    sys.stdout.write(io.dumps(stats(io.load(args.inp))))
    return EXIT_OK


_RANGE = re.compile(r"^(n|d|w|blocks)=(\d+)(?:\.\.(\d+))?$")


def parse_range(text: str):
    m = _RANGE.match(text.strip())
    if not m:
        raise UsageError(f"bad --range {text!r}; expected e.g. n=2..6")
    lo = int(m.group(2))
    hi = int(m.group(3)) if m.group(3) else lo
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return m.group(1), list(range(lo, hi + 1))


def bench_rows(family: str, key: str, values: List[int], base: dict, mode: str, truncation: str,
               seed: int, trials: int, timing: bool = True):
    rows, failures = [], []
    for v in values:
        params = dict(base, **{key: v})
        obj = build_instance(family, params["n"], params["d"], params["w"], params["blocks"], seed)
        pen = _instance_pencil(obj)
        start = time.perf_counter()
        abp, rep = general_to_abp(pen, None if family == "r-regular" else params["d"], mode=mode,
                                  truncation=truncation, seed=seed)
        millis = (time.perf_counter() - start) * 1000.0
        if trials and not verify.pit_equal(abp, pen, trials=trials, seed=seed).ok:
            failures.append(params)
        rows.append({
            "family": family,
            "n": params["n"],
            "d": rep.d,
            "s": rep.s,
            "r": rep.r,
            "path": rep.path,
            "out_size": rep.out_size,
            "out_width": rep.out_width,
            "bound_size": rep.bound_size,
            "ratio": f"{rep.ratio:.6f}",
            "millis": f"{millis:.1f}" if timing else "0",
        })
    return rows, failures


def cmd_bench(args) -> int:
    key, values = parse_range(args.range)
    base = {"n": args.n, "d": args.d, "w": args.w, "blocks": args.blocks}
    rows, failures = bench_rows(args.family, key, values, base, args.mode, args.truncation, args.seed,
                                args.trials, timing=not args.no_timing)
    with open(args.csv, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    if failures:
        sys.stderr.write(json.dumps({"error": "VerificationFailed", "instances": failures}) + "\n")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# -- argument parsing --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dcabp", description="Determinantal representations to ABPs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def conversion_opts(p):
        p.add_argument("--mode", choices=("auto", "regular", "general"), default="auto")
        p.add_argument("--truncation", choices=("safe", "tight"), default="safe")
        p.add_argument("--size-constant", type=int, default=64)
        p.add_argument("--r-size-constant", type=int, default=64)
        p.add_argument("--seed", type=int, default=0)

    def family_opts(p, n_default=None, d_default=None):
        p.add_argument("--family", choices=FAMILIES, required=True)
        p.add_argument("--n", type=int, default=n_default, required=n_default is None)
        p.add_argument("--d", type=int, default=d_default, required=d_default is None)
        p.add_argument("--w", type=int, default=2)
        p.add_argument("--blocks", type=int, default=2)

    p = sub.add_parser("convert", help="convert a pencil into a homogeneous ABP")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--degree", type=int)
    p.add_argument("--report")
    conversion_opts(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("verify", help="test two pencils/ABPs for equality, or certify homogeneity")
    p.add_argument("--a", required=True)
    p.add_argument("--b")
    p.add_argument("--degree", type=int)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--symbolic", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate an instance")
    family_opts(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="print resource measures of a pencil or ABP")
    p.add_argument("--in", dest="inp", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="measure conversions over a parameter range")
    family_opts(p, n_default=3, d_default=3)
    p.add_argument("--range", required=True, help="e.g. n=2..6, d=2..5, w=1..4 or blocks=1..3")
    p.add_argument("--csv", required=True)
    p.add_argument("--trials", type=int, default=20, help="PIT trials per instance (0 disables)")
    p.add_argument("--no-timing", action="store_true", help="write 0 in the millis column")
    conversion_opts(p)
    p.set_defaults(func=cmd_bench, mode="general")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage and 0 after --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except PreconditionError as exc:
        sys.stderr.write(json.dumps(_diagnose(exc)) + "\n")
        return EXIT_PRECONDITION
    except (DcAbpError, ValueError, TypeError, OSError) as exc:
        sys.stderr.write(json.dumps(_diagnose(exc)) + "\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
