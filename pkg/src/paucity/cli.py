"""Command-line entry point.

Exit codes: 0 success, 1 a verification or oracle check failed, 2 usage error.
Numbers that may exceed 64 bits are written as decimal strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import cascade, counting, exponents, nrcount
from .symfunc import verify_witness

log = logging.getLogger("paucity")

CSV_HEADER = ["X", "I", "T", "diff", "elapsed_ms"]


class UsageError(Exception):
    pass


@dataclass
class ExperimentRow:
    X: int
    I: int
    T: int
    elapsed_ms: int

    @property
    def diff(self) -> int:
        return self.I - self.T

    def as_csv(self) -> list[str]:
        return [str(self.X), str(self.I), str(self.T), str(self.diff), str(self.elapsed_ms)]


@dataclass
class SlopeFit:
    slope: float | None
    intercept: float | None
    points_used: int
    excluded_zero: int

    def to_dict(self) -> dict:
        return {
            "slope": "NA" if self.slope is None else self.slope,
            "intercept": "NA" if self.intercept is None else self.intercept,
            "points_used": self.points_used,
            "excluded_zero": self.excluded_zero,
        }


def fit_slope(rows: list[ExperimentRow]) -> SlopeFit:
    """Least-squares slope of log(diff) against log(X), skipping diff == 0."""
    used = [r for r in rows if r.diff > 0]
    excluded = len(rows) - len(used)
    if len(used) < 2:
        return SlopeFit(None, None, len(used), excluded)
    # math.log handles integers beyond float range
    xs = np.array([math.log(r.X) for r in used])
    ys = np.array([math.log(r.diff) for r in used])
    slope, intercept = np.polyfit(xs, ys, 1)
    return SlopeFit(float(slope), float(intercept), len(used), excluded)


def read_rows(path) -> list[ExperimentRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return [ExperimentRow(int(r["X"]), int(r["I"]), int(r["T"]), int(r["elapsed_ms"])) for r in reader]


def write_rows(rows: list[ExperimentRow], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.as_csv())


# --- subcommands ------------------------------------------------------------

def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _require_kd(k: int, d: int, strict_half: bool = False) -> None:
    if k < 1 or d < 0 or d >= k:
        raise UsageError(f"need k >= 1 and 0 <= d < k, got k={k}, d={d}")
    if strict_half and not d < k / 2:
        raise UsageError(f"need d < k/2, got k={k}, d={d}")


def cmd_count(args) -> int:
    _require_kd(args.k, args.d)
    if args.xmax < 1:
        raise UsageError("--xmax must be >= 1")
    spec = counting.SystemSpec.incomplete(args.k, args.d)
    report = counting.count_fast(spec, args.xmax, threads=args.threads)
    out = report.to_dict(timing=args.verbose)
    status = 0
    if args.naive:
        naive = counting.count_naive(spec, args.xmax)
        out["naive"] = str(naive)
        out["naive_match"] = naive == report.I
        if naive != report.I:
            status = 1
    _emit(out)
    return status


def cmd_verify(args) -> int:
    _require_kd(args.k, args.d, strict_half=True)
    if args.xmax < 1:
        raise UsageError("--xmax must be >= 1")
    wits = counting.nondiagonal_witnesses(args.k, args.d, args.xmax, args.limit)
    failures = []
    for w in wits:
        rep = verify_witness(w)
        if not rep.passed:
            failures.append({"x": list(w.x), "y": list(w.y), "status": rep.status, "details": rep.details})
    _emit({
        "k": args.k,
        "d": args.d,
        "X": args.xmax,
        "witnesses": len(wits),
        "passed": len(wits) - len(failures),
        "failures": failures,
    })
    return 1 if failures else 0


def cmd_exponents(args) -> int:
    if args.k < 3:
        raise UsageError("exponents need k >= 3")
    if args.d < 0:
        raise UsageError("d must be >= 0")
    rep = exponents.exponent_report(args.k, args.d).to_dict()
    if not args.refined:
        rep.pop("gamma_refined")
        rep.pop("argmin_r_refined")
        rep.pop("omega_table")
    _emit(rep)
    return 0


def _parse_xlist(text: str) -> list[int]:
    try:
        xs = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--xlist must be comma-separated integers, got {text!r}")
    if len(xs) < 2:
        raise UsageError("--xlist needs at least two values")
    if xs[0] < 1 or any(b <= a for a, b in zip(xs, xs[1:])):
        raise UsageError("--xlist must be positive and strictly increasing")
    return xs


def cmd_experiment(args) -> int:
    if args.xlist is None:
        raise UsageError("--xlist is required")
    xs = _parse_xlist(args.xlist)
    _require_kd(args.k, args.d)
    spec = counting.SystemSpec.incomplete(args.k, args.d)
    rows = []
    for X in xs:
        rep = counting.count_fast(spec, X, threads=args.threads)
        rows.append(ExperimentRow(X, rep.I, rep.T, int(round(rep.elapsed * 1000))))
        log.info("X=%d diff=%d (%.2fs)", X, rep.diff, rep.elapsed)
    fit = fit_slope(rows)
    summary = {"k": args.k, "d": args.d, "rows": len(rows), "fit": fit.to_dict()}
    if args.k >= 3:
        summary["gamma"] = exponents.fmt(exponents.gamma(args.k, args.d)[0])
        summary["gamma_refined"] = exponents.fmt(exponents.gamma_refined(args.k, args.d)[0])
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_rows(rows, fh)
        summary["csv"] = args.out
        _emit(summary)
    else:
        buf = io.StringIO()
        write_rows(rows, buf)
        sys.stdout.write(buf.getvalue())
        sys.stderr.write(json.dumps(summary) + "\n")
    return 0


def _load_decompose_inputs(path: str, r: int):
    """Yield (label, ProductMatrix) from a matrix JSON file or witness JSON lines.

    A witness with too few distinct y values yields a message in place of a matrix.
    """
    with open(path) as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        obj = None
    if isinstance(obj, dict) and "u" in obj:
        yield "matrix", cascade.ProductMatrix.from_dict(obj)
        return
    for n, line in enumerate(text.splitlines()):
        if not line.strip():
            continue
        w = counting.witness_from_json(line)
        try:
            yield f"witness {n}", cascade.matrix_from_witness(w, r)
        except ValueError as exc:
            yield f"witness {n}", str(exc)


def cmd_decompose(args) -> int:
    if args.r < 1:
        raise UsageError("--r must be >= 1")
    try:
        items = list(_load_decompose_inputs(args.input, args.r))
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read {args.input}: {exc}")
    status = 0
    for label, m in items:
        if isinstance(m, str):
            _emit({"source": label, "skipped": m})
            continue
        entry = {"source": label, "X": m.X}
        problems = m.violations()
        if problems:
            entry["matrix_problems"] = problems
        try:
            table = cascade.cascade_extract(m)
        except cascade.CascadeError as exc:
            entry.update(ok=False, cascade_error=str(exc), index=list(exc.index))
            status = 1
            _emit(entry)
            continue
        rep = cascade.reconstruct_verify(table, m)
        entry.update(
            ok=rep.ok and rep.pigeonhole,
            table=table.to_dict(),
            B=[str(b) for b in rep.B],
            pigeonhole=rep.pigeonhole,
            mismatches=rep.mismatches,
        )
        if not entry["ok"]:
            status = 1
        _emit(entry)
    return status


def cmd_nr(args) -> int:
    _require_kd(args.k, args.d, strict_half=True)
    if args.xmax < 1:
        raise UsageError("--xmax must be >= 1")
    r = args.r
    if args.y:
        y = tuple(int(v) for v in args.y.split(","))
    else:
        y = tuple(range(1, r + 1))
    try:
        inst = nrcount.NrInstance(args.k, args.d, r, y, args.xmax, require_distinct=not args.allow_repeats)
    except ValueError as exc:
        raise UsageError(str(exc))
    n = nrcount.nr_count(inst)
    th = exponents.theta(args.d, r)
    _emit({
        "k": args.k, "d": args.d, "r": r, "y": list(y), "X": args.xmax,
        "N": str(n),
        "theta": th,
        "bound_exponent": nrcount.nr_bound_exponent(args.k, args.d, r),
        "ratio": exponents.fmt(nrcount.nr_ratio(inst)),
    })
    return 0


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paucity", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=3)
    common.add_argument("--d", type=int, default=0)
    common.add_argument("--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", parents=[common], help="count solutions of the incomplete system")
    c.add_argument("--xmax", type=int, required=True)
    c.add_argument("--naive", action="store_true", help="also run the brute-force oracle")
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", parents=[common], help="check the relations on non-diagonal witnesses")
    v.add_argument("--xmax", type=int, required=True)
    v.add_argument("--limit", type=int, default=10**6)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("exponents", parents=[common], help="exact exponent formulas")
    e.add_argument("--refined", action="store_true")
    e.set_defaults(func=cmd_exponents)

    x = sub.add_parser("experiment", parents=[common], help="sweep X and fit log(diff) vs log(X)")
    x.add_argument("--xlist")
    x.add_argument("--out")
    x.add_argument("--threads", type=int, default=1)
    x.set_defaults(func=cmd_experiment)

    dc = sub.add_parser("decompose", parents=[common], help="gcd cascade on a matrix or witness file")
    dc.add_argument("input")
    dc.add_argument("--r", type=int, default=2)
    dc.set_defaults(func=cmd_decompose)

    n = sub.add_parser("nr", parents=[common], help="count distinct tau tuples N_r")
    n.add_argument("--r", type=int, default=2)
    n.add_argument("--xmax", type=int, required=True)
    n.add_argument("--y", help="comma-separated fixed values y_1..y_r (default 1..r)")
    n.add_argument("--allow-repeats", action="store_true")
    n.set_defaults(func=cmd_nr)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    start = time.perf_counter()
    try:
        status = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"paucity: error: {exc}\n")
        return 2
    except counting.BudgetExceeded as exc:
        sys.stderr.write(f"paucity: refused: {exc}\n")
        return 2
    log.info("done in %.2fs", time.perf_counter() - start)
    return status


if __name__ == "__main__":
    sys.exit(main())
