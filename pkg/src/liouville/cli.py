"""Command-line surface.

Subcommands: eval, sum, trace, dirichlet, mean, greedy, kappa, charlike-sum,
classify, lmax, scan, phisigma, bench, verify.

Every report is a single JSON document (or CSV / plain rendering of the same
payload) carrying a schema version, the echoed request, the result, the
wall-clock duration, and budget notes disclosing any truncation or tail
bound. Parameters are validated before any computation starts, and nothing is
printed when a command fails; errors go to stderr with the exit-code contract

    0 success, 1 domain error, 2 resource limit exceeded, 3 validation error.

Prime sets are written in the grammar of ``parse_prime_set``:
all | none | finite:2,3,5 | tail:100 | residues:8:3,5 | nonres:7 | cubegap
| complement:(...). Rationals are given as ``a/b`` or decimal strings, and n
may be a decimal string of arbitrary length wherever the operation supports
big integers.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import statistics
import sys
import time
from dataclasses import asdict
from fractions import Fraction

import numpy as np

from . import arith, charlike, dirichlet, genliouville, meanvalue, verify
from .config import budgets
from .errors import LiouvilleError, ValidationError
from .primesets import parse_prime_set

SCHEMA_VERSION = "1.0"

_SUBCOMMANDS = (
    "eval",
    "sum",
    "trace",
    "dirichlet",
    "mean",
    "greedy",
    "kappa",
    "charlike-sum",
    "classify",
    "lmax",
    "scan",
    "phisigma",
    "bench",
    "verify",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def _int_arg(text, name):
    """Sizes may be plain ints, underscore-grouped, or exact scientific forms like 1e9."""
    if isinstance(text, int):
        return text
    t = str(text).strip().replace("_", "")
    try:
        return int(t)
    except ValueError:
        pass
    try:
        f = float(t)
    except ValueError:
        raise ValidationError(f"{name} must be an integer, got {text!r}") from None
    if f != int(f):
        raise ValidationError(f"{name} must be an integer, got {text!r}")
    return int(f)


def build_parser() -> _Parser:
    parser = _Parser(prog="liouville", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--format",
        choices=("json", "csv", "plain"),
        default="json",
        help="report rendering (default json)",
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=1,
        help="advisory worker count; reports are identical for any value",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="pointwise sign and factor count for a prime set")
    p.add_argument("--set", required=True, dest="pset")
    p.add_argument("--n", required=True)

    p = sub.add_parser("sum", help="summatory value at x")
    p.add_argument("--set", required=True, dest="pset")
    p.add_argument("--x", required=True)

    p = sub.add_parser("trace", help="summatory value with prefix-path extrema")
    p.add_argument("--set", required=True, dest="pset")
    p.add_argument("--x", required=True)
    p.add_argument("--emit-path", action="store_true", help="include the full path (x <= 100000)")

    p = sub.add_parser("dirichlet", help="truncated Euler-product evaluation at s")
    p.add_argument("--set", required=True, dest="pset")
    p.add_argument("--s", required=True, type=float)
    p.add_argument("--truncation", default=1_000_000)

    p = sub.add_parser("mean", help="mean-value bracket for a prime set")
    p.add_argument("--set", required=True, dest="pset")
    p.add_argument("--truncation", default=50)

    p = sub.add_parser("greedy", help="greedy mean-value construction for a target alpha")
    p.add_argument("--alpha", required=True)
    p.add_argument("--primes", type=int, default=None, help="stop after this many primes")
    p.add_argument("--width", default=None, help="stop once partial - alpha <= width")

    p = sub.add_parser("kappa", help="density-parameter estimate from prime sums")
    p.add_argument("--set", required=True, dest="pset")
    p.add_argument("--x", required=True)

    p = sub.add_parser("charlike-sum", help="character-like summatory value at n")
    p.add_argument("--p", required=True, type=int)
    p.add_argument("--n", required=True)
    p.add_argument("--strategy", choices=("digit", "sieve"), default="digit")

    p = sub.add_parser("classify", help="primes whose summatory function stays nonnegative")
    p.add_argument("--limit", required=True)

    p = sub.add_parser("lmax", help="exact summatory extremum below p^i")
    p.add_argument("--p", required=True, type=int)
    p.add_argument("--i", required=True, type=int)

    p = sub.add_parser("scan", help="per-decade growth of max |L_p| against log t")
    p.add_argument("--p", required=True, type=int)
    p.add_argument("--x", required=True)

    p = sub.add_parser("phisigma", help="search phi(z)/sigma(z) = q over square-free z")
    p.add_argument("--q", required=True)
    p.add_argument("--bound", required=True)

    p = sub.add_parser("bench", help="digit formula vs sieve timing table")
    p.add_argument("--p", type=int, default=7)
    p.add_argument("--sizes", required=True, help="comma-separated n values, e.g. 1e6,1e9")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--strategies", default="digit,sieve")

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--scale", choices=sorted(verify.SCALES), default="default")
    p.add_argument("--seed", type=int, default=0)

    return parser


def _trace_payload(tr):
    return {
        "x": tr.x,
        "value": tr.value,
        "running_min": tr.running_min,
        "running_max": tr.running_max,
    }


def _cmd_eval(args, notes):
    pset = parse_prime_set(args.pset)
    n = arith.as_natural(args.n, "n")
    k = genliouville.omega_a(n, pset)
    return {"set": pset.label, "n": n, "omega": k, "lambda": -1 if k % 2 else 1}


def _cmd_sum(args, notes):
    pset = parse_prime_set(args.pset)
    x = arith.as_natural(args.x, "x")
    tr = genliouville.summatory(x, pset)
    return {"set": pset.label, **_trace_payload(tr)}


def _cmd_trace(args, notes):
    pset = parse_prime_set(args.pset)
    x = arith.as_natural(args.x, "x")
    if args.emit_path and x > 100_000:
        raise ValidationError("--emit-path is limited to x <= 100000")
    tr = genliouville.summatory(x, pset, with_path=True)
    payload = {"set": pset.label, **_trace_payload(tr)}
    if args.emit_path:
        payload["path"] = tr.path.tolist()
    else:
        payload["path_length"] = int(tr.path.shape[0])
        notes.append("path computed but omitted; pass --emit-path to include it")
    return payload


def _cmd_dirichlet(args, notes):
    pset = parse_prime_set(args.pset)
    truncation = _int_arg(args.truncation, "truncation")
    ev = dirichlet.dirichlet_eval(args.s, pset, truncation)
    if ev.product_tail_bound:
        notes.append(
            f"euler product truncated at {ev.truncation}; tail bound {ev.product_tail_bound:.3e}"
        )
    notes.append(f"zeta evaluation error bound {ev.zeta_error:.3e}")
    return asdict(ev)


def _cmd_mean(args, notes):
    pset = parse_prime_set(args.pset)
    truncation = _int_arg(args.truncation, "truncation")
    bracket = meanvalue.mean_value(pset, truncation)
    if bracket.provenance == "tail-bounded":
        notes.append(
            f"partial product over {truncation} primes; bracket width {float(bracket.width):.3e}"
        )
    return {
        "set": pset.label,
        "lower": bracket.lower,
        "upper": bracket.upper,
        "point": bracket.point,
        "provenance": bracket.provenance,
        "width": float(bracket.width),
    }


def _cmd_greedy(args, notes):
    if args.primes is None and args.width is None:
        g = meanvalue.greedy_construct(args.alpha)
    else:
        width = None if args.width is None else args.width
        g = meanvalue.greedy_construct(args.alpha, max_primes=args.primes, width=width)
    notes.append(f"terminated with width {float(g.width):.3e} after {len(g.primes)} primes")
    return {
        "alpha": g.alpha,
        "primes": list(g.primes),
        "partials": [str(f) for f in g.partials],
        "width": g.width,
        "width_float": float(g.width),
    }


def _cmd_kappa(args, notes):
    pset = parse_prime_set(args.pset)
    x = _int_arg(args.x, "x")
    est = meanvalue.kappa_estimate(pset, x)
    if est.degenerate:
        notes.append("degenerate fit: fewer than 3 checkpoints contain primes of the set")
    return {
        "set": pset.label,
        "kappa_hat": est.kappa_hat,
        "residual": est.residual,
        "degenerate": est.degenerate,
        "samples": [[t, s] for t, s in est.samples],
    }


def _cmd_charlike_sum(args, notes):
    if args.strategy == "digit":
        value = charlike.summatory_digit(args.n, args.p)
        return {"p": args.p, "n": str(arith.as_natural(args.n)), "strategy": "digit", "value": value}
    tr = charlike.summatory_sieve(arith.as_natural(args.n, "n"), args.p)
    return {"p": args.p, "n": str(tr.x), "strategy": "sieve", **_trace_payload(tr)}


def _cmd_classify(args, notes):
    limit = _int_arg(args.limit, "limit")
    return {"limit": limit, "primes": charlike.classify_lplus(limit)}


def _cmd_lmax(args, notes):
    ext = charlike.lmax(args.p, args.i)
    return {
        "p": ext.p,
        "i": ext.i,
        "max_value": ext.max_value,
        "digits": list(ext.digits),
        "witnesses": [str(w) for w in ext.witnesses],
    }


def _cmd_scan(args, notes):
    x = _int_arg(args.x, "x")
    records = charlike.log_bound_scan(args.p, x)
    return {
        "p": args.p,
        "x": x,
        "records": [{"t": r.t, "max_abs": r.max_abs, "ratio": r.ratio} for r in records],
    }


def _cmd_phisigma(args, notes):
    bound = _int_arg(args.bound, "bound")
    res = meanvalue.phi_sigma_target(args.q, bound)
    if res.found is None:
        notes.append("search exhausted; closest achieved ratios reported")
    return {
        "q": res.target,
        "search_bound": res.search_bound,
        "found": res.found,
        "closest": [[z, str(r)] for z, r in res.closest],
        "nodes": res.nodes,
    }


def _bench_cell(strategy, n, p, reps):
    b = budgets()
    if strategy == "digit":
        if n > b.digit_limit:
            return {"status": "over-budget", "median_seconds": None, "value": None}
        charlike.character_profile(p)  # profile build excluded from the timing
        times = []
        value = None
        for _ in range(reps):
            t0 = time.perf_counter()
            value = charlike.summatory_digit(n, p)
            times.append(time.perf_counter() - t0)
        return {"status": "ok", "median_seconds": statistics.median(times), "value": value}
    if n > b.sieve_limit:
        return {"status": "over-budget", "median_seconds": None, "value": None}
    times = []
    value = None
    for _ in range(reps):
        t0 = time.perf_counter()
        value = charlike.summatory_sieve(n, p).value
        times.append(time.perf_counter() - t0)
    return {"status": "ok", "median_seconds": statistics.median(times), "value": value}


def _cmd_bench(args, notes):
    if args.reps < 5:
        raise ValidationError("bench needs at least 5 repetitions per cell")
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    for s in strategies:
        if s not in ("digit", "sieve"):
            raise ValidationError(f"unknown strategy {s!r}")
    if not strategies:
        raise ValidationError("no strategies selected")
    sizes = [_int_arg(s, "size") for s in args.sizes.split(",") if s.strip()]
    if not sizes:
        raise ValidationError("no sizes given")
    charlike.character_profile(args.p)
    rows = []
    for n in sizes:
        for strategy in strategies:
            cell = _bench_cell(strategy, n, args.p, args.reps)
            rows.append({"strategy": strategy, "n": n, "p": args.p, "reps": args.reps, **cell})
            if cell["status"] != "ok":
                notes.append(f"{strategy} at n={n}: over budget, cell reported not fatal")
    return {"rows": rows}


def _cmd_verify(args, notes):
    results = verify.run_suite(args.scale, args.seed)
    failed = [r.name for r in results if not r.ok]
    if failed:
        notes.append(f"failed checks: {', '.join(failed)}")
    return {
        "scale": args.scale,
        "seed": args.seed,
        "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results],
        "all_ok": not failed,
    }


_HANDLERS = {
    "eval": _cmd_eval,
    "sum": _cmd_sum,
    "trace": _cmd_trace,
    "dirichlet": _cmd_dirichlet,
    "mean": _cmd_mean,
    "greedy": _cmd_greedy,
    "kappa": _cmd_kappa,
    "charlike-sum": _cmd_charlike_sum,
    "classify": _cmd_classify,
    "lmax": _cmd_lmax,
    "scan": _cmd_scan,
    "phisigma": _cmd_phisigma,
    "bench": _cmd_bench,
    "verify": _cmd_verify,
}

_CSV_TABLES = {
    "scan": ("records", ("t", "max_abs", "ratio")),
    "bench": ("rows", ("strategy", "n", "p", "reps", "median_seconds", "value", "status")),
}


def _render_csv(command, result) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if command in _CSV_TABLES:
        key, header = _CSV_TABLES[command]
        writer.writerow(header)
        for row in result[key]:
            writer.writerow([row[h] for h in header])
    elif command == "classify":
        writer.writerow(["p"])
        for p in result["primes"]:
            writer.writerow([p])
    elif command == "kappa":
        writer.writerow(["t", "partial_sum"])
        for t, s in result["samples"]:
            writer.writerow([t, s])
    elif command == "greedy":
        writer.writerow(["index", "prime", "partial"])
        for i, (p, f) in enumerate(zip(result["primes"], result["partials"]), start=1):
            writer.writerow([i, p, f])
    else:
        raise ValidationError(
            f"csv output is defined for scan, bench, classify, kappa, greedy; not {command!r}"
        )
    return buf.getvalue()


def _render_plain(report) -> str:
    lines = [f"command: {report['command']}"]
    for k, v in sorted(report["params"].items()):
        lines.append(f"  {k}: {v}")
    lines.append("result:")
    lines.append(json.dumps(report["result"], indent=2, sort_keys=True, default=_json_default))
    for note in report["budget_notes"]:
        lines.append(f"note: {note}")
    lines.append(f"elapsed: {report['timing_seconds']:.6f}s")
    return "\n".join(lines)


def run(args) -> tuple[str, int]:
    """Execute a parsed request; returns (rendered report, exit code)."""
    if args.workers < 1:
        raise ValidationError("--workers must be at least 1")
    notes: list[str] = []
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in ("command", "format", "workers") and v is not None
    }
    started = time.perf_counter()
    result = _HANDLERS[args.command](args, notes)
    elapsed = time.perf_counter() - started
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "params": params,
        "result": result,
        "timing_seconds": round(elapsed, 6),
        "budget_notes": notes,
    }
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True, default=_json_default)
    elif args.format == "csv":
        text = _render_csv(args.command, result)
    else:
        text = _render_plain(report)
    code = 0
    if args.command == "verify" and not result["all_ok"]:
        code = 1
    return text, code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text, code = run(args)
    except LiouvilleError as exc:
        err = {
            "schema_version": SCHEMA_VERSION,
            "error": type(exc).__name__,
            "message": str(exc),
            "exit_code": exc.exit_code,
        }
        print(json.dumps(err, indent=2, sort_keys=True), file=sys.stderr)
        return exc.exit_code
    print(text)
    return code


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
