"""Command-line surface with bit-exact output formats.

Layout rules that tests rely on:
  * stdout carries only the machine-readable payload (CSV or a JSON
    envelope); progress, warnings and summaries go to stderr.
  * CSV bytes are identical across runs and worker counts.
  * exit 0 success, 1 hypothesis violation or selftest failure, 2 usage or
    input error.  Nothing else.

Option precedence: command-line flag, then the PARALLELO_THREADS
environment variable (threads only), then the config file (key=value,
same keys as the long flags), then defaults.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .exact_math import primes_up_to, set_sieve_max
from .experiments import (
    VISIBLE_DENSITY,
    ScanReport,
    conjecture_scan,
    discrepancy,
    median_deviation,
    parse_rho,
    phi_mean,
    profile,
    rho_sequence,
    square_density,
)
from .lattice import LatticePoint, Parallelogram, reduce_to_canonical
from .visible_count import (
    closed_form_special,
    count_direct,
    count_formula,
    count_mobius_ratio,
    count_visible,
)

SCHEMA_VERSION = "1"

DEFAULT_SIEVE_MAX = 10**6


@dataclass(frozen=True)
class RunConfig:
    method: str = "auto"         # auto = closed form when available, else direct
    sieve_max: int = DEFAULT_SIEVE_MAX
    threads: int = 1             # 0 = auto (one worker per cpu)
    out_format: str = "csv"
    out_path: str | None = None


_CONFIG_KEYS = ("method", "sieve_max", "threads", "format", "out")


def load_config_file(path: str) -> dict[str, str]:
    """key=value lines; blank lines and # comments ignored; keys match flags."""
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ValueError(
                        f"{path}:{lineno}: expected key=value, got {line!r}"
                    )
                key, _, value = line.partition("=")
                key = key.strip()
                if key not in _CONFIG_KEYS:
                    raise ValueError(
                        f"{path}:{lineno}: unknown config key {key!r}; "
                        f"known keys: {', '.join(_CONFIG_KEYS)}"
                    )
                values[key] = value.strip()
    except OSError as e:
        raise ValueError(f"cannot read config file {path}: {e}") from None
    return values


def _int_config(raw: str, what: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{what} must be an integer, got {raw!r}") from None


def resolve_config(args: argparse.Namespace) -> RunConfig:
    file_cfg = load_config_file(args.config) if args.config else {}

    method = getattr(args, "method", None) or file_cfg.get("method") or "auto"
    if method not in ("auto", "direct", "formula"):
        raise ValueError(f"method must be auto, direct or formula, got {method!r}")

    if args.threads is not None:
        threads = args.threads
    elif os.environ.get("PARALLELO_THREADS"):
        threads = _int_config(os.environ["PARALLELO_THREADS"], "PARALLELO_THREADS")
    elif "threads" in file_cfg:
        threads = _int_config(file_cfg["threads"], "config threads")
    else:
        threads = 1
    if threads < 0:
        raise ValueError(f"threads must be nonnegative, got {threads}")

    if args.sieve_max is not None:
        sieve_max = args.sieve_max
    elif "sieve_max" in file_cfg:
        sieve_max = _int_config(file_cfg["sieve_max"], "config sieve_max")
    else:
        sieve_max = DEFAULT_SIEVE_MAX
    if sieve_max < 1:
        raise ValueError(f"sieve_max must be positive, got {sieve_max}")

    out_format = args.format or file_cfg.get("format") or "csv"
    if out_format not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {out_format!r}")

    out_path = args.out or file_cfg.get("out") or None
    return RunConfig(method=method, sieve_max=sieve_max, threads=threads,
                     out_format=out_format, out_path=out_path)


def effective_workers(threads: int) -> int:
    return threads if threads > 0 else (os.cpu_count() or 1)


# === output plumbing ===

def _f12(x: float) -> str:
    """12 significant digits, the convenience-column float format."""
    return f"{x:.12g}"


def rational_json(r: Fraction) -> dict:
    return {"num": r.numerator, "den": r.denominator, "decimal": float(r)}


def make_check(name: str, passed: bool, detail: str) -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def render_envelope(command: str, parameters: dict, records: list[dict],
                    checks: list[dict]) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "records": records,
        "checks": checks,
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def render_csv(header: list[str], rows: list[list]) -> str:
    sink = io.StringIO()
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return sink.getvalue()


def emit(text: str, cfg: RunConfig) -> None:
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"wrote {cfg.out_path}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _checks_exit(checks: list[dict]) -> int:
    return 0 if all(c["passed"] for c in checks) else 1


# === commands ===

def cmd_count(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    set_sieve_max(cfg.sieve_max)
    par = Parallelogram(args.a, args.n)
    result = count_visible(par, method=cfg.method)
    ratio = result.ratio
    checks: list[dict] = []
    special = closed_form_special(par)
    if special is not None and result.method != "closed_form":
        checks.append(make_check(
            "closed_form_agreement", special == result.v,
            f"closed form gives {special}, {result.method} gives {result.v}"))
    if args.verify:
        direct = count_direct(par).v
        formula = count_formula(par).v
        mob_ratio, report = count_mobius_ratio(par)
        checks.append(make_check(
            "routes_agree", direct == formula == result.v,
            f"direct {direct}, formula {formula}, reported {result.v}"))
        checks.append(make_check(
            "ratio_identity", mob_ratio * par.n == direct,
            f"main {report.main_term} + ({report.double_sum} - 1)/n = {mob_ratio}"))
    if cfg.out_format == "json":
        text = render_envelope(
            "count",
            {"a": par.a, "n": par.n, "method": cfg.method},
            [{"a": par.a, "n": par.n, "V": result.v,
              "ratio": rational_json(ratio), "method": result.method}],
            checks)
    else:
        header = ["a", "n", "V", "ratio_num", "ratio_den", "ratio_float", "method"]
        row = [par.a, par.n, result.v, ratio.numerator, ratio.denominator,
               _f12(float(ratio)), result.method]
        text = render_csv(header, [row])
    emit(text, cfg)
    return _checks_exit(checks)


def cmd_profile(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    set_sieve_max(cfg.sieve_max)
    if args.n < 2:
        raise ValueError(f"n must be at least 2, got {args.n}")
    method = cfg.method
    records = profile(args.n, method=method,
                      workers=effective_workers(cfg.threads))
    checks = [make_check(
        "extreme_slopes", records[0].v == args.n - 1 and records[-1].v == 1,
        f"V(1,n) = {records[0].v}, V(n-1,n) = {records[-1].v}")]
    if cfg.out_format == "json":
        text = render_envelope(
            "profile", {"n": args.n, "method": method},
            [{"n": r.n, "a": r.a, "V": r.v, "ratio": rational_json(r.ratio)}
             for r in records],
            checks)
    else:
        header = ["n", "a", "V", "ratio_num", "ratio_den", "ratio_float"]
        rows = [[r.n, r.a, r.v, r.ratio.numerator, r.ratio.denominator,
                 _f12(r.ratio_float)] for r in records]
        text = render_csv(header, rows)
    emit(text, cfg)
    if args.plot:
        from . import plotting

        plotting.profile_figure(records, args.plot)
        _log(f"wrote figure {args.plot}")
    return _checks_exit(checks)


def _scan_summary_fields(report: ScanReport) -> dict:
    out: dict = {
        "n_min": report.n_min, "n_max": report.n_max,
        "pairs_checked": report.pairs_checked,
        "excluded": report.excluded,
        "violation_count": len(report.violations),
    }
    if report.min_ratio is not None:
        out["min_ratio"] = rational_json(report.min_ratio)
        out["min_witness"] = {"a": report.min_witness[0], "n": report.min_witness[1]}
        out["max_ratio"] = rational_json(report.max_ratio)
        out["max_witness"] = {"a": report.max_witness[0], "n": report.max_witness[1]}
    else:
        out["min_ratio"] = out["min_witness"] = None
        out["max_ratio"] = out["max_witness"] = None
    return out


def cmd_scan(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    set_sieve_max(cfg.sieve_max)
    n_min = args.n_min
    if args.resume_from is not None:
        if args.resume_from > args.n_max:
            raise ValueError(
                f"--resume-from {args.resume_from} is beyond --n-max {args.n_max}")
        n_min = max(n_min, args.resume_from)
    total = args.n_max - n_min + 1
    stride = max(1, total // 20)

    def progress(n: int) -> None:
        if (n - n_min) % stride == stride - 1 or n == args.n_max:
            _log(f"scan: n = {n} done")

    report = conjecture_scan(
        n_min, args.n_max,
        workers=effective_workers(cfg.threads),
        method=cfg.method,
        keep_per_n=bool(args.per_n or args.plot),
        progress=progress if not args.quiet else None,
    )
    ok = report.holds
    checks = [make_check(
        "conjecture_bounds_hold", ok,
        f"{len(report.violations)} violation(s) across {report.pairs_checked} pairs")]
    for rec in report.violations:
        _log(f"violation: n={rec.n} a={rec.a} V={rec.v} ratio={rec.ratio}")
    if cfg.out_format == "json":
        records = [dict(kind="summary", **_scan_summary_fields(report))]
        records += [{"kind": "violation", "n": r.n, "a": r.a, "V": r.v,
                     "ratio": rational_json(r.ratio)} for r in report.violations]
        if args.per_n:
            records += [{"kind": "per_n", "n": s.n, "pairs": s.pairs,
                         "min_a": s.min_a, "min_ratio": rational_json(s.min_ratio),
                         "max_a": s.max_a, "max_ratio": rational_json(s.max_ratio)}
                        for s in report.per_n]
        text = render_envelope(
            "scan",
            {"n_min": n_min, "n_max": args.n_max, "method": cfg.method,
             "resume_from": args.resume_from},
            records, checks)
    elif args.per_n:
        header = ["n", "pairs", "min_a", "min_ratio_num", "min_ratio_den",
                  "min_ratio_float", "max_a", "max_ratio_num", "max_ratio_den",
                  "max_ratio_float"]
        rows = [[s.n, s.pairs, s.min_a, s.min_ratio.numerator,
                 s.min_ratio.denominator, _f12(float(s.min_ratio)), s.max_a,
                 s.max_ratio.numerator, s.max_ratio.denominator,
                 _f12(float(s.max_ratio))] for s in report.per_n]
        text = render_csv(header, rows)
        _log(f"scan summary: {report.pairs_checked} pairs, "
             f"{len(report.violations)} violation(s)")
    else:
        header = ["n_min", "n_max", "pairs_checked", "violations",
                  "min_ratio_num", "min_ratio_den", "min_ratio_float",
                  "min_a", "min_n", "max_ratio_num", "max_ratio_den",
                  "max_ratio_float", "max_a", "max_n"]
        if report.min_ratio is not None:
            row = [report.n_min, report.n_max, report.pairs_checked,
                   len(report.violations),
                   report.min_ratio.numerator, report.min_ratio.denominator,
                   _f12(float(report.min_ratio)),
                   report.min_witness[0], report.min_witness[1],
                   report.max_ratio.numerator, report.max_ratio.denominator,
                   _f12(float(report.max_ratio)),
                   report.max_witness[0], report.max_witness[1]]
        else:
            row = [report.n_min, report.n_max, 0, 0] + [""] * 10
        text = render_csv(header, [row])
    emit(text, cfg)
    if args.plot:
        from . import plotting

        if report.per_n:
            plotting.scan_figure(report.per_n, args.plot)
            _log(f"wrote figure {args.plot}")
        else:
            _log("no per-n data to plot; scan range was empty")
    return 0 if ok else 1


def cmd_reduce(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    set_sieve_max(cfg.sieve_max)
    u = LatticePoint(*args.u)
    v = LatticePoint(*args.v)
    result = reduce_to_canonical(u, v)
    par = result.canonical
    m = result.map
    pair = (v, u) if result.swapped else (u, v)
    sends = (m.apply(pair[0]) == (1, 0)
             and m.apply(pair[1]) == (par.a, par.n))
    checks = [make_check(
        "map_sends_basis_to_canonical", sends,
        f"images {tuple(m.apply(pair[0]))} and {tuple(m.apply(pair[1]))}")]
    count = count_visible(par, method=cfg.method)
    if cfg.out_format == "json":
        text = render_envelope(
            "reduce",
            {"u": [u.x, u.y], "v": [v.x, v.y], "method": cfg.method},
            [{"a": par.a, "n": par.n,
              "map": {"m11": m.m11, "m12": m.m12, "m21": m.m21, "m22": m.m22},
              "swapped": result.swapped, "V": count.v,
              "ratio": rational_json(count.ratio)}],
            checks)
    else:
        header = ["ux", "uy", "vx", "vy", "a", "n", "m11", "m12", "m21", "m22",
                  "swapped", "V"]
        row = [u.x, u.y, v.x, v.y, par.a, par.n, m.m11, m.m12, m.m21, m.m22,
               str(result.swapped).lower(), count.v]
        text = render_csv(header, [row])
    emit(text, cfg)
    return _checks_exit(checks)


def cmd_rho(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    set_sieve_max(cfg.sieve_max)
    rho = parse_rho(args.name if args.name else args.value)
    if rho.warning:
        _log(f"warning: {rho.warning}")
    if args.n_min < 2:
        raise ValueError(f"--n-min must be at least 2, got {args.n_min}")
    if args.n_max < args.n_min:
        raise ValueError(
            f"--n-max must be at least --n-min, got {args.n_max} < {args.n_min}")
    if args.primes:
        n_values = [p for p in primes_up_to(args.n_max) if p >= args.n_min]
    else:
        if args.step < 1:
            raise ValueError(f"--step must be positive, got {args.step}")
        n_values = list(range(args.n_min, args.n_max + 1, args.step))
    records = rho_sequence(rho, n_values, policy=args.policy, method=cfg.method)
    live = [r for r in records if not r.skipped]
    med = median_deviation(records)
    if med is None:
        _log("summary: every row was skipped, no deviations to aggregate")
    else:
        _log(f"summary: median |V/n - 6/pi^2| = {med:.6g} over {len(live)} rows "
             f"({len(records) - len(live)} skipped), target {VISIBLE_DENSITY}")
    checks = [make_check(
        "rows_counted", bool(live),
        f"{len(live)} counted, {len(records) - len(live)} skipped")]
    if cfg.out_format == "json":
        recs = []
        for r in records:
            d: dict = {"n": r.n, "a": r.a, "skipped": r.skipped, "reason": r.reason}
            if not r.skipped:
                d["V"] = r.v
                d["ratio"] = rational_json(r.ratio)
                d["deviation"] = r.deviation
            recs.append(d)
        text = render_envelope(
            "rho",
            {"rho": rho.name, "n_min": args.n_min, "n_max": args.n_max,
             "step": args.step, "primes": bool(args.primes),
             "policy": args.policy,
             "median_deviation": med},
            recs, checks)
    else:
        header = ["n", "a", "skipped", "reason", "V", "ratio_num", "ratio_den",
                  "ratio_float", "deviation"]
        rows = []
        for r in records:
            if r.skipped:
                rows.append([r.n, r.a, "true", r.reason, "", "", "", "", ""])
            else:
                rows.append([r.n, r.a, "false", r.reason, r.v,
                             r.ratio.numerator, r.ratio.denominator,
                             _f12(float(r.ratio)), _f12(r.deviation)])
        text = render_csv(header, rows)
    emit(text, cfg)
    if args.plot:
        from . import plotting

        plotting.rho_figure(records, args.plot, rho.name)
        _log(f"wrote figure {args.plot}")
    return 0


def cmd_phimean(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    set_sieve_max(cfg.sieve_max)
    if args.a < 1:
        raise ValueError(f"--a must be positive, got {args.a}")
    mean = phi_mean(args.a)
    dev = abs(float(mean) - VISIBLE_DENSITY)
    if cfg.out_format == "json":
        text = render_envelope(
            "phimean", {"a": args.a},
            [{"a": args.a, "mean": rational_json(mean), "deviation": dev}],
            [])
    else:
        header = ["a", "mean_num", "mean_den", "mean_float", "deviation"]
        row = [args.a, mean.numerator, mean.denominator, _f12(float(mean)),
               _f12(dev)]
        text = render_csv(header, [row])
    emit(text, cfg)
    return 0


def cmd_density(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    if args.r < 1:
        raise ValueError(f"--r must be positive, got {args.r}")
    visible, total, ratio = square_density(args.r)
    dev = abs(ratio - VISIBLE_DENSITY)
    if cfg.out_format == "json":
        text = render_envelope(
            "density", {"r": args.r},
            [{"r": args.r, "visible": visible, "total": total,
              "ratio": ratio, "deviation": dev}],
            [])
    else:
        header = ["r", "visible", "total", "ratio", "deviation"]
        row = [args.r, visible, total, _f12(ratio), _f12(dev)]
        text = render_csv(header, [row])
    emit(text, cfg)
    return 0


def cmd_discrepancy(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    set_sieve_max(cfg.sieve_max)
    par = Parallelogram(args.a, args.n)
    q = args.q if args.q is not None else par.a
    value = discrepancy(par, q)
    if cfg.out_format == "json":
        text = render_envelope(
            "discrepancy", {"a": par.a, "n": par.n, "q": q},
            [{"a": par.a, "n": par.n, "q": q, "discrepancy": value}],
            [])
    else:
        header = ["a", "n", "q", "discrepancy"]
        row = [par.a, par.n, q, _f12(value)]
        text = render_csv(header, [row])
    emit(text, cfg)
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    set_sieve_max(cfg.sieve_max)
    from .selftest import run_selftest

    results = run_selftest(quick=args.quick, log=_log)
    checks = [make_check(r.name, r.passed, r.detail) for r in results]
    if cfg.out_format == "json":
        text = render_envelope("selftest", {"quick": bool(args.quick)}, [], checks)
    else:
        header = ["check", "passed", "detail"]
        rows = [[c["name"], str(c["passed"]).lower(), c["detail"]] for c in checks]
        text = render_csv(header, rows)
    emit(text, cfg)
    failed = [c for c in checks if not c["passed"]]
    if failed:
        _log(f"selftest failed: first failing property is {failed[0]['name']!r}")
        return 1
    return 0


# === parser ===

def _pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected X,Y integers, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="output format (default csv)")
    common.add_argument("--out", default=None, metavar="PATH",
                        help="write output to a file instead of stdout")
    common.add_argument("--config", default=None, metavar="PATH",
                        help="key=value config file, same keys as flags")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes, 0 = one per cpu "
                             "(env PARALLELO_THREADS is the fallback)")
    common.add_argument("--sieve-max", type=int, default=None,
                        help="memory budget for sieve tables")
    common.add_argument("--method", choices=("auto", "direct", "formula"),
                        default=None, help="counting route (default auto)")

    parser = argparse.ArgumentParser(
        prog="parallelo",
        description="Exact visible-lattice-point counts in clean parallelograms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common],
                       help="count visible points for one (a, n)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true",
                   help="cross-check both routes and the ratio identity")
    p.set_defaults(cmd_func=cmd_count)

    p = sub.add_parser("profile", parents=[common],
                       help="V(a,n)/n over every admissible slope of one n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--plot", default=None, metavar="PATH",
                   help="also render the profile figure to PATH")
    p.set_defaults(cmd_func=cmd_profile)

    p = sub.add_parser("scan", parents=[common],
                       help="check 1/2 < V/n < 3/4 over a range of n")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--resume-from", type=int, default=None, metavar="N",
                   help="restart an interrupted scan at this n")
    p.add_argument("--per-n", action="store_true",
                   help="emit per-n extremes instead of the single summary row")
    p.add_argument("--quiet", action="store_true", help="suppress progress lines")
    p.add_argument("--plot", default=None, metavar="PATH",
                   help="render per-n extremes to PATH")
    p.set_defaults(cmd_func=cmd_scan)

    p = sub.add_parser("reduce", parents=[common],
                       help="canonicalize the parallelogram spanned by u and v")
    p.add_argument("--u", type=_pair, required=True, metavar="X,Y")
    p.add_argument("--v", type=_pair, required=True, metavar="X,Y")
    p.set_defaults(cmd_func=cmd_reduce)

    p = sub.add_parser("rho", parents=[common],
                       help="ratios along a = ceil(rho * n)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--name", choices=("golden",),
                     help="a named irrational rho")
    src.add_argument("--value", help="exact rational rho, e.g. 1/2 or 0.375")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--primes", action="store_true",
                   help="visit prime n only (ignores --step)")
    p.add_argument("--policy", choices=("skip", "nearest"), default="skip",
                   help="what to do when gcd(ceil(rho n), n) > 1")
    p.add_argument("--plot", default=None, metavar="PATH")
    p.set_defaults(cmd_func=cmd_rho)

    p = sub.add_parser("phimean", parents=[common],
                       help="exact mean of phi(s)/s for s <= a")
    p.add_argument("--a", type=int, required=True)
    p.set_defaults(cmd_func=cmd_phimean)

    p = sub.add_parser("density", parents=[common],
                       help="visible-point density over the square [-r, r]^2")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(cmd_func=cmd_density)

    p = sub.add_parser("discrepancy", parents=[common],
                       help="star discrepancy of the fractional parts k*n/a")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=None,
                   help="how many points (default a, the full cycle)")
    p.set_defaults(cmd_func=cmd_discrepancy)

    p = sub.add_parser("selftest", parents=[common],
                       help="run the invariant suite at desk scale")
    p.add_argument("--quick", action="store_true", help="reduced ranges")
    p.set_defaults(cmd_func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for usage errors; keep the contract
        return e.code if isinstance(e.code, int) and e.code in (0, 2) else 2
    try:
        return args.cmd_func(args)
    except BrokenPipeError:
        return 0
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    console_main()
