"""Command line front end.

Exit codes: 0 success, 1 verification failures, 2 usage, resource or IO errors.
Every global flag can also be set through a ``CSADIM_*`` environment variable,
e.g. ``CSADIM_N_MAX=600`` or ``CSADIM_FORMAT=json``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from csadim import analysis, cache, core, width
from csadim.config import FORMATS, RunConfig, env_default
from csadim.errors import CsaDimError

log = logging.getLogger("csadim")

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def parse_range(text: str) -> Tuple[int, int]:
    """``"225..400"`` -> (225, 400); a single integer is a one-point range."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            a, b = int(lo), int(hi)
        else:
            a = b = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}")
    if a > b or a < 0:
        raise argparse.ArgumentTypeError(f"empty or negative range {text!r}")
    return a, b


def get_table(cfg: RunConfig, need: int) -> core.DimTable:
    """A table covering n <= need: from the cache when it is large enough, else built."""
    path = Path(cfg.cache_path) if cfg.cache_path else None
    if path is not None and path.exists():
        table = cache.load_table(path)
        if table.n_max >= need:
            log.info("loaded table n_max=%d from %s", table.n_max, path)
            return table
    size = need if cfg.n_max is None else cfg.n_max
    if size < need:
        raise core.RangeError(f"command needs n={need} but --n-max is {cfg.n_max}")
    table = core.build_table(size, memory_cap=cfg.memory_cap_bytes)
    if path is not None:
        cache.save_table(table, path)
    return table


def emit(cfg: RunConfig, out, header: List[str], rows: List[list], extra: Optional[dict] = None):
    if cfg.output_format == "json":
        doc = {"rows": [dict(zip(header, r)) for r in rows]}
        if extra:
            doc.update(extra)
        json.dump(doc, out)
        out.write("\n")
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    out.write(buf.getvalue())


def _json_or_text(cfg: RunConfig, out, doc: dict, text: str):
    if cfg.output_format == "json":
        json.dump(doc, out)
        out.write("\n")
    else:
        print(text, file=out)


def cmd_dims(cfg, args, out):
    if args.oracle:
        dims = core.csa_dims_bruteforce(args.n, cap=cfg.oracle_cap)
    else:
        dims = get_table(cfg, args.n)[args.n]
    if args.runs:
        text = " ".join(f"{a}..{b}" if a != b else str(a) for a, b in dims.runs())
        doc = {"n": args.n, "runs": dims.runs()}
    else:
        text = " ".join(map(str, dims))
        doc = {"n": args.n, "dims": dims.to_list()}
    _json_or_text(cfg, out, doc, text)
    return EXIT_OK


def cmd_check(cfg, args, out):
    ok = core.is_csa_dim(get_table(cfg, args.n), args.n, args.dim)
    _json_or_text(cfg, out, {"n": args.n, "dim": args.dim, "member": ok}, str(ok).lower())
    return EXIT_OK


def cmd_witness(cfg, args, out):
    p = core.witness_partition(get_table(cfg, args.n), args.n, args.dim)
    doc = {"n": args.n, "dim": args.dim, "partition": list(p.parts) if p else None}
    _json_or_text(cfg, out, doc, str(p) if p else "none")
    return EXIT_OK


def cmd_greedy(cfg, args, out):
    g = width.greedy_decomposition(args.two_m)
    doc = {"two_m": g.target, "terms": list(g.terms), "greedy_width": g.width}
    _json_or_text(cfg, out, doc, str(g))
    return EXIT_OK


def cmd_width(cfg, args, out):
    g = width.greedy_width(args.two_m)
    exact = width.exact_width(args.two_m, get_table(cfg, g))
    doc = {"two_m": args.two_m, "exact_width": exact, "greedy_width": g}
    _json_or_text(cfg, out, doc, f"exact={exact} greedy={g}")
    return EXIT_OK


def _verify_greedy(cfg, args, out):
    viols = width.verify_greedy_bound(args.m_max)
    broken = [2 * m for m in range(args.m_max + 1) if not width.greedy_bound_holds(2 * m)]
    rows = [[v.two_m, v.greedy_width, f"{v.bound:.6f}"] for v in viols]
    last = viols[-1].two_m if viols else None
    emit(cfg, out, ["two_m", "greedy_width", "bound"], rows,
         {"last_violation": last, "max_form_failures": broken})
    print(
        f"greedy: {len(viols)} values of 2m <= {2 * args.m_max} exceed 1.5*sqrt(2m); "
        f"last at {last}; max{{1.5*sqrt(2m), 38}} fails at {len(broken)} values",
        file=sys.stderr,
    )
    return EXIT_FAIL if broken else EXIT_OK


def _verify_coverage(cfg, args, out, check, threshold, label):
    lo, hi = args.n
    table = get_table(cfg, hi)
    reports = [check(n, table) for n in range(lo, hi + 1)]
    rows = [
        [r.n, r.upper, r.checked, len(r.failures), r.failures[0] if r.failures else ""]
        for r in reports
    ]
    emit(cfg, out, ["n", "upper", "checked", "n_failures", "first_failure"], rows)
    bad = [r.n for r in reports if r.failures and r.n >= threshold]
    print(f"{label}: n in [{lo}, {hi}]; claim applies from n={threshold}; "
          f"failing n: {bad or 'none'}", file=sys.stderr)
    if label == "theorem":
        alt = [r.n for r in reports if r.failures and r.n >= analysis.THEOREM_N_MIN_ALT]
        print(f"theorem: failing n >= {analysis.THEOREM_N_MIN_ALT}: {alt or 'none'}",
              file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_verify(cfg, args, out):
    if args.kind == "greedy":
        return _verify_greedy(cfg, args, out)
    if args.kind == "theorem":
        return _verify_coverage(cfg, args, out, analysis.verify_theorem_main,
                                cfg.n_min_theorem, "theorem")
    return _verify_coverage(cfg, args, out, analysis.verify_corollary,
                            analysis.COROLLARY_N_MIN, "corollary")


def _gap_row(r: analysis.GapRecord) -> list:
    return [r.n, r.gap, f"{r.normalized:.6f}", r.sign_13_4, r.sign_7_2]


GAP_HEADER = ["n", "gap", "normalized", "sign_13_4", "sign_7_2"]


def cmd_gap(cfg, args, out):
    emit(cfg, out, GAP_HEADER, [_gap_row(analysis.gap(args.n, get_table(cfg, args.n)))])
    return EXIT_OK


def cmd_sweep(cfg, args, out):
    records, s = analysis.sweep_gap(args.n_lo, args.n_hi, get_table(cfg, args.n_hi))
    summary = {
        "min_normalized": round(s.min_normalized, 6),
        "max_normalized": round(s.max_normalized, 6),
        "frac_13_4_positive": round(s.frac_13_4_positive, 6),
        "frac_7_2_negative": round(s.frac_7_2_negative, 6),
    }
    emit(cfg, out, GAP_HEADER, [_gap_row(r) for r in records], {"summary": summary})
    if cfg.output_format == "csv":
        out.write("# summary," + ",".join(f"{k}={v:.6f}" for k, v in summary.items()) + "\n")
    return EXIT_OK


def cmd_density(cfg, args, out):
    d = analysis.density(args.n, get_table(cfg, args.n))
    _json_or_text(cfg, out, {"n": args.n, "density": d}, f"{d:.6f}")
    return EXIT_OK


def cmd_cache(cfg, args, out):
    path = args.path or cfg.cache_path
    if not path:
        raise core.RangeError("no cache path given (positional PATH or --cache)")
    if args.action == "save":
        if cfg.n_max is None:
            raise core.RangeError("cache save needs --n-max")
        cache.save_table(core.build_table(cfg.n_max, memory_cap=cfg.memory_cap_bytes), path)
        print(f"saved n_max={cfg.n_max} to {path}", file=out)
    else:
        table = cache.load_table(path)
        print(f"loaded n_max={table.n_max} from {path}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="csadim",
        allow_abbrev=False,
        description="Dimensions of connected semi-simple subalgebras of M_n(k).",
    )
    n_max = env_default("n_max")
    p.add_argument("--n-max", type=int, default=int(n_max) if n_max else None,
                   help="table size to build (default: what the command needs)")
    p.add_argument("--memory-cap", type=int,
                   default=int(env_default("memory_cap", core.DEFAULT_MEMORY_CAP)),
                   help="refuse tables whose estimated size exceeds this many bytes")
    p.add_argument("--oracle-cap", type=int,
                   default=int(env_default("oracle_cap", core.DEFAULT_ORACLE_CAP)))
    p.add_argument("--cache", default=env_default("cache"), help="table cache file")
    p.add_argument("--format", choices=FORMATS, default=env_default("format", "csv"))
    p.add_argument("--n-min-theorem", type=int,
                   default=int(env_default("n_min_theorem", analysis.THEOREM_N_MIN)))
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dims", help="print C(n)")
    s.add_argument("n", type=int)
    s.add_argument("--runs", action="store_true", help="run-length encode step-2 runs")
    s.add_argument("--oracle", action="store_true",
                   help="enumerate partitions instead of using the table (n <= --oracle-cap)")
    s.set_defaults(func=cmd_dims)

    for name, func, helptext in (("check", cmd_check, "is DIM in C(n)?"),
                                 ("witness", cmd_witness, "block sizes realising DIM")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("n", type=int)
        s.add_argument("dim", type=int)
        s.set_defaults(func=func)

    for name, func in (("greedy", cmd_greedy), ("width", cmd_width)):
        s = sub.add_parser(name)
        s.add_argument("two_m", type=int)
        s.set_defaults(func=func)

    s = sub.add_parser("verify", help="check the greedy bound, theorem or corollary")
    s.add_argument("kind", choices=("greedy", "theorem", "corollary"))
    s.add_argument("--m-max", type=int, default=3042)
    s.add_argument("--n", type=parse_range, default=None, metavar="LO..HI")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gap")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_gap)

    s = sub.add_parser("sweep", help="gap records for n_lo..n_hi as CSV/JSON")
    s.add_argument("n_lo", type=int)
    s.add_argument("n_hi", type=int)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("density")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("cache")
    s.add_argument("action", choices=("save", "load"))
    s.add_argument("path", nargs="?")
    s.set_defaults(func=cmd_cache)
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        cfg = RunConfig(
            n_max=args.n_max,
            memory_cap_bytes=args.memory_cap,
            oracle_cap=args.oracle_cap,
            cache_path=args.cache,
            output_format=args.format,
            n_min_theorem=args.n_min_theorem,
        )
        if args.command == "verify" and args.kind != "greedy" and args.n is None:
            args.n = (cfg.n_min_theorem, 400) if args.kind == "theorem" else (49, 300)
        return args.func(cfg, args, out)
    except (CsaDimError, ValueError, OSError) as exc:
        print(f"csadim: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
