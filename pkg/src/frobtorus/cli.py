"""Command-line front end.

Coefficients are given in ascending order, constant term first:
``--coeffs 2,-1,1`` is t^2 - t + 2.

Exit codes: 0 success, 2 validation rejection (or a malformed record),
1 budget exhaustion with a partial report.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from . import store
from .errors import CacheMiss, SchemaError
from .report import HYPOTHESES, AnalysisReport, InputRecord, analyze

SECTIONS = {
    "validate": (),
    "analyze": ("newton", "regularity", "invariants", "poles", "primes"),
    "invariants": ("invariants",),
    "poles": ("poles",),
    "primes": ("primes",),
}


def _parse_coeffs(text: str) -> tuple:
    try:
        return tuple(int(c) for c in text.replace(" ", "").split(",") if c != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad coefficient list {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frobtorus", description="Weil polynomial and Frobenius torus analysis")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    for name in SECTIONS:
        sp = sub.add_parser(name)
        sp.add_argument("--q", type=int)
        sp.add_argument("--m", type=int, default=1)
        sp.add_argument("--coeffs", type=_parse_coeffs, help="ascending, constant term first")
        sp.add_argument("--id", default="cli")
        sp.add_argument("--input", help="JSON-lines file, one record per line")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--n-max", type=int, default=4)
        sp.add_argument("--primes-bound", type=int, default=1000)
        sp.add_argument("--hypothesis", choices=HYPOTHESES, default="none")
        sp.add_argument("--galois-samples", type=int, default=500)
        sp.add_argument("--store", help="directory of the content-addressed report store")
        sp.add_argument("--workers", type=int, default=1)

    fp = sub.add_parser("fetch")
    fp.add_argument("--g", type=int, nargs="+", required=True)
    fp.add_argument("--q", type=int, nargs="+", required=True)
    fp.add_argument("--cache", help="response cache directory")
    fp.add_argument("--offline", action="store_true")
    fp.add_argument("--out")
    return ap


def _records(args) -> list:
    """List of InputRecord or error dicts, in input order."""
    if args.input:
        out = []
        with open(args.input) as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    out.append(InputRecord.from_dict(json.loads(line), default_id=f"line{lineno}"))
                except (ValueError, TypeError) as exc:
                    out.append({"line": lineno, "error": {"type": "MalformedRecord", "message": str(exc)}})
        return out
    if args.q is None or args.coeffs is None:
        raise SystemExit("either --input or both --q and --coeffs are required")
    try:
        return [InputRecord(args.id, args.q, args.m, args.coeffs, hypothesis=args.hypothesis)]
    except ValueError as exc:
        return [{"line": 0, "error": {"type": "MalformedRecord", "message": str(exc)}}]


def _run_one(rec, sections, n_max, primes_bound, galois_samples):
    if isinstance(rec, dict):
        return rec
    return analyze(rec, n_max=n_max, primes_bound=primes_bound, sections=sections, galois_samples=galois_samples).to_dict()


def _fmt_table(rows, cols) -> list[str]:
    widths = [max(len(c), *(len(str(r[c])) for r in rows)) for c in cols]
    out = ["  " + "  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    for r in rows:
        out.append("  " + "  ".join(str(r[c]).rjust(w) for c, w in zip(cols, widths)))
    return out


def format_text(d: dict) -> str:
    if "error" in d:
        return f"line {d['line']}: {d['error']['type']}: {d['error']['message']}"
    inp = d["input"]
    lines = [f"record {inp['id']}: q={inp['q']} m={inp['m']} coeffs={inp['coeffs']}"]
    val = d["validation"]
    if val["status"] != "valid":
        lines.append(f"  rejected: {val['clause']}: {val['message']}")
        return "\n".join(lines)
    lines.append("  valid")
    if d.get("newton_polygon"):
        lines.append("  newton slopes: " + " ".join(f"{s}^{k}" for s, k in d["newton_polygon"]["slopes"]))
    if d.get("ordinary"):
        o = d["ordinary"]["ordinary"]
        lines.append(f"  ordinary: {'n/a' if o is None else ('yes' if o else 'no')}")
    if d.get("regularity"):
        r = d["regularity"]
        lines.append(f"  regular: {'yes' if r['regular'] else 'no'} ({r['reason']}), angle rank {r['angle_rank']}")
        if r.get("witness"):
            lines.append(f"  witness: {json.dumps(r['witness'], sort_keys=True)}")
        for name, c in r["criteria"].items():
            lines.append(f"  criterion {name}: {c['status']}")
    if d.get("conclusion"):
        lines.append(f"  {d['conclusion']['text']}")
    if d.get("invariants"):
        lines.append("  torus invariants:")
        lines.extend(_fmt_table(d["invariants"]["rows"], ["n", "dim_invariants", "dim_generated", "generated_in_degree_two"]))
    if d.get("pole_orders"):
        lines.append("  pole orders:")
        lines.extend(_fmt_table(d["pole_orders"]["rows"], ["n", "twist", "fixed_dim", "invariant_dim", "equal"]))
    if d.get("prime_set"):
        ps = d["prime_set"]
        head = ", ".join(str(x) for x in ps["members"][:12])
        more = ", ..." if ps["member_count"] > 12 else ""
        lines.append(f"  P(X) up to {ps['bound']}: {ps['member_count']} of {ps['tested']} tested: {head}{more}")
        if ps["density_float"] is not None:
            lines.append(f"  density estimate {ps['density_float']:.4f}")
    for e in d.get("errors", []):
        lines.append(f"  {e['stage']}: {e['type']}: {e['message']}")
    if d.get("budget_exhausted"):
        lines.append("  partial report: search budget exhausted")
    return "\n".join(lines)


def _exit_code(results: list) -> int:
    codes = []
    for d in results:
        if "error" in d:
            codes.append(2)
        else:
            codes.append(AnalysisReport.from_dict(d).exit_code)
    if 2 in codes:
        return 2
    return 1 if 1 in codes else 0


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_fetch(args) -> int:
    from .lmfdb import LmfdbClient

    client = LmfdbClient(cache_dir=args.cache, offline=args.offline)
    try:
        recs = client.fetch(args.g, args.q)
    except (CacheMiss, SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit("".join(json.dumps(r.to_dict(), sort_keys=True) + "\n" for r in recs), args.out)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if args.command == "fetch":
        return cmd_fetch(args)

    records = _records(args)
    job = partial(
        _run_one,
        sections=SECTIONS[args.command],
        n_max=args.n_max,
        primes_bound=args.primes_bound,
        galois_samples=args.galois_samples,
    )
    if args.workers > 1 and len(records) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(job, records))  # map keeps input order
    else:
        results = [job(r) for r in records]
    code = _exit_code(results)

    if args.store:
        for d in results:
            if "error" not in d:
                d["store_key"] = store.put(args.store, d)

    if args.json:
        if args.input:
            text = "".join(json.dumps(d, sort_keys=True) + "\n" for d in results)
        else:
            text = json.dumps(results[0], sort_keys=True, indent=2) + "\n"
    else:
        text = "\n\n".join(format_text(d) for d in results) + "\n"
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
