"""Command-line surface: exact densities, series oracle, census, verification.

Subcommands
-----------
density   exact closed-form density report for one (g, d)
table     the bundled 16-row reference tables (2 = positive g, 3 = negative g)
oracle    truncated degree series + tail bound, checked against the closed form
census    segmented prime census of d | ord_p(g) up to x (checkpointable)
verify    exact finite-x identity between the order count and the
          Mobius-weighted residual-index census

Exit codes: 0 success, 1 verification/bracket failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .base import RationalBase, as_base
from .census import CensusConfig, CheckpointError, run_census, verify_key_identity
from .density import density
from .kummer import series_partial
from .tables import FOOTNOTES, table_rows

__all__ = ["main", "decimal_string"]


def decimal_string(q: Fraction, places: int = 8) -> str:
    """Exact decimal rendering of a rational, round-half-even."""
    sign = "-" if q < 0 else ""
    q = abs(q)
    scale = 10**places
    n, r = divmod(q.numerator * scale, q.denominator)
    if 2 * r > q.denominator or (2 * r == q.denominator and n % 2 == 1):
        n += 1
    whole, frac = divmod(n, scale)
    return f"{sign}{whole}.{frac:0{places}d}"


def _parse_g(text: str) -> RationalBase:
    try:
        return as_base(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


# ---------------------------------------------------------------------------
# renderers
# ---------------------------------------------------------------------------


def _density_payload(report) -> dict:
    dec = report.decomposition
    return {
        "g": str(dec.base),
        "d": report.d,
        "g0": f"{dec.g0_num}/{dec.g0_den}" if dec.g0_den != 1 else str(dec.g0_num),
        "h": dec.h,
        "disc": dec.disc,
        "case_label": report.case_label,
        "gamma": report.gamma,
        "epsilon1": str(report.epsilon1),
        "s_factor": str(report.s_factor),
        "delta": str(report.delta),
        "delta_decimal": decimal_string(report.delta),
    }


def render_density(report, fmt: str) -> str:
    payload = _density_payload(report)
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        return _csv_table([payload])
    lines = [
        f"g        = {payload['g']}",
        f"d        = {payload['d']}",
        f"g0       = {payload['g0']}   h = {payload['h']}   disc = {payload['disc']}",
        f"case     = {payload['case_label']}"
        + (f"   gamma = {payload['gamma']}" if payload["gamma"] is not None else ""),
        f"epsilon1 = {payload['epsilon1']}",
        f"S(d,h)   = {payload['s_factor']}",
        f"delta    = {payload['delta']} = {payload['delta_decimal']}",
    ]
    return "\n".join(lines)


def render_table(which: int, fmt: str) -> str:
    rows = []
    notes_used = []
    for row in table_rows(which):
        rows.append(
            {
                "g": row.g,
                "g0": f"{row.g0_num}/{row.g0_den}" if row.g0_den != 1 else str(row.g0_num),
                "h": row.h,
                "disc": row.disc,
                "d": row.d,
                "epsilon1": str(row.epsilon1),
                "delta": str(row.delta),
                "delta_decimal": decimal_string(row.delta),
                "experimental": row.experimental,
                "footnote": row.footnote or "",
            }
        )
        if row.footnote:
            notes_used.append(row.footnote)
    if fmt == "json":
        return json.dumps(
            {"table": which, "rows": rows, "footnotes": {k: FOOTNOTES[k] for k in notes_used}},
            indent=2,
        )
    if fmt == "csv":
        return _csv_table(rows)
    header = f"{'g':>4} {'g0':>4} {'h':>2} {'disc':>5} {'d':>3} {'eps1':>6} {'delta':>7} {'decimal':>11} {'full-scale':>11}"
    lines = [header, "-" * len(header)]
    for r in rows:
        mark = "*" if r["footnote"] else " "
        lines.append(
            f"{r['g']:>4} {r['g0']:>4} {r['h']:>2} {r['disc']:>5} {r['d']:>3} "
            f"{r['epsilon1']:>6} {r['delta']:>7} {r['delta_decimal']:>11} {r['experimental']:>11}{mark}"
        )
    for key in notes_used:
        lines.append(f"* {key}: {FOOTNOTES[key]}")
    return "\n".join(lines)


def render_oracle(estimate, delta: Fraction, fmt: str) -> tuple[str, bool]:
    ok = estimate.partial <= delta <= estimate.partial + estimate.tail_bound
    payload = {
        "d": estimate.d,
        "vmax": estimate.vmax,
        "partial": str(estimate.partial),
        "partial_decimal": decimal_string(estimate.partial),
        "tail_bound": str(estimate.tail_bound),
        "delta": str(delta),
        "delta_decimal": decimal_string(delta),
        "bracket": "PASS" if ok else "FAIL",
    }
    if fmt == "json":
        payload["blocks"] = [{"v": v, "block": str(b)} for v, b in estimate.blocks]
        return json.dumps(payload, indent=2), ok
    if fmt == "csv":
        return _csv_table([payload]), ok
    lines = [
        f"partial    = {payload['partial']} = {payload['partial_decimal']}  (over {len(estimate.blocks)} blocks, vmax={estimate.vmax})",
        f"tail bound ~ {float(estimate.tail_bound):.3e}",
        f"delta      = {payload['delta']} = {payload['delta_decimal']}",
        f"bracket    = {payload['bracket']}",
    ]
    return "\n".join(lines), ok


def render_census(result, g: RationalBase, d: int, x: int, fmt: str) -> str:
    delta = density(g, d).delta
    ratio = result.ratio
    payload = {
        "g": str(g),
        "d": d,
        "x": x,
        "counted": result.counted,
        "considered": result.considered,
        "ratio": decimal_string(ratio),
        "delta_exact": str(delta),
        "abs_error": decimal_string(abs(ratio - delta)),
    }
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        return _csv_table([payload])
    return "\n".join(
        [
            f"counted    = {payload['counted']}",
            f"considered = {payload['considered']}",
            f"ratio      = {payload['ratio']}",
            f"delta      = {payload['delta_exact']} = {decimal_string(delta)}",
            f"|ratio-delta| = {payload['abs_error']}",
        ]
    )


def render_verify(report, fmt: str) -> tuple[str, bool]:
    payload = {
        "g": str(report.g),
        "d": report.d,
        "x": report.x,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "result": "PASS" if report.holds else "FAIL",
    }
    if fmt == "json":
        payload["blocks"] = [{"v": v, "count": c} for v, c in report.blocks]
        return json.dumps(payload, indent=2), report.holds
    if fmt == "csv":
        return _csv_table([payload]), report.holds
    lines = [
        f"lhs (direct count of d | ord) = {report.lhs}",
        f"rhs (Mobius-weighted census)  = {report.rhs}",
        "blocks: " + "  ".join(f"v={v}:{c}" for v, c in report.blocks),
        f"result = {payload['result']}",
    ]
    return "\n".join(lines), report.holds


def _csv_table(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue().rstrip("\n")


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orddiv",
        description="Densities of primes p for which d divides the order of g mod p.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_g=True, need_d=True):
        if need_g:
            p.add_argument("-g", type=_parse_g, required=True,
                           help="rational base, e.g. 2, -9, or 8/27")
        if need_d:
            p.add_argument("-d", type=_positive_int, required=True)
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p_density = sub.add_parser("density", help="exact closed-form density")
    add_common(p_density)

    p_table = sub.add_parser("table", help="bundled reference tables")
    p_table.add_argument("which", type=int, choices=(2, 3))
    p_table.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p_oracle = sub.add_parser("oracle", help="degree-series bracket vs closed form")
    add_common(p_oracle)
    p_oracle.add_argument("--vmax", type=_positive_int, default=2**16)

    p_census = sub.add_parser("census", help="prime census of d | ord_p(g)")
    add_common(p_census)
    p_census.add_argument("-x", type=_positive_int, required=True)
    p_census.add_argument(
        "--threads",
        type=_positive_int,
        default=int(os.environ.get("ORDDIV_THREADS", "1")),
    )
    p_census.add_argument("--segment-size", type=_positive_int, default=10_000_000)
    p_census.add_argument("--checkpoint", default=None)

    p_verify = sub.add_parser("verify", help="finite-x counting identity check")
    add_common(p_verify)
    p_verify.add_argument("-x", type=_positive_int, required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "density":
            print(render_density(density(args.g, args.d), args.format))
            return 0
        if args.command == "table":
            print(render_table(args.which, args.format))
            return 0
        if args.command == "oracle":
            estimate = series_partial(args.g, args.d, args.vmax)
            text, ok = render_oracle(estimate, density(args.g, args.d).delta, args.format)
            print(text)
            return 0 if ok else 1
        if args.command == "census":
            config = CensusConfig(
                g=args.g,
                d=args.d,
                x_limit=args.x,
                segment_size=args.segment_size,
                worker_count=args.threads,
                checkpoint_path=args.checkpoint,
            )
            print(render_census(run_census(config), args.g, args.d, args.x, args.format))
            return 0
        if args.command == "verify":
            text, ok = render_verify(verify_key_identity(args.g, args.d, args.x), args.format)
            print(text)
            return 0 if ok else 1
    except CheckpointError as exc:
        print(f"checkpoint error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
