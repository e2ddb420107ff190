"""Command-line front end.

Exit codes: 0 success, 1 internal failure (or a failed selfcheck),
2 invalid input, 3 unsupported combination (e.g. ``wtilde`` with p = 3 mod 4).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .alcove import (
    check_prime,
    count_alcove_points,
    enumerate_alcove_points,
    reduce_to_alcove,
    stabilizer_info,
)
from .errors import E8OrbitsError, InputError, UnsupportedError
from .families import Family, decide_regular, theorem_table
from .orbitscan import ScanConfig, scan_rho_orbit
from .rootdata import named_datum


class UsageError(InputError):
    pass


def _datum(name: str):
    try:
        return named_datum(name)
    except KeyError as exc:
        raise UsageError(str(exc)) from None


def _parse_vector(text: str, rank: int) -> np.ndarray:
    try:
        coords = [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError:
        raise UsageError(f"could not parse vector {text!r}; expected comma-separated integers") from None
    if len(coords) != rank:
        raise UsageError(f"vector has {len(coords)} coordinates, type needs {rank}")
    return np.array(coords, dtype=np.int64)


def _fmt_J(J) -> str:
    return "{" + ",".join(str(j) for j in J) + "}"


def _vec_str(v) -> str:
    return "(" + ",".join(str(int(t)) for t in v) + ")"


def _render_rows(rows: list[dict], fmt: str) -> str:
    if not rows:
        header: list = []
    else:
        header = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(row[k]) for k in header])
        return buf.getvalue()
    if not rows:
        return "(no rows)\n"
    cells = [[_cell(row[k]) for k in header] for row in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(str(t) for t in v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


def _emit(args, command: str, params: dict, result, rows: list[dict] | None = None,
          text: str | None = None) -> None:
    if args.format == "json":
        doc = {"tool_version": __version__, "command": command, "params": params, "result": result}
        out = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    elif rows is not None and (args.format == "csv" or text is None):
        out = _render_rows(rows, args.format)
    else:
        out = text
    if getattr(args, "output", None):
        _atomic_write(args.output, out)
    else:
        sys.stdout.write(out)


def _atomic_write(path: str, data: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".e8orbits-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_reduce(args) -> int:
    datum = _datum(args.type)
    p = check_prime(args.p)
    x = _parse_vector(args.vector, datum.rank)
    red = reduce_to_alcove(datum, x, p)
    stab = stabilizer_info(datum, red.representative, p)
    result = {
        "input": x.tolist(),
        "representative": red.representative.tolist(),
        "steps": red.steps,
        "length": red.length,
        "parity": "odd" if red.parity else "even",
        "word": list(red.word),
        "linear_part": red.linear_part.tolist(),
        "stabilizer": {"J": list(stab.J), "order": stab.order},
    }
    row = {
        "representative": result["representative"],
        "steps": red.steps,
        "length": red.length,
        "parity": result["parity"],
        "J": _fmt_J(stab.J),
        "stab_order": stab.order,
    }
    text = (
        f"input           {_vec_str(x)}\n"
        f"representative  {_vec_str(red.representative)}\n"
        f"steps           {red.steps}\n"
        f"length          {red.length} ({result['parity']})\n"
        f"stabilizer      J={_fmt_J(stab.J)} order={stab.order}\n"
    )
    params = {"type": args.type, "p": p, "vector": x.tolist()}
    _emit(args, "reduce", params, result, [row], text)
    return 0


def cmd_alcove_points(args) -> int:
    datum = _datum(args.type)
    p = check_prime(args.p)
    rows = []
    for x, stab in enumerate_alcove_points(datum, p):
        if args.min_stab_order is not None and stab.order < args.min_stab_order:
            continue
        if args.max_stab_order is not None and stab.order > args.max_stab_order:
            continue
        rows.append({
            "point": x.tolist(),
            "pairing": int(x @ datum.highest_coroot),
            "J": list(stab.J),
            "stab_order": stab.order,
        })
    params = {"type": args.type, "p": p, "min_stab_order": args.min_stab_order,
              "max_stab_order": args.max_stab_order}
    result = {"total_points": count_alcove_points(datum, p), "rows": rows}
    table_rows = [dict(r, J=_fmt_J(r["J"])) for r in rows]
    if args.format == "table":
        text = _render_rows(table_rows, "table") + f"{len(rows)} row(s) of {result['total_points']} points\n"
    else:
        text = None
    _emit(args, "alcove-points", params, result, table_rows, text)
    return 0


def cmd_scan_rho(args) -> int:
    datum = _datum(args.type)
    threads = args.threads or (os.cpu_count() or 1)
    config = ScanConfig(workers=threads, split_depth=args.split_depth, prime_cap=args.prime_cap,
                        progress_interval=args.progress, max_depth=args.max_depth)
    summary = scan_rho_orbit(datum, config)
    print(f"[scan] {summary.node_count:,} nodes in {summary.elapsed:.1f}s; "
          f"per-worker nodes {summary.worker_nodes}", file=sys.stderr)
    result = summary.to_dict()
    # primes dividing |W| are outside the modular theory; keep them in "primes" only
    exceptional = summary.exceptional_primes(coprime_to=datum.weyl_order)
    result["exceptional_primes"] = exceptional
    params = {"type": args.type, "threads": threads, "split_depth": args.split_depth,
              "prime_cap": args.prime_cap, "max_depth": args.max_depth}
    rows = []
    for p in sorted(summary.hits):
        for c in sorted(summary.hits[p]):
            ev, od = summary.hits[p][c]
            rows.append({"prime": p, "c": c, "even_hits": ev, "odd_hits": od})
    text = (
        f"nodes               {summary.node_count}\n"
        f"max gcd             {summary.max_gcd}\n"
        f"max |coordinate|    {summary.max_abs_coord}\n"
        f"exceptional primes  {exceptional}\n"
        f"elapsed             {summary.elapsed:.1f}s\n"
    )
    for p in exceptional:
        sc = summary.scalars(p)
        parts = [f"{c}:{''.join('eo'[k] for k in sorted(sc[c]))}" for c in sorted(sc)]
        text += f"  p={p}: " + " ".join(parts) + "\n"
    _emit(args, "scan-rho", params, result, rows, text)
    return 0


def cmd_decide(args) -> int:
    datum = _datum(args.type)
    fam = _family(args.family)
    verdict = decide_regular(datum, args.p, fam, args.z_order)
    result = verdict.to_dict()
    text = (
        f"p={verdict.p} family={fam.value} |Z|={verdict.m}: "
        f"regular: {'true' if verdict.regular else 'false'}"
        + (f" witness {_vec_str(verdict.witness)}" if verdict.witness else "")
        + f" ({verdict.points_examined} alcove points examined)\n"
    )
    params = {"type": args.type, "p": args.p, "family": fam.value, "z_order": args.z_order}
    _emit(args, "decide", params, result, [result], text)
    return 0


def _family(name: str) -> Family:
    try:
        return Family.parse(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_theorem(args) -> int:
    datum = _datum(args.type)
    if args.p_from > args.p_to:
        raise UsageError("--p-from must not exceed --p-to")
    rows = [v.to_dict() for v in theorem_table(datum, range(args.p_from, args.p_to + 1))]
    exceptions = [r for r in rows if not r["regular"]]
    params = {"type": args.type, "p_from": args.p_from, "p_to": args.p_to}
    result = {"rows": rows, "exceptions": [[r["p"], r["family"], r["z_order"]] for r in exceptions]}
    _emit(args, "theorem", params, result, rows, None if args.format != "table" else _theorem_text(rows))
    return 0


def _theorem_text(rows) -> str:
    by_key: dict = {}
    for r in rows:
        by_key.setdefault((r["p"], r["family"]), []).append(r)
    lines = []
    for (p, fam), rs in by_key.items():
        fails = [r["z_order"] for r in rs if not r["regular"]]
        if not fails:
            status = "regular for all |Z|"
        elif len(fails) == len(rs):
            status = "no regular orbit for any |Z|"
        else:
            status = "no regular orbit for |Z| in " + ",".join(map(str, fails))
        lines.append(f"p={p:<4} {fam:<7} {status}")
    return "\n".join(lines) + "\n"


def cmd_selfcheck(args) -> int:
    from .selfcheck import run_checks

    results = run_checks(args.level, inject_fault=args.inject_fault)
    ok = all(r[1] for r in results)
    rows = [{"check": name, "passed": passed, "detail": detail} for name, passed, detail in results]
    text = "".join(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}\n" for name, passed, detail in results)
    text += f"{sum(r[1] for r in results)}/{len(results)} checks passed\n"
    result = {"passed": ok, "checks": rows}
    _emit(args, "selfcheck", {"level": args.level}, result, rows, text)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="e8orbits", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, with_prime=True):
        sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
        sp.add_argument("--output", help="write the document to this path (atomically)")
        sp.add_argument("--type", default="E8", help="root system: E8 (default), F4, G2")
        if with_prime:
            sp.add_argument("-p", type=int, required=True, help="prime modulus")

    sp = sub.add_parser("reduce", help="reduce a vector to the closed alcove mod p")
    common(sp)
    sp.add_argument("--vector", required=True, help="comma-separated coordinates")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("alcove-points", help="list integral closed-alcove points and stabilizers")
    common(sp)
    sp.add_argument("--min-stab-order", type=int)
    sp.add_argument("--max-stab-order", type=int)
    sp.set_defaults(func=cmd_alcove_points)

    sp = sub.add_parser("scan-rho", help="walk the full W-orbit of rho")
    common(sp, with_prime=False)
    sp.add_argument("--threads", type=int, default=0, help="worker threads (default: all cores)")
    sp.add_argument("--split-depth", type=int, default=4)
    sp.add_argument("--prime-cap", type=int)
    sp.add_argument("--max-depth", type=int, help="stop descending below this length")
    sp.add_argument("--progress", type=int, default=50_000_000, help="report every N nodes (0 = quiet)")
    sp.set_defaults(func=cmd_scan_rho)

    sp = sub.add_parser("decide", help="regular-orbit verdict for Z o G")
    common(sp)
    sp.add_argument("--family", required=True, help="wprime | w | wtilde")
    sp.add_argument("--z-order", type=int, required=True)
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("theorem", help="classification table over a range of primes")
    common(sp, with_prime=False)
    sp.add_argument("--p-from", type=int, default=11)
    sp.add_argument("--p-to", type=int, default=101)
    sp.set_defaults(func=cmd_theorem)

    sp = sub.add_parser("selfcheck", help="differential checks against brute force")
    sp.add_argument("--level", choices=("quick", "full"), default="quick")
    sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
    sp.add_argument("--output")
    sp.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_selfcheck)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"e8orbits: error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedError as exc:
        print(f"e8orbits: unsupported: {exc}", file=sys.stderr)
        return 3
    except (E8OrbitsError, ValueError) as exc:
        print(f"e8orbits: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
