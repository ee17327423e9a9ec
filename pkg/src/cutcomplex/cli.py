"""Command-line front end: ``cutcomplex <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from .complexes import KINDS, TOTAL, ComplexError, ComplexSpec, f_vector, f_vector_of_facets, facets
from .family import FamilyError, parse_family
from .graphs import GraphError, members, product_label, vset
from .homology import BudgetExceeded, reduced_homology
from .morse import MORSE_VERTEX_LIMIT, MorseError, homotopy_claim, run_element_matchings, verify_acyclic
from .predict import CYCLE_POWER, FAMILIES, canonical_order, expected_wedge, family_graph, in_regime
from .tables import TABLES
from .verify import (
    PRODUCT_CONJECTURES,
    SUITES,
    conjectured_cycle_power_middle,
    conjectured_product_betti,
    render_table_markdown,
    run_claims,
    suite_claims,
    suite_failed,
)

EPILOG = """\
vertex encoding:
  cartesian(G, H) has vertex (i, j) stored as the flat index i*|V(H)| + j.
  JSON output uses flat indices; csv and markdown print products as "i.j".
  Example: in cartesian(complete(3), path(4)) vertex 6 is "1.2".

families:
  cycle_power(n,p)  circulant(n; s1,s2,...)  complete(n)  path(n)  cycle(n)
  cartesian(F1, F2)  file(edges.txt)

environment:
  CUTCOMPLEX_BUDGET  face budget for full homology (default 1048576)
"""


class UsageError(Exception):
    pass


# -- parsing helpers --------------------------------------------------------


def parse_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
        else:
            lo_i = hi_i = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected a..b") from None
    if lo_i > hi_i:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo_i, hi_i + 1))


def parse_vertex(token: str, width: int | None) -> int:
    token = token.strip()
    if "." in token:
        if width is None:
            raise UsageError(f"vertex {token!r} uses i.j notation but the graph is not a product")
        i, j = token.split(".", 1)
        return int(i) * width + int(j)
    return int(token)


def read_facet_file(path: str) -> tuple[list[int], int | None]:
    """Facets from ``facets`` JSON output, or one whitespace-separated face per line."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        payload = json.loads(text)
        return [vset(f) for f in payload["facets"]], payload.get("width")
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(vset(int(t) for t in line.replace(",", " ").split()))
    return out, None


# -- output -----------------------------------------------------------------


def _label(v: int, width: int | None) -> str:
    return product_label(v, width) if width else str(v)


def _face_text(mask: int, width: int | None) -> str:
    return " ".join(_label(v, width) for v in members(mask)) or "{}"


def emit(payload: dict, header: list[str], rows: list[list[Any]], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write("| " + " | ".join(header) + " |\n")
        out.write("|" + "---|" * len(header) + "\n")
        for r in rows:
            out.write("| " + " | ".join(str(c) for c in r) + " |\n")


# -- commands ---------------------------------------------------------------


def _spec_from(args) -> tuple[ComplexSpec, Any]:
    try:
        expr = parse_family(args.family)
        graph = expr.graph()
        return ComplexSpec(graph, args.kind, args.k), expr
    except (FamilyError, GraphError, ComplexError, OSError) as exc:
        raise UsageError(str(exc)) from None


def _header(spec: ComplexSpec, expr) -> dict:
    head = {"family": str(expr), "complex": spec.label(), "vertices": spec.n}
    if expr.width:
        head["width"] = expr.width
    return head


def cmd_facets(args, out) -> int:
    spec, expr = _spec_from(args)
    fs = facets(spec)
    payload = _header(spec, expr) | {"void": spec.is_void(), "facets": [members(f) for f in fs]}
    rows = [[_face_text(f, expr.width)] for f in fs]
    emit(payload, ["facet"], rows, args.format, out)
    return 0


def cmd_fvector(args, out) -> int:
    if args.from_facets:
        try:
            fs, width = read_facet_file(args.from_facets)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read facets: {exc}") from None
        fv = f_vector_of_facets(fs)
        payload: dict = {"source": args.from_facets, "void": fv.void}
    else:
        if not args.family:
            raise UsageError("fvector needs a family or --from-facets")
        spec, expr = _spec_from(args)
        fv = f_vector(spec)
        payload = _header(spec, expr) | {"void": fv.void}
    payload["f_vector"] = {str(d): c for d, c in fv.as_dict().items()}
    rows = [[d, c] for d, c in fv.as_dict().items()]
    emit(payload, ["dim", "faces"], rows, args.format, out)
    return 0


def cmd_betti(args, out) -> int:
    spec, expr = _spec_from(args)
    dims = parse_range(args.dims) if args.dims else None
    try:
        report = reduced_homology(spec, dims=dims, rank_method=args.rank_method)
    except BudgetExceeded as exc:
        raise UsageError(str(exc)) from None
    payload = _header(spec, expr) | report.as_dict()
    rows = [
        [d, report.betti[d], " ".join(map(str, report.torsion.get(d, [])))]
        for d in report.dims
        if report.betti[d] or report.torsion.get(d)
    ]
    emit(payload, ["dim", "rank", "torsion"], rows, args.format, out)
    return 0


def _default_order(spec: ComplexSpec, expr) -> list[int]:
    known = expr.known_family()
    if known is not None:
        return canonical_order(*known)
    return list(range(spec.n))


def cmd_morse(args, out) -> int:
    spec, expr = _spec_from(args)
    if spec.n > MORSE_VERTEX_LIMIT:
        raise UsageError(f"Morse runs are limited to {MORSE_VERTEX_LIMIT} vertices, got {spec.n}")
    if args.order:
        try:
            order = [parse_vertex(t, expr.width) for t in args.order.split(",") if t.strip()]
        except ValueError as exc:
            raise UsageError(f"bad --order: {exc}") from None
    else:
        order = _default_order(spec, expr)
    payload = _header(spec, expr)
    if spec.is_void():
        payload |= {"void": True, "order": order, "critical": [], "acyclic": True,
                    "claim": homotopy_claim(None, None).as_dict()}
        emit(payload, ["dim", "face"], [], args.format, out)
        return 0
    try:
        data = run_element_matchings(spec, order)
    except MorseError as exc:
        raise UsageError(str(exc)) from None
    acyc = verify_acyclic(spec, data)
    critical = sorted(data.critical, key=lambda s: (s.bit_count(), members(s)))
    payload |= {
        "void": False,
        "order": list(data.order),
        "faces": data.num_faces,
        "matched_pairs": data.num_pairs,
        "critical": [{"dim": s.bit_count() - 1, "face": members(s)} for s in critical],
        "critical_counts": {str(d): c for d, c in data.critical_counts().items()},
        "acyclic": acyc.ok,
    }
    if acyc.ok:
        payload["claim"] = homotopy_claim(data, acyc).as_dict()
    else:
        payload["cycle"] = [members(s) for s in acyc.cycle]
    if args.emit_pairs:
        payload["pairs"] = [
            {"lower": members(lo), "upper": members(up), "vertex": data.order[st]}
            for lo, up, st in data.pairs()
        ]
    rows = [[s.bit_count() - 1, _face_text(s, expr.width)] for s in critical]
    emit(payload, ["dim", "face"], rows, args.format, out)
    return 0 if acyc.ok else 1


def cmd_verify(args, out) -> int:
    claims = suite_claims(args.suite, args.budget)
    t0 = time.perf_counter()
    reports = run_claims(claims, workers=args.jobs)
    failed = suite_failed(reports)
    summary: dict[str, int] = {}
    for r in reports:
        summary[r.result] = summary.get(r.result, 0) + 1
    for r in reports:
        print(r.line(), file=sys.stderr)
    payload = {
        "suite": args.suite,
        "max_vertices": args.budget,
        "summary": summary,
        "failed": failed,
        "seconds": round(time.perf_counter() - t0, 3),
        "reports": [r.as_dict() for r in reports],
    }
    if args.format == "markdown":
        out.write(f"Suite `{args.suite}`: " + ", ".join(f"{k} {v}" for k, v in sorted(summary.items())) + "\n\n")
        if args.suite in ("tables", "all"):
            for tid in TABLES:
                out.write(render_table_markdown(tid, reports) + "\n")
        emit(payload, ["id", "result", "method", "seconds"],
             [[r.id, r.result, r.method, f"{r.seconds:.2f}"] for r in reports], "markdown", out)
    else:
        emit(payload, ["id", "result", "method", "seconds"],
             [[r.id, r.result, r.method, f"{r.seconds:.2f}"] for r in reports], args.format, out)
    return 1 if failed else 0


def _prediction(family: str, a: int, b: int, kind: str, k: int) -> tuple[dict[int, int] | None, str | None]:
    """Expected nonzero Betti map for a sweep point and where it comes from."""
    if kind == TOTAL and k == 2 and in_regime(family, a, b):
        count, dim = expected_wedge(family, a, b)
        return {dim: count}, "theorem"
    if family == CYCLE_POWER and kind == TOTAL and k == 2 and 2 * b + 3 <= a <= 3 * b:
        return conjectured_cycle_power_middle(a, b), "conjecture"
    if k == 3 and family != CYCLE_POWER:
        for which, (fam, knd, _) in PRODUCT_CONJECTURES.items():
            if fam == family and knd == kind:
                got = conjectured_product_betti(which, a, b)
                if got is not None:
                    return {d: v for d, v in got.items() if v}, "conjecture"
    return None, None


def sweep_point(family: str, a: int, b: int, kind: str, k: int) -> dict:
    names = ("n", "p") if family == CYCLE_POWER else ("m", "n")
    rec: dict[str, Any] = {"family": family, "params": dict(zip(names, (a, b))), "kind": kind, "k": k}
    t0 = time.perf_counter()
    try:
        spec = ComplexSpec(family_graph(family, a, b), kind, k)
        report = reduced_homology(spec)
    except (GraphError, ComplexError, BudgetExceeded) as exc:
        rec |= {"result": "skipped", "reason": str(exc), "seconds": round(time.perf_counter() - t0, 3)}
        return rec
    expected, source = _prediction(family, a, b, kind, k)
    if report.void:
        rec["result"] = "void"
    else:
        rec["result"] = "computed"
        rec["betti"] = {str(d): v for d, v in report.nonzero().items()}
        tors = {str(d): t for d, t in report.torsion.items() if t}
        if tors:
            rec["torsion"] = tors
    if expected is not None and not report.void:
        rec["expected"] = {"source": source, "betti": {str(d): v for d, v in sorted(expected.items())}}
        rec["matches"] = report.nonzero() == expected and not report.has_torsion()
    rec["seconds"] = round(time.perf_counter() - t0, 3)
    return rec


def _sweep_call(job: tuple) -> dict:
    return sweep_point(*job)


def cmd_sweep(args, out) -> int:
    if args.family == CYCLE_POWER:
        if args.p is None or args.n is None:
            raise UsageError("cycle_power sweep needs --n and --p")
        grid = [(n, p) for n in parse_range(args.n) for p in parse_range(args.p)]
    else:
        if args.m is None or args.n is None:
            raise UsageError(f"{args.family} sweep needs --m and --n")
        grid = [(m, n) for m in parse_range(args.m) for n in parse_range(args.n)]
    k = args.k if args.k is not None else (2 if args.family == CYCLE_POWER else 3)
    jobs = [(args.family, a, b, args.kind, k) for a, b in grid]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_sweep_call, jobs))
    else:
        records = [_sweep_call(j) for j in jobs]
    failed = any(r.get("matches") is False and r["expected"]["source"] == "theorem" for r in records)
    payload = {"family": args.family, "kind": args.kind, "k": k, "points": records, "failed": failed}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    rows = []
    for r in records:
        a, b = r["params"].values()
        betti = " ".join(f"b{d}={v}" for d, v in r.get("betti", {}).items())
        rows.append([a, b, r["result"], betti, r.get("matches", ""), r["seconds"]])
    names = ["n", "p"] if args.family == CYCLE_POWER else ["m", "n"]
    emit(payload, names + ["result", "betti", "matches", "seconds"], rows, args.format, out)
    return 1 if failed else 0


# -- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cutcomplex",
        description="Total cut and cut complexes of graphs: facets, f-vectors, homology, Morse matchings.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family_required=True):
        if family_required:
            p.add_argument("family", help='family expression, e.g. "cycle_power(10,3)"')
        else:
            p.add_argument("family", nargs="?", help="family expression")
        p.add_argument("--kind", choices=KINDS, default=TOTAL)
        p.add_argument("-k", type=int, default=2)
        p.add_argument("--format", choices=("json", "csv", "markdown"), default="json")

    p = sub.add_parser("facets", help="list facets", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    common(p)
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("fvector", help="face counts per dimension")
    common(p, family_required=False)
    p.add_argument("--from-facets", metavar="FILE",
                   help="read facets (JSON from `facets`, or one face per line) instead of a family")
    p.set_defaults(func=cmd_fvector)

    p = sub.add_parser("betti", help="reduced integral homology")
    common(p)
    p.add_argument("--dims", metavar="A..B", help="only these dimensions (bypasses the face budget)")
    p.add_argument("--rank-method", choices=("snf", "rational"), default="snf")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("morse", help="element matchings and acyclicity", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    common(p)
    p.add_argument("--order", metavar="V0,V1,...", help="matching order; products accept i.j labels")
    p.add_argument("--emit-pairs", action="store_true", help="include every matched pair")
    p.set_defaults(func=cmd_morse)

    jobs_default = os.cpu_count() or 1
    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--budget", type=int, metavar="N", help="cap every vertex budget at N vertices")
    p.add_argument("--jobs", type=int, default=jobs_default)
    p.add_argument("--format", choices=("json", "csv", "markdown"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="homology over a parameter grid")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", metavar="A..B")
    p.add_argument("--p", metavar="A..B")
    p.add_argument("--m", metavar="A..B")
    p.add_argument("--kind", choices=KINDS, default=TOTAL)
    p.add_argument("-k", type=int, default=None, help="default 2 for cycle powers, 3 for products")
    p.add_argument("--jobs", type=int, default=jobs_default)
    p.add_argument("--out", metavar="FILE", help="also write the JSON report here")
    p.add_argument("--format", choices=("json", "csv", "markdown"), default="json")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"cutcomplex {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
