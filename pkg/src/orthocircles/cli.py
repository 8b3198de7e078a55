"""Command-line surface: arrangement documents, report output, SVG export.

Subcommands: gen | verify | analyze | cells | audit | oracle | export-svg.
Report commands print one tab-delimited record per line and can mirror the
full report to JSON (``--report``) and a matplotlib figure (``--figure``).
Exit codes: 0 success, 1 violations or failed checks in the emitted report,
2 parameter, parse, or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from collections import Counter
from typing import Optional, Sequence

from .analysis import Classification, MissingRedError, audit, select_red
from .arrangement import Arrangement, Mode, depth_labeling, is_nonnested, make_arrangement, validate
from .cells import NonGenericError, build_subdivision, face_census
from .generators import (
    AugmentationError,
    DomainError,
    GenerationError,
    augment_triangles,
    make_nested_wheels,
    make_nonnested_wheels,
    make_random_nonnested,
    make_wheel,
)
from .geom import Circle, TangencyError, Tolerance
from .graph import NotPlaneError, build_graph, check_bounds, crossing_pairs, edge_count, find_forbidden, max_edges_c3c4_free, outer_face

FORMAT_VERSION = "1"
REPORT_SCHEMA_VERSION = "1"


class DocumentError(ValueError):
    """Malformed arrangement document."""


# ----------------------------------------------------------------------
# Arrangement documents
# ----------------------------------------------------------------------

def arrangement_to_document(arr: Arrangement) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "tolerance": arr.tol.rel_eps,
        "circles": [
            {"id": c.id, "cx": c.center.x, "cy": c.center.y, "r": c.radius}
            for c in arr.circles
        ],
    }


def document_to_arrangement(doc: dict, tol_override: Optional[float] = None) -> Arrangement:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {doc.get('format_version')!r}")
    try:
        rel_eps = float(doc["tolerance"]) if tol_override is None else tol_override
        circles = [
            Circle.at(str(c["id"]), float(c["cx"]), float(c["cy"]), float(c["r"]))
            for c in doc["circles"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed document: {exc}") from exc
    try:
        return make_arrangement(circles, Tolerance(rel_eps))
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_text_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_arrangement(path: str, tol_override: Optional[float] = None) -> Arrangement:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from exc
    return document_to_arrangement(doc, tol_override)


# ----------------------------------------------------------------------
# SVG export
# ----------------------------------------------------------------------

_SVG_COLORS = {"red": "#d62728", "black": "#1a1a1a", "green": "#2ca02c", "other": "#7f7f7f"}


def _svg_color(cid: str, cls: Optional[Classification]) -> str:
    if cls is None:
        return _SVG_COLORS["other"]
    if cid == cls.red:
        return _SVG_COLORS["red"]
    if cid in cls.black:
        return _SVG_COLORS["black"]
    if cid in cls.green:
        return _SVG_COLORS["green"]
    return _SVG_COLORS["other"]


def arrangement_svg(arr: Arrangement, cls: Optional[Classification] = None) -> str:
    """Deterministic SVG: one circle element per circle inside one group."""
    if arr.circles:
        xmin = min(c.center.x - c.radius for c in arr.circles)
        xmax = max(c.center.x + c.radius for c in arr.circles)
        ymin = min(c.center.y - c.radius for c in arr.circles)
        ymax = max(c.center.y + c.radius for c in arr.circles)
    else:
        xmin = ymin = -1.0
        xmax = ymax = 1.0
    width = xmax - xmin
    height = ymax - ymin
    margin = 0.05 * max(width, height, 1e-9)
    diag = math.hypot(width + 2 * margin, height + 2 * margin)
    stroke = 0.005 * diag
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{xmin - margin!r} {ymin - margin!r} '
        f'{width + 2 * margin!r} {height + 2 * margin!r}">',
        f'<g fill="none" stroke-width="{stroke!r}">',
    ]
    for c in arr.circles:
        lines.append(
            f'<circle cx="{c.center.x!r}" cy="{c.center.y!r}" r="{c.radius!r}" '
            f'stroke="{_svg_color(c.id, cls)}"/>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def _emit(out_path: Optional[str], text: str) -> None:
    if out_path:
        write_text_atomic(out_path, text)
    else:
        sys.stdout.write(text)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def cmd_gen(args: argparse.Namespace) -> int:
    tol = Tolerance(args.tolerance)
    try:
        if args.kind == "wheel":
            if args.satellites is None:
                return _fail("gen wheel requires --satellites")
            arr = make_wheel(args.satellites, args.scale, args.rotation, tol)
        elif args.kind == "b":
            if args.wheels is None or args.satellites is None:
                return _fail("gen b requires --wheels and --satellites")
            arr = make_nested_wheels(args.wheels, args.satellites, tol)
        elif args.kind == "nonnested":
            if args.wheels is None:
                return _fail("gen nonnested requires --wheels")
            arr = make_nonnested_wheels(args.wheels, tol)
        elif args.kind == "random":
            if args.n is None:
                return _fail("gen random requires --n")
            arr = make_random_nonnested(args.n, args.seed, tol)
        else:  # pragma: no cover - argparse restricts choices
            return _fail(f"unknown kind {args.kind!r}")
        if args.augment:
            arr = augment_triangles(arr)
    except (DomainError, GenerationError, AugmentationError, ValueError) as exc:
        return _fail(str(exc))
    _emit(args.out, dumps_document(arrangement_to_document(arr)))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        arr = load_arrangement(args.file, args.tolerance)
    except DocumentError as exc:
        return _fail(str(exc))
    mode = Mode.ACUTE if args.acute else Mode.ORTHOGONAL
    report = validate(arr, mode)
    print(f"mode\t{mode.value}")
    print(f"circles\t{len(arr)}")
    for note in report.notes:
        print(f"note\t{note}")
    for v in report.violations:
        print(f"violation\t{v.ids[0]}\t{v.ids[1]}\t{v.observed}\t{v.expected}")
    print(f"ok\t{'true' if report.ok else 'false'}")
    if args.report:
        doc = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "report": "validation",
            "mode": mode.value,
            "ok": report.ok,
            "violations": [
                {"ids": list(v.ids), "observed": v.observed, "expected": v.expected}
                for v in report.violations
            ],
            "notes": list(report.notes),
        }
        write_text_atomic(args.report, dumps_document(doc))
    return 0 if report.ok else 1


def _validated_mode(arr: Arrangement) -> tuple[Optional[Mode], list[str]]:
    ortho = validate(arr, Mode.ORTHOGONAL)
    if ortho.ok:
        return Mode.ORTHOGONAL, []
    acute = validate(arr, Mode.ACUTE)
    if acute.ok:
        return Mode.ACUTE, []
    lines = [
        f"violation\t{v.ids[0]}\t{v.ids[1]}\t{v.observed}\t{v.expected}"
        for v in ortho.violations
    ]
    return None, lines


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        arr = load_arrangement(args.file, args.tolerance)
    except DocumentError as exc:
        return _fail(str(exc))
    mode, violation_lines = _validated_mode(arr)
    if mode is None:
        for line in violation_lines:
            print(line)
        print("ok\tfalse")
        return 1
    try:
        g = build_graph(arr)
    except TangencyError as exc:
        return _fail(str(exc))
    n = len(g.vertices)
    m = edge_count(g)
    crossings = crossing_pairs(g)
    depths = depth_labeling(arr)
    histogram = Counter(depths.depths.values())
    nonnested = is_nonnested(arr)
    try:
        boundary = outer_face(g)
        outer_size: Optional[int] = len(boundary)
    except NotPlaneError:
        boundary = []
        outer_size = None
    bounds = check_bounds(arr)
    forbidden = find_forbidden(g)

    print(f"mode\t{mode.value}")
    print(f"n\t{n}")
    print(f"m\t{m}")
    print(f"crossing_count\t{crossings.count}")
    print(f"nonnested\t{'true' if nonnested else 'false'}")
    hist_text = ",".join(f"{d}:{histogram[d]}" for d in sorted(histogram))
    print(f"depth_histogram\t{hist_text}")
    print(f"outer_face_size\t{outer_size if outer_size is not None else 'not_plane'}")
    for b in bounds.checks:
        if b.applicable:
            print(
                f"bound\t{b.name}\tlimit={b.limit!r}\t"
                f"{'pass' if b.passed else 'fail'}\tslack={b.slack!r}"
            )
        else:
            print(f"bound\t{b.name}\tnot_applicable")
    print(f"forbidden_subgraph\t{_forbidden_text(forbidden)}")

    ok = bounds.all_pass and forbidden is None
    if nonnested and crossings.count > 0:
        ok = False
    print(f"ok\t{'true' if ok else 'false'}")

    if args.report:
        doc = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "report": "analyze",
            "mode": mode.value,
            "n": n,
            "m": m,
            "crossing_count": crossings.count,
            "nonnested": nonnested,
            "depth_histogram": {str(d): histogram[d] for d in sorted(histogram)},
            "outer_face_size": outer_size,
            "outer_face": boundary,
            "bounds": [
                {
                    "name": b.name,
                    "applicable": b.applicable,
                    "limit": b.limit,
                    "passed": b.passed,
                    "slack": b.slack,
                }
                for b in bounds.checks
            ],
            "forbidden_subgraph": _forbidden_text(forbidden),
            "ok": ok,
        }
        write_text_atomic(args.report, dumps_document(doc))
    if args.figure:
        from .figures import render_arrangement

        render_arrangement(args.figure, arr, graph=g, title=os.path.basename(args.file))
    return 0 if ok else 1


def _forbidden_text(witness) -> str:
    if witness is None:
        return "none"
    return f"{witness.kind}:{','.join(witness.vertices)}"


def cmd_cells(args: argparse.Namespace) -> int:
    try:
        arr = load_arrangement(args.file, args.tolerance)
    except DocumentError as exc:
        return _fail(str(exc))
    mode, violation_lines = _validated_mode(arr)
    if mode is None:
        for line in violation_lines:
            print(line)
        print("ok\tfalse")
        return 1
    try:
        sub = build_subdivision(arr)
    except NonGenericError as exc:
        print(f"non_generic\t{exc}")
        print("ok\tfalse")
        return 1
    census = face_census(sub)
    euler = sub.euler_characteristic_holds()
    print(f"vertices\t{len(sub.vertices)}")
    print(f"arcs\t{sub.num_arcs}")
    print(f"bounded_faces\t{census.total_bounded}")
    for sides in sorted(census.by_sides):
        print(f"sides\t{sides}\t{census.by_sides[sides]}")
    print(f"digons\t{census.digon_count}")
    print(f"triangles\t{census.triangle_count}")
    print(f"euler\t{'ok' if euler else 'violated'}")
    ok = euler
    print(f"ok\t{'true' if ok else 'false'}")
    if args.report:
        doc = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "report": "cells",
            "vertices": len(sub.vertices),
            "arcs": sub.num_arcs,
            "bounded_faces": census.total_bounded,
            "by_sides": {str(k): v for k, v in sorted(census.by_sides.items())},
            "digons": census.digon_count,
            "triangles": census.triangle_count,
            "euler_ok": euler,
            "ok": ok,
        }
        write_text_atomic(args.report, dumps_document(doc))
    if args.figure:
        from .figures import render_arrangement

        render_arrangement(args.figure, arr, census=census, title=os.path.basename(args.file))
    return 0 if ok else 1


def cmd_audit(args: argparse.Namespace) -> int:
    try:
        arr = load_arrangement(args.file, args.tolerance)
    except DocumentError as exc:
        return _fail(str(exc))
    report = audit(arr)
    print(f"mode\t{report.mode.value if report.mode else 'invalid'}")
    for e in report.entries:
        print(f"entry\t{e.tag}\t{e.status.value}\t{e.detail}")
    print(f"ok\t{'true' if report.ok else 'false'}")
    if args.report:
        doc = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "report": "audit",
            "mode": report.mode.value if report.mode else None,
            "entries": [
                {"tag": e.tag, "status": e.status.value, "detail": e.detail}
                for e in report.entries
            ],
            "ok": report.ok,
        }
        write_text_atomic(args.report, dumps_document(doc))
    if args.figure:
        from .figures import render_arrangement

        cls = None
        try:
            cls = select_red(arr)
        except MissingRedError:
            cls = None
        render_arrangement(args.figure, arr, classification=cls, title=os.path.basename(args.file))
    return 0 if report.ok else 1


def cmd_oracle(args: argparse.Namespace) -> int:
    if args.query != "max-edges":
        return _fail(f"unknown oracle query {args.query!r}")
    try:
        best, witness = max_edges_c3c4_free(args.n)
    except ValueError as exc:
        return _fail(str(exc))
    print(f"max_edges\t{best}")
    print(f"witness_n\t{witness.n}")
    edges_text = ",".join(f"{u}-{v}" for u, v in witness.edges())
    print(f"witness_edges\t{edges_text}")
    return 0


def cmd_export_svg(args: argparse.Namespace) -> int:
    try:
        arr = load_arrangement(args.file, args.tolerance)
    except DocumentError as exc:
        return _fail(str(exc))
    cls = None
    try:
        cls = select_red(arr)
    except MissingRedError:
        cls = None
    _emit(args.out, arrangement_svg(arr, cls))
    return 0


# ----------------------------------------------------------------------
# Argument parsing
# ----------------------------------------------------------------------

def _add_tolerance(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--tolerance",
        type=float,
        default=None,
        help="override the relative tolerance (default: document value)",
    )


def _add_report_figure(p: argparse.ArgumentParser) -> None:
    p.add_argument("--report", help="write the JSON report to this path")
    p.add_argument("--figure", help="render a figure of the arrangement to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthocircles",
        description="construct, validate, and analyze arrangements of orthogonal circles",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an arrangement document")
    p.add_argument("kind", choices=["wheel", "b", "nonnested", "random"])
    p.add_argument("--wheels", type=int, default=None, help="number of nested wheels")
    p.add_argument("--satellites", type=int, default=None, help="satellites per wheel")
    p.add_argument("--n", type=int, default=None, help="circle count for random generation")
    p.add_argument("--seed", type=int, default=0, help="seed for random generation")
    p.add_argument("--scale", type=float, default=1.0, help="wheel scale factor")
    p.add_argument("--rotation", type=float, default=0.0, help="wheel rotation in radians")
    p.add_argument("--augment", action="store_true", help="add a corner circle per intersection point")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--tolerance", type=float, default=1e-9, help="relative tolerance")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="validate an arrangement document")
    p.add_argument("file")
    p.add_argument("--acute", action="store_true", help="accept any angle up to pi/2")
    _add_tolerance(p)
    p.add_argument("--report", help="write the JSON report to this path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="graph statistics, crossings, bounds")
    p.add_argument("file")
    _add_tolerance(p)
    _add_report_figure(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("cells", help="face census of the arrangement")
    p.add_argument("file")
    _add_tolerance(p)
    _add_report_figure(p)
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("audit", help="check the structural laws of valid arrangements")
    p.add_argument("file")
    _add_tolerance(p)
    _add_report_figure(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("oracle", help="exhaustive small-graph bounds")
    p.add_argument("query", choices=["max-edges"])
    p.add_argument("--n", type=int, required=True, help="vertex count (1..7)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export-svg", help="render the arrangement as SVG")
    p.add_argument("file")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    _add_tolerance(p)
    p.set_defaults(func=cmd_export_svg)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
