"""Command line: ``tessella classify|generate|penrose|ammann|validate|render``.

stdout carries JSON only; human-readable summaries go to stderr.

Exit codes:
  0  success (for generate/validate: every check passed)
  1  validation failed (the report is still printed)
  2  malformed input
  3  polygon is not convex
  4  polygon does not satisfy the requested type's conditions
  5  no edge-to-edge periodic layout for the requested type
  6  degenerate Ammann parameter

``ammann`` also exits 1 when the recomposed patch does not use exactly
three prototile shapes.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io
from .geometry import GeometryError, NonConvex, SelfIntersecting

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MALFORMED = 2
EXIT_NONCONVEX = 3
EXIT_TYPE = 4
EXIT_UNSUPPORTED = 5
EXIT_DEGENERATE_J = 6

AMMANN_SHAPES = 3  # one hexagon and two pentagons


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, ensure_ascii=False) + "\n")


def _say(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _write_doc(path: str | None, doc: dict) -> None:
    text = io.dumps(doc)
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _summary(rep, label: str) -> None:
    p = rep.to_json()["pass"]
    flags = " ".join(f"{k}={'pass' if v else 'FAIL'}" for k, v in p.items())
    _say(f"{label}: {rep.tile_count} tiles, prototile_count={rep.prototile_count}, {flags}")


def _load_polygon(path: str):
    doc = io.load(path)
    return io.polygon_from_json(doc)


# ---------------------------------------------------------------------------

def cmd_classify(args) -> int:
    from .classifier import classify
    p = _load_polygon(args.input)
    res = classify(p, args.tol)
    _emit(res.to_json())
    return EXIT_OK


def cmd_generate(args) -> int:
    from .classifier import TileTypeId
    from .periodic import fundamental_region, generate_patch
    from .validate import validate
    p = _load_polygon(args.input)
    try:
        t = TileTypeId.parse(args.type)
    except ValueError as e:
        raise io.DocumentError(str(e)) from None
    region = fundamental_region(p, t)
    tiling = generate_patch(region, args.m, args.n)
    _write_doc(args.out, io.tiling_json(tiling))
    rep = validate(tiling)
    _summary(rep, f"generate {t}")
    return EXIT_OK if rep.all_pass(require_monohedral=True, require_periodic=True) else EXIT_INVALID


def cmd_penrose(args) -> int:
    from .penrose import check_matching, penrose_patch
    from .validate import validate
    if args.k > args.max_k:
        raise io.DocumentError(f"k={args.k} exceeds the configured maximum {args.max_k}")
    t = penrose_patch(args.k, seed=args.seed_tile)
    _write_doc(args.out, io.tiling_json(t))
    viol = check_matching(t)
    rep = validate(t)
    _say(f"penrose k={args.k}: {len(viol)} matching violations")
    _summary(rep, "penrose")
    return EXIT_OK if not viol and rep.all_pass(require_monohedral=False, require_periodic=False) else EXIT_INVALID


def cmd_ammann(args) -> int:
    from .ammann import AmmannMarking, ammann_recompose
    from .penrose import penrose_patch
    from .validate import validate
    if args.k > args.max_k:
        raise io.DocumentError(f"k={args.k} exceeds the configured maximum {args.max_k}")
    marking = AmmannMarking.from_parameter(args.j) if args.j is not None else AmmannMarking.default()
    t = ammann_recompose(penrose_patch(args.k), marking)
    _write_doc(args.out, io.tiling_json(t))
    rep = validate(t, periodicity=False)
    _summary(rep, f"ammann k={args.k}")
    if rep.prototile_count != AMMANN_SHAPES:
        _say(f"ammann: expected {AMMANN_SHAPES} prototile shapes, found {rep.prototile_count}")
        return EXIT_INVALID
    return EXIT_OK if rep.all_pass(require_monohedral=False, require_periodic=False) else EXIT_INVALID


def cmd_validate(args) -> int:
    from .validate import validate
    t = io.tiling_from_json(io.load(args.input))
    rep = validate(t)
    _emit(rep.to_json())
    _summary(rep, "validate")
    ok = rep.all_pass(require_monohedral=args.require_monohedral, require_periodic=args.require_periodic)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_render(args) -> int:
    from .render import region_indices, render_svg
    t = io.tiling_from_json(io.load(args.input))
    hl = region_indices(t) if args.fundamental_region_highlight else set()
    svg = render_svg(t, hl)
    with open(args.out, "w", encoding="utf-8") as f:
        f.write(svg)
    _say(f"render: {len(t.tiles)} tiles -> {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tessella", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="list the tile types of a convex polygon")
    p.add_argument("input")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("generate", help="periodic patch from a polygon and its type")
    p.add_argument("input")
    p.add_argument("--type", required=True, help="Triangle, Quadrilateral, P1..P15 or H1..H3")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("penrose", help="substituted Penrose rhombus patch")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--seed-tile", choices=("thick", "thin"), default="thick")
    p.add_argument("--max-k", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_penrose)

    p = sub.add_parser("ammann", help="recompose a Penrose patch into hexagons and pentagons")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--j", type=float, default=None, help="position of J along its segment")
    p.add_argument("--max-k", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ammann)

    p = sub.add_parser("validate", help="check a tiling document")
    p.add_argument("input")
    p.add_argument("--require-monohedral", action="store_true")
    p.add_argument("--require-periodic", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("render", help="SVG picture of a tiling document")
    p.add_argument("input")
    p.add_argument("--out", required=True)
    p.add_argument("--fundamental-region-highlight", action="store_true")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    from .ammann import DegenerateJ
    from .periodic import TypeConditionNotMet, UnsupportedType
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_MALFORMED if e.code else EXIT_OK
    try:
        return args.func(args)
    except (NonConvex, SelfIntersecting) as e:
        _say(f"error: {e}")
        return EXIT_NONCONVEX
    except TypeConditionNotMet as e:
        _say(f"error: {e}")
        return EXIT_TYPE
    except UnsupportedType as e:
        _say(f"error: {e}")
        return EXIT_UNSUPPORTED
    except DegenerateJ as e:
        _say(f"error: {e}")
        return EXIT_DEGENERATE_J
    except (io.DocumentError, GeometryError, OSError, KeyError, ValueError) as e:
        _say(f"error: {e}")
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
