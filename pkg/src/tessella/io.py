"""JSON documents for polygons and tilings (schema version 1).

A point is ``[x, y]`` (numbers, decimal strings or ``"p/q+r/s√5"``
strings) or ``{"cyc": [c0, c1, c2, c3]}`` for an exact point
``c0 + c1 ζ + c2 ζ² + c3 ζ³`` with ``ζ = exp(2πi/5)``.  Exact points and
exact rotations (multiples of 36 degrees) survive a round trip unchanged;
floats are written with ``repr`` so they do as well.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from . import num
from .geometry import Isometry, Polygon, make_polygon
from .qfield import Cyc, format_cyc, parse_cyc, parse_qsqrt5
from .tiling import EdgeDecoration, Marking, PlacedTile, Prototile, Tiling

SCHEMA_VERSION = 1


class DocumentError(ValueError):
    """Malformed or schema-invalid document."""


# ---------------------------------------------------------------------------
# scalars and points

def parse_scalar(v) -> float:
    if isinstance(v, bool):
        raise DocumentError("booleans are not numbers")
    if isinstance(v, (int, float)):
        return float(v)
    if isinstance(v, str):
        try:
            return float(v)
        except ValueError:
            pass
        try:
            return float(parse_qsqrt5(v))
        except ValueError as e:
            raise DocumentError(str(e)) from None
    raise DocumentError(f"not a number: {v!r}")


def parse_point(p) -> complex | Cyc:
    if isinstance(p, dict):
        if "cyc" not in p:
            raise DocumentError("point object needs a 'cyc' field")
        try:
            return parse_cyc(p["cyc"])
        except (ValueError, ZeroDivisionError) as e:
            raise DocumentError(str(e)) from None
    if isinstance(p, (list, tuple)) and len(p) == 2:
        return complex(parse_scalar(p[0]), parse_scalar(p[1]))
    raise DocumentError(f"not a point: {p!r}")


def point_json(z) -> Any:
    if isinstance(z, Cyc):
        return {"cyc": format_cyc(z)}
    z = complex(z)
    return [z.real, z.imag]


# ---------------------------------------------------------------------------
# polygons

def polygon_from_json(doc: dict, allow_nonconvex: bool = False) -> Polygon:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise DocumentError("polygon document needs 'vertices'")
    unit = doc.get("angle_unit", "degrees")
    if unit != "degrees":
        raise DocumentError(f"unsupported angle unit {unit!r}")
    verts = doc["vertices"]
    if not isinstance(verts, list) or len(verts) < 3:
        raise DocumentError("a polygon needs at least three vertices")
    pts = [parse_point(p) for p in verts]
    return make_polygon(pts, allow_nonconvex=allow_nonconvex)


def polygon_json(p: Polygon) -> dict:
    return {"schema_version": SCHEMA_VERSION, "angle_unit": "degrees",
            "vertices": [point_json(v) for v in p.vertices]}


def marking_json(m: Marking) -> dict:
    return {"vertex_colors": list(m.vertex_colors),
            "edges": [[d.arrows, d.forward] for d in m.edge_decorations]}


def marking_from_json(doc: dict) -> Marking:
    try:
        return Marking(tuple(doc["vertex_colors"]),
                       tuple(EdgeDecoration(int(a), bool(f)) for a, f in doc["edges"]))
    except (KeyError, TypeError, ValueError) as e:
        raise DocumentError(f"bad marking: {e}") from None


# ---------------------------------------------------------------------------
# tilings

def _iso_json(g: Isometry) -> dict:
    out = {"rotation_deg": g.angle_deg, "translation": [complex(g.trans).real, complex(g.trans).imag],
           "reflected": bool(g.reflected)}
    if g.is_exact:
        out["rotation_k36"] = int(round(g.angle_deg / 36.0)) % 10
        out["translation_cyc"] = format_cyc(Cyc.coerce(g.trans))
    return out


def _iso_from_json(d: dict) -> Isometry:
    refl = d.get("reflected", False)
    if not isinstance(refl, bool):
        raise DocumentError("'reflected' must be a boolean")
    if "rotation_k36" in d and "translation_cyc" in d:
        try:
            return Isometry.exact(int(d["rotation_k36"]), parse_cyc(d["translation_cyc"]), refl)
        except (ValueError, TypeError) as e:
            raise DocumentError(str(e)) from None
    try:
        ang = parse_scalar(d["rotation_deg"])
        tx, ty = (parse_scalar(v) for v in d["translation"])
    except (KeyError, TypeError, ValueError) as e:
        raise DocumentError(f"bad tile placement: {e}") from None
    rot = complex(math.cos(math.radians(ang)), math.sin(math.radians(ang)))
    return Isometry(rot, complex(tx, ty), refl)


def tiling_json(t: Tiling) -> dict:
    protos = {}
    for name, p in sorted(t.prototiles.items()):
        d = polygon_json(p.polygon)
        del d["schema_version"]
        if p.marking is not None:
            d["marking"] = marking_json(p.marking)
        protos[name] = d
    (x0, y0), (x1, y1) = t.window
    return {
        "schema_version": SCHEMA_VERSION,
        "tolerance": num.EPS,
        "prototiles": protos,
        "tiles": [dict(prototile=pt.prototile, **_iso_json(pt.transform)) for pt in t.tiles],
        "window": [[x0, y0], [x1, y1]],
        "meta": _jsonable(t.meta),
    }


def tiling_from_json(doc: dict) -> Tiling:
    if not isinstance(doc, dict):
        raise DocumentError("tiling document must be an object")
    v = doc.get("schema_version", SCHEMA_VERSION)
    if v != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {v!r}")
    for key in ("prototiles", "tiles", "window"):
        if key not in doc:
            raise DocumentError(f"tiling document needs {key!r}")
    protos = {}
    if not isinstance(doc["prototiles"], dict):
        raise DocumentError("'prototiles' must be an object")
    for name, pd in doc["prototiles"].items():
        poly = polygon_from_json(pd, allow_nonconvex=True)
        mk = marking_from_json(pd["marking"]) if "marking" in pd else None
        protos[name] = Prototile(name, poly, mk)
    tiles = []
    for td in doc["tiles"]:
        if not isinstance(td, dict) or "prototile" not in td:
            raise DocumentError("each tile needs a 'prototile'")
        if td["prototile"] not in protos:
            raise DocumentError(f"unknown prototile {td['prototile']!r}")
        tiles.append(PlacedTile(td["prototile"], _iso_from_json(td)))
    try:
        (x0, y0), (x1, y1) = doc["window"]
        window = ((parse_scalar(x0), parse_scalar(y0)), (parse_scalar(x1), parse_scalar(y1)))
        return Tiling(protos, tiles, window, dict(doc.get("meta", {})))
    except (TypeError, ValueError) as e:
        raise DocumentError(str(e)) from None


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, Cyc):
        return {"cyc": format_cyc(x)}
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False)


def load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path}: {e}") from None
