"""Tile-type classification of convex polygons.

Labels: vertices ``A, B, C, ...`` counterclockwise; the edge named by a
lowercase letter ends at the vertex of the same name, so for a pentagon
``b = AB, c = BC, d = CD, e = DE`` and ``a = EA`` (hexagons: ``a = FA``).

Each type is a list of conditions.  Angle conditions are linear relations
over interior angles in degrees; edge conditions are linear relations
over edge lengths that must vanish.  A polygon belongs to a type when
some relabeling (cyclic shift, optionally mirrored) satisfies them all.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from . import num
from .geometry import Polygon, interior_angles_deg
from .qfield import Cyc, QSqrt5

LETTERS = "ABCDEF"

# arccos((3*sqrt(57) - 17)/16), the one free angle of type-14 pentagons
TYPE14_C = math.degrees(math.acos((3 * math.sqrt(57) - 17) / 16))


@dataclass(frozen=True)
class AngleCond:
    coeffs: tuple[tuple[str, float], ...]   # ((label, coefficient), ...)
    rhs: float                               # degrees

    def residual(self, angles: dict[str, float]) -> float:
        return sum(c * angles[k] for k, c in self.coeffs) - self.rhs

    def __str__(self):
        return " + ".join(f"{_num(c)}{k}" for k, c in self.coeffs) + f" = {_num(self.rhs)}"


@dataclass(frozen=True)
class EdgeCond:
    coeffs: tuple[tuple[str, float], ...]   # sum of coefficient * length = 0

    def residual(self, edges: dict[str, float]) -> float:
        return sum(c * edges[k] for k, c in self.coeffs)

    def __str__(self):
        return " + ".join(f"{_num(c)}{k}" for k, c in self.coeffs) + " = 0"


def _num(c):
    return str(int(c)) if float(c).is_integer() else f"{c:.6g}"


def _ang(text: str) -> AngleCond:
    """Parse ``"2B + C = 360"`` style angle conditions."""
    lhs, rhs = text.split("=")
    rhs = rhs.strip()
    if rhs in LETTERS:
        terms = _terms(lhs) + [(rhs, -1.0)]
        return AngleCond(tuple(terms), 0.0)
    return AngleCond(tuple(_terms(lhs)), float(rhs))


def _eq(*chain: str) -> list[EdgeCond]:
    """Edge equalities ``a = b = c + e``: each side minus the first."""
    sides = [_terms(s) for s in chain]
    out = []
    for s in sides[1:]:
        terms = dict()
        for k, c in sides[0]:
            terms[k] = terms.get(k, 0.0) + c
        for k, c in s:
            terms[k] = terms.get(k, 0.0) - c
        out.append(EdgeCond(tuple((k, c) for k, c in terms.items() if c)))
    return out


def _terms(expr: str) -> list[tuple[str, float]]:
    out = []
    for part in expr.replace("-", "+-").split("+"):
        part = part.strip().replace(" ", "")
        if not part:
            continue
        sign = -1.0 if part.startswith("-") else 1.0
        part = part.lstrip("-")
        coef = part[:-1]
        out.append((part[-1], sign * (float(coef) if coef else 1.0)))
    return out


@dataclass(frozen=True)
class TileType:
    kind: str            # "Pentagon" or "Hexagon"
    index: int
    angle_conds: tuple[AngleCond, ...]
    edge_conds: tuple[EdgeCond, ...]

    @property
    def sides(self) -> int:
        return 5 if self.kind == "Pentagon" else 6

    @property
    def id(self) -> "TileTypeId":
        return TileTypeId(self.kind, self.index)


def _tt(kind, index, angles=(), edges=()):
    ec = []
    for chain in edges:
        ec.extend(_eq(*chain.split("=")))
    return TileType(kind, index, tuple(_ang(a) for a in angles), tuple(ec))


HEXAGON_TYPES = {
    1: _tt("Hexagon", 1, ["A + B + C = 360"], ["a = d"]),
    2: _tt("Hexagon", 2, ["A + B + D = 360"], ["a = d", "c = e"]),
    3: _tt("Hexagon", 3, ["A = 120", "C = 120", "E = 120"], ["a = b", "c = d", "e = f"]),
}

PENTAGON_TYPES = {
    1: _tt("Pentagon", 1, ["A + B + C = 360"]),
    2: _tt("Pentagon", 2, ["B + D = 180"], ["c = e"]),
    3: _tt("Pentagon", 3, ["A = 120", "C = 120", "D = 120"], ["a = b", "d = c + e"]),
    4: _tt("Pentagon", 4, ["B = 90", "D = 90"], ["b = c", "d = e"]),
    5: _tt("Pentagon", 5, ["A = 60", "D = 120"], ["a = b", "d = e"]),
    6: _tt("Pentagon", 6, ["B + D = 180", "2B = E"], ["a = d = e", "b = c"]),
    7: _tt("Pentagon", 7, ["B + 2E = 360", "2C + D = 360"], ["b = c = d = e"]),
    8: _tt("Pentagon", 8, ["2B + C = 360", "D + 2E = 360"], ["b = c = d = e"]),
    9: _tt("Pentagon", 9, ["2A + C = 360", "D + 2E = 360"], ["b = c = d = e"]),
    10: _tt("Pentagon", 10, ["A = 90", "B + E = 180", "B + 2C = 360"], ["a = b = c + e"]),
    11: _tt("Pentagon", 11, ["A = 90", "2B + C = 360", "C + E = 180"], ["2a + c = d = e"]),
    12: _tt("Pentagon", 12, ["A = 90", "2B + C = 360", "C + E = 180"], ["2a = c + e = d"]),
    13: _tt("Pentagon", 13, ["B = 90", "E = 90", "2A + D = 360"], ["d = 2a = 2e"]),
    14: _tt("Pentagon", 14, ["A = 90", "2B + C = 360", "C + E = 180", f"C = {TYPE14_C!r}"],
            ["2a = 2c = d = e"]),
    15: _tt("Pentagon", 15, ["A = 150", "B = 60", "C = 135", "D = 105", "E = 90"],
            ["a = c = e", "b = 2a"]),
}

# d / a of a type-15 pentagon: sqrt(2 + sqrt(3))
TYPE15_D_OVER_A = math.sqrt(2 + math.sqrt(3))
PENTAGON_TYPES[15] = TileType(
    "Pentagon", 15, PENTAGON_TYPES[15].angle_conds,
    PENTAGON_TYPES[15].edge_conds + (EdgeCond((("d", 1.0), ("a", -TYPE15_D_OVER_A))),))

EDGE_TO_EDGE_PENTAGONS = frozenset({1, 2, 4, 5, 6, 7, 8, 9})


class ClassMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TileTypeId:
    kind: str      # "Triangle", "Quadrilateral", "Pentagon", "Hexagon"
    index: int = 0

    def __post_init__(self):
        if self.kind == "Pentagon" and not 1 <= self.index <= 15:
            raise ValueError("pentagon type index must be 1..15")
        if self.kind == "Hexagon" and not 1 <= self.index <= 3:
            raise ValueError("hexagon type index must be 1..3")
        if self.kind not in ("Triangle", "Quadrilateral", "Pentagon", "Hexagon"):
            raise ValueError(f"unknown tile class {self.kind!r}")

    def __str__(self):
        if self.kind == "Pentagon":
            return f"P{self.index}"
        if self.kind == "Hexagon":
            return f"H{self.index}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "TileTypeId":
        t = text.strip()
        low = t.lower()
        if low in ("triangle", "t", "tri"):
            return cls("Triangle")
        if low in ("quadrilateral", "q", "quad"):
            return cls("Quadrilateral")
        for prefix, kind in (("pentagon", "Pentagon"), ("hexagon", "Hexagon"), ("p", "Pentagon"), ("h", "Hexagon")):
            if low.startswith(prefix):
                rest = low[len(prefix):].strip("()_ -")
                if rest.isdigit():
                    return cls(kind, int(rest))
        raise ValueError(f"cannot parse tile type {text!r}")

    @property
    def table(self) -> TileType:
        if self.kind == "Pentagon":
            return PENTAGON_TYPES[self.index]
        if self.kind == "Hexagon":
            return HEXAGON_TYPES[self.index]
        raise KeyError(f"{self} has no condition table")


def Pentagon(k: int) -> TileTypeId:
    return TileTypeId("Pentagon", k)


def Hexagon(k: int) -> TileTypeId:
    return TileTypeId("Hexagon", k)


TRIANGLE = TileTypeId("Triangle")
QUADRILATERAL = TileTypeId("Quadrilateral")


@dataclass(frozen=True)
class Relabeling:
    """Label ``LETTERS[i]`` sits on polygon vertex ``(offset + s*i) mod n``, s = -1 if mirrored."""

    offset: int
    mirrored: bool = False

    def vertex(self, i: int, n: int) -> int:
        return (self.offset - i) % n if self.mirrored else (self.offset + i) % n

    def to_json(self):
        return {"offset": self.offset, "mirrored": self.mirrored}


@dataclass(frozen=True)
class LabeledPolygon:
    """A polygon with named angles A.. and edges a.. under a relabeling."""

    polygon: Polygon
    relabeling: Relabeling = Relabeling(0)

    @property
    def n(self) -> int:
        return len(self.polygon)

    def label_vertex(self, label: str) -> int:
        return self.relabeling.vertex(LETTERS.index(label), self.n)

    def vertex_point(self, label: str):
        return self.polygon.vertices[self.label_vertex(label)]

    def edge_points(self, label: str):
        """Endpoints (previous label's vertex, this label's vertex) of edge ``label``."""
        i = LETTERS.index(label.upper())
        n = self.n
        prev = LETTERS[(i - 1) % n]
        return self.vertex_point(prev), self.vertex_point(label.upper())

    def angles(self) -> dict[str, float]:
        degs = interior_angles_deg(self.polygon)
        return {LETTERS[i]: degs[self.relabeling.vertex(i, self.n)] for i in range(self.n)}

    def edges(self) -> dict[str, float]:
        out = {}
        for i in range(self.n):
            p, q = self.edge_points(LETTERS[i])
            out[LETTERS[i].lower()] = abs(complex(q) - complex(p))
        return out

    def edge_squares(self) -> dict[str, QSqrt5]:
        out = {}
        for i in range(self.n):
            p, q = self.edge_points(LETTERS[i])
            out[LETTERS[i].lower()] = (q - p).abs2()
        return out


def relabelings(n: int) -> list[Relabeling]:
    return [Relabeling(k, m) for m in (False, True) for k in range(n)]


@dataclass
class ClassificationResult:
    types: set = field(default_factory=set)
    witnesses: dict = field(default_factory=dict)      # TileTypeId -> Relabeling
    rejection_reason: str | None = None

    def sorted_types(self) -> list[TileTypeId]:
        order = {"Triangle": 0, "Quadrilateral": 1, "Pentagon": 2, "Hexagon": 3}
        return sorted(self.types, key=lambda t: (order[t.kind], t.index))

    def to_json(self) -> dict:
        out = {
            "types": [str(t) for t in self.sorted_types()],
            "edge_to_edge_capable": can_tile_edge_to_edge(self),
            "witnesses": {str(t): self.witnesses[t].to_json() for t in self.sorted_types() if t in self.witnesses},
        }
        if self.rejection_reason:
            out["reason"] = self.rejection_reason
        return out


# ---------------------------------------------------------------------------
# condition evaluation

def _float_match(lp: LabeledPolygon, tt: TileType, tol: float) -> bool:
    angles = lp.angles()
    edges = lp.edges()
    scale = max(edges.values())
    for c in tt.angle_conds:
        weight = max(1.0, sum(abs(k) for _, k in c.coeffs))
        if abs(math.radians(c.residual(angles))) > tol * weight:
            return False
    for c in tt.edge_conds:
        weight = max(1.0, sum(abs(k) for _, k in c.coeffs))
        if abs(c.residual(edges)) > tol * weight * scale:
            return False
    return True


def matches_type(lp: LabeledPolygon, t: TileTypeId, tol: float | None = None) -> bool:
    """Does the fixed labeling satisfy every condition of type ``t``?

    Float comparison: angle residuals in radians and edge residuals relative
    to the longest edge must stay within ``tol`` per unit of coefficient
    weight (default: the global tolerance).  Exact polygons with
    ``tol == 0`` are decided exactly.
    """
    if t.kind in ("Triangle", "Quadrilateral"):
        want = 3 if t.kind == "Triangle" else 4
        if lp.n != want:
            raise ClassMismatch(f"{t} needs a polygon with {want} vertices, got {lp.n}")
        return True
    tt = t.table
    if lp.n != tt.sides:
        raise ClassMismatch(f"{t} needs a polygon with {tt.sides} vertices, got {lp.n}")
    if tol is None:
        tol = num.EPS
    if tol == 0:
        if not lp.polygon.exact:
            raise ValueError("tol=0 needs an exact polygon")
        return _exact_match(lp, tt)
    return _float_match(lp, tt, tol)


def classify(p: Polygon, tol: float | None = None) -> ClassificationResult:
    """All known tile types of ``p``, each with a witnessing relabeling."""
    n = len(p)
    res = ClassificationResult()
    if n >= 7:
        res.rejection_reason = "SevenOrMoreEdges"
        return res
    if n == 3:
        res.types.add(TRIANGLE)
        res.witnesses[TRIANGLE] = Relabeling(0)
        return res
    if n == 4:
        res.types.add(QUADRILATERAL)
        res.witnesses[QUADRILATERAL] = Relabeling(0)
        return res
    table = PENTAGON_TYPES if n == 5 else HEXAGON_TYPES
    for k, tt in table.items():
        for rl in relabelings(n):
            if matches_type(LabeledPolygon(p, rl), tt.id, tol):
                res.types.add(tt.id)
                res.witnesses[tt.id] = rl
                break
    return res


def can_tile_edge_to_edge(r: ClassificationResult) -> bool:
    for t in r.types:
        if t.kind in ("Triangle", "Quadrilateral", "Hexagon"):
            return True
        if t.kind == "Pentagon" and t.index in EDGE_TO_EDGE_PENTAGONS:
            return True
    return False


def condition_distance(lp: LabeledPolygon, t: TileTypeId) -> float:
    """Largest normalized residual of the type's conditions (0 on the type)."""
    tt = t.table
    angles = lp.angles()
    edges = lp.edges()
    scale = max(edges.values())
    worst = 0.0
    for c in tt.angle_conds:
        worst = max(worst, abs(c.residual(angles)) / 180.0)
    for c in tt.edge_conds:
        worst = max(worst, abs(c.residual(edges)) / scale)
    return worst


# ---------------------------------------------------------------------------
# exact evaluation for polygons with coordinates in Q(zeta_5)

def _corner(lp: LabeledPolygon, label: str) -> Cyc:
    """``conj(incoming) * outgoing`` rotated so its argument is the interior angle."""
    n = lp.n
    i = lp.polygon.vertices.index(lp.vertex_point(label))
    vs = lp.polygon.vertices
    prev, cur, nxt = vs[(i - 1) % n], vs[i], vs[(i + 1) % n]
    u = nxt - cur
    v = prev - cur
    # arg(v / u) is the interior angle of a counterclockwise polygon
    return v * u.conjugate()


def _unit_power(k: float) -> Cyc | None:
    """``exp(2i * k degrees)`` when it lies in Q(zeta_5), else None."""
    twice = 2 * k
    steps = twice / 36.0
    if abs(steps - round(steps)) > 1e-12:
        return None
    return Cyc.unit(int(round(steps)))


def _exact_angle(lp: LabeledPolygon, c: AngleCond) -> bool:
    # exp(2i*theta) = w / conj(w) for w = corner product; work with the product
    num_, den = Cyc(1), Cyc(1)
    for label, k in c.coeffs:
        if not float(k).is_integer():
            return False
        w = _corner(lp, label)
        p, q = (w, w.conjugate()) if k > 0 else (w.conjugate(), w)
        for _ in range(int(abs(k))):
            num_ = num_ * p
            den = den * q
    target = _unit_power(c.rhs)
    if target is None:
        return False
    if num_ != den * target:
        return False
    # doubled angles agree; rule out an offset of 180 degrees numerically
    angles = lp.angles()
    return abs(c.residual(angles)) < 90.0


def _exact_edge(lp: LabeledPolygon, c: EdgeCond) -> bool:
    sq = lp.edge_squares()
    terms = [(sq[k], QSqrt5.coerce(_as_fraction(k_))) for k, k_ in c.coeffs]
    if any(k_ is None for _, k_ in terms):
        return False
    fl = lp.edges()
    value = sum(k_ * fl[k] for k, k_ in c.coeffs)
    if len(terms) == 1:
        return not terms[0][0]
    if len(terms) == 2:
        (s1, k1), (s2, k2) = terms
        if (k1 * k2).sign() > 0:
            return not s1 and not s2
        return k1 * k1 * s1 == k2 * k2 * s2
    if len(terms) == 3:
        (s1, k1), (s2, k2), (s3, k3) = terms
        r = k1 * k1 * s1 - k2 * k2 * s2 - k3 * k3 * s3
        if 4 * k2 * k2 * k3 * k3 * s2 * s3 != r * r:
            return False
        if r and r.sign() != (k2 * k3).sign():
            return False
        # |k1 l1| = |k2 l2 + k3 l3| holds exactly; the signs decide the rest
        return abs(value) < 1e-6 * max(fl.values())
    raise NotImplementedError("edge conditions with more than three terms")


def _as_fraction(x: float):
    from fractions import Fraction
    f = Fraction(x).limit_denominator(1000)
    return f if abs(float(f) - x) < 1e-12 else None


def _exact_match(lp: LabeledPolygon, tt: TileType) -> bool:
    for c in tt.angle_conds:
        if not _exact_angle(lp, c):
            return False
    for c in tt.edge_conds:
        if not _exact_edge(lp, c):
            return False
    return True


def classify_labels(types: Iterable[TileTypeId]) -> list[str]:
    return [str(t) for t in sorted(types)]
