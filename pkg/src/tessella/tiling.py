"""Prototiles, placed tiles and finite tiling patches."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .geometry import GeometryError, Isometry, Polygon, area
from .qfield import Cyc

UNCOLORED = "none"
COLORS = ("black", "white", UNCOLORED)


@dataclass(frozen=True)
class EdgeDecoration:
    """Arrow decoration on edge i (vertex i -> vertex i+1 of the prototile).

    ``arrows`` is 0, 1 or 2; ``forward`` says whether the arrows point from
    vertex i to vertex i+1.
    """

    arrows: int = 0
    forward: bool = True

    def __post_init__(self):
        if self.arrows not in (0, 1, 2):
            raise ValueError("arrow count must be 0, 1 or 2")


@dataclass(frozen=True)
class Marking:
    vertex_colors: tuple[str, ...]
    edge_decorations: tuple[EdgeDecoration, ...]

    def __post_init__(self):
        if len(self.vertex_colors) != len(self.edge_decorations):
            raise ValueError("marking needs one color per vertex and one decoration per edge")
        for c in self.vertex_colors:
            if c not in COLORS:
                raise ValueError(f"unknown vertex color {c!r}")

    @classmethod
    def blank(cls, n: int) -> "Marking":
        return cls((UNCOLORED,) * n, (EdgeDecoration(),) * n)


@dataclass(frozen=True)
class Prototile:
    name: str
    polygon: Polygon
    marking: Marking | None = None

    def __post_init__(self):
        if self.marking is not None and len(self.marking.vertex_colors) != len(self.polygon):
            raise ValueError(f"marking of {self.name!r} does not fit its polygon")


MarkedPrototile = Prototile


@dataclass(frozen=True)
class PlacedTile:
    prototile: str
    transform: Isometry


Window = tuple[tuple[float, float], tuple[float, float]]


@dataclass
class Tiling:
    """A finite patch: prototile table, placed tiles and a window of interest."""

    prototiles: dict[str, Prototile]
    tiles: list[PlacedTile]
    window: Window
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.prototiles:
            raise ValueError("tiling needs at least one prototile")
        (x0, y0), (x1, y1) = self.window
        if not (x1 > x0 and y1 > y0):
            raise ValueError("window must have positive area")
        for t in self.tiles:
            if t.prototile not in self.prototiles:
                raise KeyError(f"tile references unknown prototile {t.prototile!r}")

    def __len__(self):
        return len(self.tiles)

    def polygon(self, i: int) -> Polygon:
        return self.polygons[i]

    @cached_property
    def polygons(self) -> list[Polygon]:
        return [t.transform.apply_polygon(self.prototiles[t.prototile].polygon) for t in self.tiles]

    def placed_marking(self, i: int):
        """(vertices, colors, decorations) of tile i in its own CCW order.

        Decorations come back as ``(arrows, head_index)`` where ``head_index``
        is the local vertex index the arrows point to (None for plain edges).
        """
        t = self.tiles[i]
        proto = self.prototiles[t.prototile]
        poly = self.polygons[i]
        n = len(poly)
        mk = proto.marking or Marking.blank(n)
        if not t.transform.reflected:
            colors = list(mk.vertex_colors)
            decs = [(d.arrows, ((j + 1) % n if d.forward else j) if d.arrows else None)
                    for j, d in enumerate(mk.edge_decorations)]
            return poly.vertices, colors, decs
        # reflected copies list vertices in reverse: new i <-> old n-1-i
        colors = [mk.vertex_colors[n - 1 - i] for i in range(n)]
        decs = []
        for i in range(n):
            old = mk.edge_decorations[(n - 2 - i) % n]
            # old edge (n-2-i -> n-1-i) is new edge (i+1 -> i)
            if not old.arrows:
                decs.append((0, None))
            else:
                decs.append((old.arrows, i if old.forward else (i + 1) % n))
        return poly.vertices, colors, decs

    def total_area(self) -> float:
        return sum(area(p) for p in self.polygons)

    def with_tiles(self, tiles: Iterable[PlacedTile], window: Window | None = None) -> "Tiling":
        return Tiling(dict(self.prototiles), list(tiles), window or self.window, dict(self.meta))

    @property
    def exact(self) -> bool:
        return all(isinstance(t.transform.rot, Cyc) for t in self.tiles) and all(
            p.polygon.exact for p in self.prototiles.values())


def bounding_window(polys: Iterable[Polygon], margin: float = 0.0) -> Window:
    xs, ys = [], []
    for p in polys:
        for z in p.float_vertices():
            xs.append(z.real)
            ys.append(z.imag)
    return ((min(xs) - margin, min(ys) - margin), (max(xs) + margin, max(ys) + margin))


def _rect_meets(w: Window, f: list[complex]) -> bool:
    (x0, y0), (x1, y1) = w
    e = 1e-9
    if max(z.real for z in f) <= x0 + e or min(z.real for z in f) >= x1 - e:
        return False
    if max(z.imag for z in f) <= y0 + e or min(z.imag for z in f) >= y1 - e:
        return False
    rect = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]
    # separating axis over the rectangle's and the region's edges
    for poly in (rect, f):
        n = len(poly)
        for i in range(n):
            d = poly[(i + 1) % n] - poly[i]
            ax = complex(-d.imag, d.real)
            pa = [(z.conjugate() * ax).real for z in rect]
            pb = [(z.conjugate() * ax).real for z in f]
            if max(pa) <= min(pb) + e * abs(ax) or max(pb) <= min(pa) + e * abs(ax):
                return False
    return True


def window_avoiding(w: Window, regions: list[list[complex]]) -> Window:
    """Shrink ``w`` greedily until it meets none of ``regions``.

    Regions may be non-convex; the separating-axis test is then conservative
    (it may cut more than needed), never less.
    """
    while True:
        hit = next((f for f in regions if _rect_meets(w, f)), None)
        if hit is None:
            return w
        (x0, y0), (x1, y1) = w
        fx0, fx1 = min(z.real for z in hit), max(z.real for z in hit)
        fy0, fy1 = min(z.imag for z in hit), max(z.imag for z in hit)
        options = [((fx1, y0), (x1, y1)), ((x0, y0), (fx0, y1)),
                   ((x0, fy1), (x1, y1)), ((x0, y0), (x1, fy0))]
        options = [o for o in options if o[1][0] > o[0][0] and o[1][1] > o[0][1]]
        if not options:
            raise GeometryError("no window avoids the boundary regions")
        w = max(options, key=lambda o: (o[1][0] - o[0][0]) * (o[1][1] - o[0][1]))
