"""Exhaustive corona search for a single marked prototile.

Copies of one prototile are glued edge to edge around a fixed central copy.
Layer 1 is complete when every vertex of the centre is fully surrounded;
layer j+1 is complete when every vertex of every tile placed so far is.
Placement is discrete: a new tile is glued onto the boundary edge where
the angular gap at the chosen vertex begins, in every orientation and
chirality, and kept only if it overlaps nothing, meets edge to edge and
respects the markings.  Coordinates stay exact; overlap tests use floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import Isometry, interior_angles_deg
from .tiling import Marking, PlacedTile, Prototile, Tiling, bounding_window


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"corona search exceeded its budget of {nodes} nodes")
        self.nodes = nodes


@dataclass
class Completed:
    layers: int
    tiling: Tiling
    layer_of: list[int]
    nodes: int

    @property
    def coronas(self) -> Tiling:
        return self.tiling


@dataclass
class Stuck:
    max_layers: int
    witness: Tiling
    nodes: int


SearchOutcome = Completed | Stuck

_EPS = 1e-9


@dataclass
class _Placed:
    verts: list            # exact points, CCW
    fverts: list           # complex floats
    units: list            # interior angles in units of the smallest angle step
    colors: list
    heads: list            # per edge: (arrows, head point or None)
    transform: Isometry
    lo: complex = 0j
    hi: complex = 0j


@dataclass
class _State:
    tiles: list = field(default_factory=list)
    layer_of: list = field(default_factory=list)
    angle_at: dict = field(default_factory=dict)    # vertex -> used angle units
    color_at: dict = field(default_factory=dict)    # vertex -> color
    incident: dict = field(default_factory=dict)    # vertex -> list of (tile, local index)
    edges: dict = field(default_factory=dict)       # frozenset(u, v) -> (arrows, head)


def _angle_unit(angles_deg: list[float]) -> tuple[float, int]:
    """Largest unit dividing every angle (and 360); angles in that unit."""
    for div in (36.0, 30.0, 18.0, 15.0, 12.0, 9.0, 6.0, 5.0, 3.0, 1.0):
        if all(abs(a / div - round(a / div)) < 1e-7 for a in angles_deg):
            return div, int(round(360.0 / div))
    raise ValueError("prototile angles are not commensurable with 360 degrees")


class _Search:
    def __init__(self, proto: Prototile, depth: int, budget: int):
        self.proto = proto
        self.depth = depth
        self.budget = budget
        self.nodes = 0
        poly = proto.polygon
        self.n = len(poly)
        unit, self.full = _angle_unit(interior_angles_deg(poly))
        self.units = [int(round(a / unit)) for a in interior_angles_deg(poly)]
        self.marking = proto.marking or Marking.blank(self.n)
        self.best = (-1, -1, None)   # (layers, surrounded count, snapshot)
        self.diam = max(abs(complex(a) - complex(b)) for a in poly.vertices for b in poly.vertices)

    # -- placement ------------------------------------------------------
    def make(self, g: Isometry) -> _Placed:
        poly = self.proto.polygon
        n = self.n
        pts = [g.apply(v) for v in poly.vertices]
        mk = self.marking
        if not g.reflected:
            order = list(range(n))
            heads = []
            for j, d in enumerate(mk.edge_decorations):
                head = pts[(j + 1) % n] if d.forward else pts[j]
                heads.append((d.arrows, head if d.arrows else None))
        else:
            order = list(reversed(range(n)))
            heads = []
            for i in range(n):
                old = (n - 2 - i) % n     # old edge (n-2-i -> n-1-i) becomes new edge i
                d = mk.edge_decorations[old]
                head = pts[(old + 1) % n] if d.forward else pts[old]
                heads.append((d.arrows, head if d.arrows else None))
        verts = [pts[k] for k in order]
        fverts = [complex(v) for v in verts]
        xs = [z.real for z in fverts]
        ys = [z.imag for z in fverts]
        return _Placed(verts, fverts, [self.units[k] for k in order],
                       [mk.vertex_colors[k] for k in order], heads, g,
                       complex(min(xs), min(ys)), complex(max(xs), max(ys)))

    def glue_options(self, v, u):
        """Copies having directed edge v -> u in their CCW order."""
        poly = self.proto.polygon.vertices
        n = self.n
        seen = set()
        out = []
        for i in range(n):
            p, q = poly[i], poly[(i + 1) % n]
            # plain copy: p -> v, q -> u
            rot = (u - v) / (q - p)
            if _is_unit(rot):
                g = Isometry(rot, v - rot * p, False)
                out.append(g)
            # mirrored copy: its CCW edge runs from image(q) to image(p)
            rot = (u - v) / (p.conjugate() - q.conjugate())
            if _is_unit(rot):
                g = Isometry(rot, v - rot * q.conjugate(), True)
                out.append(g)
        res = []
        for g in out:
            t = self.make(g)
            key = (frozenset(t.verts), tuple(sorted((str(h[0]), str(h[1])) for h in t.heads)),
                   frozenset(zip(t.verts, t.colors)))
            if key not in seen:
                seen.add(key)
                res.append(t)
        return res

    # -- legality -------------------------------------------------------
    def legal(self, st: _State, t: _Placed) -> bool:
        n = len(t.verts)
        for j, v in enumerate(t.verts):
            if st.angle_at.get(v, 0) + t.units[j] > self.full:
                return False
            c = st.color_at.get(v)
            if c is not None and c != t.colors[j]:
                return False
        for j in range(n):
            a, b = t.verts[j], t.verts[(j + 1) % n]
            e = st.edges.get(frozenset((a, b)))
            if e is not None:
                arrows, head = t.heads[j]
                if e[0] != arrows or (arrows and e[1] != head):
                    return False
        for o in st.tiles:
            if o.lo.real > t.hi.real + _EPS or t.lo.real > o.hi.real + _EPS:
                continue
            if o.lo.imag > t.hi.imag + _EPS or t.lo.imag > o.hi.imag + _EPS:
                continue
            if _overlap(o.fverts, t.fverts) or _bad_contact(o.fverts, t.fverts):
                return False
        return True

    def add(self, st: _State, t: _Placed, layer: int) -> None:
        idx = len(st.tiles)
        st.tiles.append(t)
        st.layer_of.append(layer)
        n = len(t.verts)
        for j, v in enumerate(t.verts):
            st.angle_at[v] = st.angle_at.get(v, 0) + t.units[j]
            st.color_at.setdefault(v, t.colors[j])
            st.incident.setdefault(v, []).append((idx, j))
            a, b = v, t.verts[(j + 1) % n]
            st.edges.setdefault(frozenset((a, b)), t.heads[j])

    def remove_last(self, st: _State) -> None:
        t = st.tiles.pop()
        st.layer_of.pop()
        idx = len(st.tiles)
        n = len(t.verts)
        for j, v in enumerate(t.verts):
            st.angle_at[v] -= t.units[j]
            inc = st.incident[v]
            inc.remove((idx, j))
            if not inc:
                del st.incident[v], st.angle_at[v], st.color_at[v]
            a, b = v, t.verts[(j + 1) % n]
            key = frozenset((a, b))
            # the edge record stays if another tile still uses this edge
            if not any(_has_edge(st.tiles[k], a, b) for k, _ in st.incident.get(a, ())):
                st.edges.pop(key, None)

    # -- search ---------------------------------------------------------
    def gap_edge(self, st: _State, v):
        """Boundary edge v -> u where the free angle at v begins."""
        starts = set()
        ends = []
        for k, j in st.incident[v]:
            t = st.tiles[k]
            n = len(t.verts)
            starts.add(t.verts[(j + 1) % n])
            ends.append(t.verts[(j - 1) % n])
        for u in ends:
            if u not in starts:
                return u
        raise AssertionError("vertex has a free angle but no free edge")

    def run(self) -> SearchOutcome:
        st = _State()
        centre = self.make(Isometry.identity(exact=self.proto.polygon.exact))
        self.add(st, centre, 0)
        required = list(centre.verts)
        done = self.dfs(st, required, 1)
        if done is not None:
            return done
        layers, _, snap = self.best
        return Stuck(max(layers, 0), snap, self.nodes)

    def snapshot(self, st: _State) -> Tiling:
        protos = {self.proto.name: self.proto}
        tiles = [PlacedTile(self.proto.name, t.transform) for t in st.tiles]
        polys = [type(self.proto.polygon)(tuple(t.verts)) for t in st.tiles]
        return Tiling(protos, tiles, bounding_window(polys), {"layers": list(st.layer_of)})

    def note_progress(self, st: _State, layer_done: int, required) -> None:
        surrounded = sum(1 for v in required if st.angle_at.get(v, 0) == self.full)
        if (layer_done, surrounded) > self.best[:2]:
            self.best = (layer_done, surrounded, self.snapshot(st))

    def dfs(self, st: _State, required: list, layer: int):
        open_vs = [v for v in required if st.angle_at.get(v, 0) < self.full]
        if not open_vs:
            self.note_progress(st, layer, [])
            if layer == self.depth:
                return Completed(layer, self.snapshot(st), list(st.layer_of), self.nodes)
            nxt = []
            seen = set()
            for t in st.tiles:
                for v in t.verts:
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            return self.dfs(st, nxt, layer + 1)
        self.note_progress(st, layer - 1, required)
        # most constrained vertex first
        v = min(open_vs, key=lambda z: (self.full - st.angle_at[z], open_vs.index(z)))
        u = self.gap_edge(st, v)
        for t in self.glue_options(v, u):
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchBudgetExceeded(self.budget)
            if not self.legal(st, t):
                continue
            self.add(st, t, layer)
            res = self.dfs(st, required, layer)
            if res is not None:
                return res
            self.remove_last(st)
        return None


def _has_edge(t: _Placed, a, b) -> bool:
    n = len(t.verts)
    for j in range(n):
        x, y = t.verts[j], t.verts[(j + 1) % n]
        if (x == a and y == b) or (x == b and y == a):
            return True
    return False


def _is_unit(z) -> bool:
    return abs(abs(complex(z)) - 1.0) < 1e-9


def _separates(a: list, b: list) -> bool:
    n = len(a)
    for i in range(n):
        p, q = a[i], a[(i + 1) % n]
        e = q - p
        L = abs(e)
        if all((e.real * (z - p).imag - e.imag * (z - p).real) <= _EPS * L for z in b):
            return True
    return False


def _overlap(a: list, b: list) -> bool:
    return not _separates(a, b) and not _separates(b, a)


def _inside_edge(z, p, q) -> bool:
    e = q - p
    L2 = abs(e) ** 2
    c = e.real * (z - p).imag - e.imag * (z - p).real
    if abs(c) > _EPS * math.sqrt(L2):
        return False
    s = (e.real * (z - p).real + e.imag * (z - p).imag) / L2
    return _EPS < s < 1 - _EPS


def _bad_contact(a: list, b: list) -> bool:
    """A vertex of one polygon in the open interior of an edge of the other."""
    for P, Q in ((a, b), (b, a)):
        n = len(Q)
        for z in P:
            for i in range(n):
                if _inside_edge(z, Q[i], Q[(i + 1) % n]):
                    return True
    return False


def corona_search(p: Prototile, depth: int, node_budget: int = 10**6) -> SearchOutcome:
    """Try to surround a copy of ``p`` by ``depth`` complete layers of copies.

    Returns :class:`Completed` with the configuration found, or
    :class:`Stuck` with the largest number of layers any configuration
    completed and a deepest partial configuration as witness.  Stuck is
    only returned after the whole search space was exhausted.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    return _Search(p, depth, node_budget).run()
