"""Penrose rhombi, kite and dart, matching checks and rhombus substitution.

Rhombus prototiles are listed counterclockwise as ``(A, B, A*, C)``: the
diagonal ``BC`` cuts the rhombus into two Robinson half-triangles with apex
``A`` (resp. ``A*``) and legs of length 1.  The thin rhombus has 36 degrees at
``A``; the thick one has 108 degrees there.

Substitution works on the half-triangles ``(kind, A, B, C)``; with
``p = 1/phi``:

* thin half ``T(A, B, C)``: ``P = A + p(C - A)`` gives ``T(B, C, P)`` and
  ``G(P, A, B)``;
* thick half ``G(A, B, C)``: ``Q = B + p**2 (C - B)`` gives ``G(Q, A, B)``
  plus the thin rule applied to ``(C, Q, A)``.

Everything is first scaled by phi, so edge length stays 1 and the
coordinates stay in ``Z[zeta]``.  Halves are paired back into rhombi through
their shared base; halves whose partner fell outside the patch are dropped
and the window is cut back to stay clear of them.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .geometry import GeometryError, Isometry, make_polygon
from .qfield import PHI, PHI_INV, Cyc
from .tiling import EdgeDecoration, Marking, PlacedTile, Prototile, Tiling, window_avoiding
from .validate import check_edge_to_edge, rectangle_in_convex

THIN, THICK, KITE, DART = "thin", "thick", "kite", "dart"
BLACK, WHITE, NONE = "black", "white", "none"

# apex direction of the C leg, in 36-degree steps, per rhombus kind
_APEX_STEP = {THIN: 1, THICK: 3}
_HALF = {THIN: "T", THICK: "G"}
_KIND = {"T": THIN, "G": THICK}


class NotARhombusPatch(ValueError):
    pass


class MatchingViolation(ValueError):
    """Raised by consumers that require a correctly matched input."""


def _fwd(arrows):
    return EdgeDecoration(arrows, True)


def _back(arrows):
    return EdgeDecoration(arrows, False)


def rhombus_polygon(kind: str):
    c = Cyc.unit(_APEX_STEP[kind])
    return make_polygon([Cyc(0), Cyc(1), Cyc(1) + c, c])


def penrose_rhombus_prototiles() -> dict[str, Prototile]:
    """Thick and thin unit rhombi with colored vertices and arrowed edges.

    B is black, the other vertices white.  Legs at B carry one arrow toward
    B.  Legs at C carry two arrows: toward C on the thin rhombus, away from C
    on the thick one.
    """
    colors = (WHITE, BLACK, WHITE, WHITE)
    thin = Marking(colors, (_fwd(1), _back(1), _fwd(2), _back(2)))
    thick = Marking(colors, (_fwd(1), _back(1), _back(2), _fwd(2)))
    return {
        THICK: Prototile(THICK, rhombus_polygon(THICK), thick),
        THIN: Prototile(THIN, rhombus_polygon(THIN), thin),
    }


def oriented_rhombus_prototiles() -> dict[str, Prototile]:
    """The same rhombi with uncolored vertices and one arrow on every edge.

    Both B-legs point to B.  The C-legs point from C to the apex on the thin
    rhombus and from the apex to C on the thick one.
    """
    colors = (NONE,) * 4
    thin = Marking(colors, (_fwd(1), _back(1), _back(1), _fwd(1)))
    thick = Marking(colors, (_fwd(1), _back(1), _fwd(1), _back(1)))
    return {
        THICK: Prototile(THICK, rhombus_polygon(THICK), thick),
        THIN: Prototile(THIN, rhombus_polygon(THIN), thin),
    }


def kite_dart_prototiles() -> dict[str, Prototile]:
    """Kite and dart with long:short edge ratio phi and two vertex colors.

    The kite is two golden triangles (36 degree apex) sharing a long edge;
    the dart two obtuse golden triangles.  Kite side vertices and the dart
    tip are black, everything else white, which rules out the two pieces
    closing up into a rhombus.
    """
    lo, hi = Cyc.unit(-1), Cyc.unit(1)
    kite = make_polygon([Cyc(0), PHI * lo, PHI, PHI * hi])
    dart = make_polygon([Cyc(0), PHI * lo, Cyc(1), PHI * hi], allow_nonconvex=True)
    plain = (EdgeDecoration(),) * 4
    return {
        KITE: Prototile(KITE, kite, Marking((WHITE, BLACK, WHITE, BLACK), plain)),
        DART: Prototile(DART, dart, Marking((BLACK, WHITE, WHITE, WHITE), plain)),
    }


# ---------------------------------------------------------------------------
# substitution

def rhombus_tile(kind: str, A: Cyc, B: Cyc, C: Cyc) -> PlacedTile:
    """Place the rhombus with apex A, black vertex B and vertex C (either chirality)."""
    rot = B - A
    step = _APEX_STEP[kind]
    if rot * Cyc.unit(step) + A == C:
        return PlacedTile(kind, Isometry(rot, A, False))
    # mirror chirality: use the opposite apex so no reflection is needed
    A2 = B + C - A
    rot = B - A2
    if rot * Cyc.unit(step) + A2 != C:
        raise NotARhombusPatch("half-triangles do not form a rhombus")
    return PlacedTile(kind, Isometry(rot, A2, False))


def halves(t: Tiling) -> list[tuple[str, Cyc, Cyc, Cyc]]:
    out = []
    for tile in t.tiles:
        if tile.prototile not in (THIN, THICK):
            raise NotARhombusPatch(f"unexpected prototile {tile.prototile!r}")
        if not isinstance(tile.transform.rot, Cyc):
            raise NotARhombusPatch("rhombus patches must use exact placements")
        vs = [tile.transform.apply(v) for v in rhombus_polygon(tile.prototile).vertices]
        A, B, A2, C = vs
        h = _HALF[tile.prototile]
        out.append((h, A, B, C))
        out.append((h, A2, B, C))
    return out


def _check_rhombus_table(t: Tiling) -> None:
    for name, proto in t.prototiles.items():
        if name not in (THIN, THICK) or proto.polygon != rhombus_polygon(name):
            raise NotARhombusPatch(f"prototile {name!r} is not a unit Penrose rhombus")


def deflate_halves(tris, rounds: int = 1):
    for _ in range(rounds):
        out = []
        for h, A, B, C in tris:
            A, B, C = PHI * A, PHI * B, PHI * C
            if h == "T":
                P = A + (C - A) * PHI_INV
                out.append(("T", B, C, P))
                out.append(("G", P, A, B))
            else:
                Q = B + (C - B) * PHI_INV * PHI_INV
                out.append(("G", Q, A, B))
                P = C + (A - C) * PHI_INV
                out.append(("T", Q, A, P))
                out.append(("G", P, C, Q))
        tris = out
    return tris


def pair_halves(tris) -> tuple[list[PlacedTile], list]:
    """Rhombi from half-triangles sharing a base, plus the unpaired halves."""
    by_base = defaultdict(list)
    for h, A, B, C in tris:
        by_base[(h, B, C)].append(A)
    tiles, lone = [], []
    for (h, B, C), apexes in by_base.items():
        if len(apexes) == 2:
            tiles.append(rhombus_tile(_KIND[h], apexes[0], B, C))
        elif len(apexes) == 1:
            lone.append((h, apexes[0], B, C))
        else:
            raise NotARhombusPatch("more than two half-triangles share a base")
    tiles.sort(key=lambda p: (p.prototile, complex(p.transform.trans).real, complex(p.transform.trans).imag))
    return tiles, lone


def substitute(patch: Tiling, k: int) -> Tiling:
    """``k`` rounds of rhombus deflation, rescaled back to unit edges."""
    if k < 0:
        raise ValueError("k must be >= 0")
    _check_rhombus_table(patch)
    if k == 0:
        halves(patch)  # validates the tiles
        return patch.with_tiles(list(patch.tiles))
    tris = deflate_halves(halves(patch), k)
    tiles, lone = pair_halves(tris)
    s = float(PHI.real()) ** k
    (x0, y0), (x1, y1) = patch.window
    # dropped halves leave holes along the boundary; keep the window clear of them
    window = ((x0 * s, y0 * s), (x1 * s, y1 * s))
    try:
        window = window_avoiding(window, [[complex(z) for z in tri[1:]] for tri in lone])
    except GeometryError:
        pass  # nothing paired up; an empty patch keeps the scaled window
    meta = dict(patch.meta)
    meta["substitution_rounds"] = meta.get("substitution_rounds", 0) + k
    return Tiling(dict(patch.prototiles), tiles, window, meta)


def seed_patch(kind: str = THICK, oriented: bool = False) -> Tiling:
    """A one-rhombus patch; its window is a rectangle inside the rhombus."""
    protos = oriented_rhombus_prototiles() if oriented else penrose_rhombus_prototiles()
    poly = protos[kind].polygon
    window = rectangle_in_convex([complex(v) for v in poly.vertices])
    tile = PlacedTile(kind, Isometry.exact())
    return Tiling(protos, [tile], window, {"seed": kind})


def penrose_patch(k: int, seed: str = THICK, oriented: bool = False) -> Tiling:
    return substitute(seed_patch(seed, oriented), k)


def substitution_matrix() -> list[list[int]]:
    """Half-triangle counts: column j = children of a thin (0) / thick (1) half."""
    return [[1, 1], [1, 2]]


def count_tiles(t: Tiling) -> dict[str, int]:
    out = {THICK: 0, THIN: 0}
    for tile in t.tiles:
        out[tile.prototile] = out.get(tile.prototile, 0) + 1
    return out


# ---------------------------------------------------------------------------
# matching

@dataclass(frozen=True)
class Violation:
    kind: str          # "edge", "vertex-color" or "edge-to-edge"
    tiles: tuple[int, int]
    where: tuple       # edge endpoints or vertex, as float pairs

    def to_json(self) -> dict:
        return {"kind": self.kind, "tiles": list(self.tiles), "where": [list(p) for p in self.where]}


def _key(z):
    if isinstance(z, Cyc):
        return z
    return (round(z.real, 7), round(z.imag, 7))


def _xy(z):
    z = complex(z)
    return (z.real, z.imag)


def check_matching(t: Tiling) -> list[Violation]:
    """Every shared edge and vertex must obey the markings.

    A shared edge needs equal arrow counts with both arrow sets pointing at
    the same endpoint; tiles meeting at a vertex need the same color there;
    and the tiles must meet edge-to-edge.
    """
    edges = defaultdict(list)   # key -> list of (tile, arrows, head key)
    verts = defaultdict(list)   # key -> list of (tile, color, point)
    for i in range(len(t.tiles)):
        vs, colors, decs = t.placed_marking(i)
        n = len(vs)
        for j in range(n):
            a, b = vs[j], vs[(j + 1) % n]
            ka, kb = _key(a), _key(b)
            arrows, head = decs[j]
            hk = None if head is None else _key(vs[head])
            edges[frozenset((ka, kb))].append((i, arrows, hk, (a, b)))
            verts[ka].append((i, colors[j], a))
    out = []
    for key in sorted(edges, key=lambda e: sorted(_xy(_as_point(k)) for k in e)):
        users = edges[key]
        for x in range(len(users)):
            for y in range(x + 1, len(users)):
                i, ar1, h1, seg = users[x]
                j, ar2, h2, _ = users[y]
                if ar1 != ar2 or (ar1 and h1 != h2):
                    out.append(Violation("edge", (min(i, j), max(i, j)), (_xy(seg[0]), _xy(seg[1]))))
    for key in sorted(verts, key=lambda k: _xy(_as_point(k))):
        users = verts[key]
        first = users[0]
        for other in users[1:]:
            if other[1] != first[1]:
                i, j = first[0], other[0]
                out.append(Violation("vertex-color", (min(i, j), max(i, j)), (_xy(first[2]),)))
    for i, j in check_edge_to_edge(t):
        out.append(Violation("edge-to-edge", (i, j), ()))
    return out


def _as_point(k):
    return k if isinstance(k, Cyc) else complex(*k)


# ---------------------------------------------------------------------------
# periodic patch by a single oriented rhombus

def oriented_rhombus_periodic(m: int, n: int) -> Tiling:
    """m x n translates of the oriented thin rhombus.

    The lattice is spanned by the rhombus's own edges ``B - A`` and
    ``C - A``; either translation carries every arrow onto an equally
    directed arrow of the neighbour, so the patch is the lattice
    parallelogram itself.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be >= 1")
    protos = oriented_rhombus_prototiles()
    del protos[THICK]
    v1, v2 = Cyc(1), Cyc.unit(1)
    tiles = [PlacedTile(THIN, Isometry.exact(0, v1 * i + v2 * j)) for i in range(m) for j in range(n)]
    fv1, fv2 = complex(v1), complex(v2)
    window = rectangle_in_convex([0j, m * fv1, m * fv1 + n * fv2, n * fv2])
    return Tiling(protos, tiles, window, {"lattice": [[fv1.real, fv1.imag], [fv2.real, fv2.imag]]})
