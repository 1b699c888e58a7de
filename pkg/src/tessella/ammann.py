"""Ammann recomposition of a marked rhombus patch into unmarked polygons.

Thick rhombus ``ABCD`` (``A`` obtuse, ``B`` the black vertex) carries an
interior point ``J`` joined to ``B``, ``C`` and ``D``.  Thin rhombus ``EFGH``
(``E`` the acute apex) carries ``K`` joined to ``E`` and ``H`` and ``L``
joined to ``F`` and ``G``, plus the segment ``KL``.  ``K`` and ``L`` are fixed
by ``EK = CJ``, ``HK = BJ``, ``GL = DJ`` and ``FL = CJ``.

``J`` moves along the midline of the thick rhombus from the midpoint of
``DA`` (parameter 0) to the midpoint of ``BC`` (parameter 1).  Every rhombus
is cut along its segments, the rhombus edges are erased and pieces that met
across an erased edge are merged.

Exactness: ``J`` lies in Q(zeta).  ``K`` and ``L`` are circle intersections,
``K = m + rho_K w`` with ``m, w`` in Q(zeta) and ``rho_K**2`` in Q(sqrt5), and
likewise for ``L``.  Points are kept as coefficient triples over
``(1, rho_K, rho_L)`` so piece areas can be summed with no rounding.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .geometry import GeometryError, Isometry, area_scaled, congruent, make_polygon, signed_area2
from .penrose import THICK, THIN, MatchingViolation, check_matching, rhombus_polygon
from .qfield import Cyc, QSqrt5
from .tiling import PlacedTile, Prototile, Tiling, window_avoiding

# Chosen by scanning the parameter over (0, 1) in steps of 1/100: it is the
# grid value with the largest minimum gap (about 0.096 edge units) between
# DJ, CJ, BJ and KL among those where J, K, L are interior and no two
# segments cross.  Valid values start near 0.7.  See ``_scan_default``.
AMMANN_J_DEFAULT = Fraction(83, 100)

_LEN_TOL = 1e-9

# 2i sin(72) = zeta^2 - zeta^8, and (2 sin 72)^2 = (5 + sqrt5) / 2
_TWO_I_SIN72 = Cyc.unit(2) - Cyc.unit(8)
_FOUR_SIN72_SQ = QSqrt5(Fraction(5, 2), Fraction(1, 2))

THICK_PIECES = (("A", "B", "J", "D"), ("B", "C", "J"), ("C", "D", "J"))
THIN_PIECES = (("E", "F", "L", "K"), ("F", "G", "L"), ("G", "H", "K", "L"), ("H", "E", "K"))


class DegenerateJ(ValueError):
    """J gives coinciding lengths or an invalid (crossing/exterior) decoration."""


# ---------------------------------------------------------------------------
# points over (1, rho_K, rho_L)

XPoint = tuple  # (Cyc, Cyc, Cyc)

_ZERO = Cyc(0)


def _xp(a: Cyc, b: Cyc = _ZERO, c: Cyc = _ZERO) -> XPoint:
    return (a, b, c)


def _place(p: XPoint, origin: Cyc, u: Cyc, mirrored: bool) -> XPoint:
    if mirrored:
        p = tuple(z.conjugate() for z in p)
    return (origin + u * p[0], u * p[1], u * p[2])


def _xcross(p: XPoint, q: XPoint, rk2: QSqrt5, rl2: QSqrt5):
    """Exact cross product over the basis (1, rho_K, rho_L, rho_K rho_L),
    each coordinate divided by sin(72)."""
    def im(x, y):
        return (x.conjugate() * y).im_scaled()
    one = im(p[0], q[0]) + im(p[1], q[1]) * rk2 + im(p[2], q[2]) * rl2
    k = im(p[0], q[1]) + im(p[1], q[0])
    l_ = im(p[0], q[2]) + im(p[2], q[0])
    kl = im(p[1], q[2]) + im(p[2], q[1])
    return (one, k, l_, kl)


def _sqrt(x: QSqrt5) -> float:
    return math.sqrt(float(x))


def _circle_exact(p0: Cyc, r0sq: QSqrt5, p1: Cyc, r1sq: QSqrt5):
    """Circles of squared radii r0sq, r1sq about unit-distance centres.

    Returns ``(m, w, R)`` with the two meets at ``m +- sqrt(R) w``, or None.
    """
    if (p1 - p0).abs2() != QSqrt5(1):
        raise ValueError("centres must be one edge apart")
    a = (r0sq - r1sq + 1) * Fraction(1, 2)
    h2 = r0sq - a * a
    if h2.sign() <= 0:
        return None
    m = p0 + (p1 - p0) * Cyc.from_real(a)
    return m, _TWO_I_SIN72 * (p1 - p0), h2 / _FOUR_SIN72_SQ


def _strictly_inside(z: complex, vs: list[complex]) -> bool:
    n = len(vs)
    return all(_cr(vs[(i + 1) % n] - vs[i], z - vs[i]) > _LEN_TOL for i in range(n))


def _cr(a: complex, b: complex) -> float:
    return (a.conjugate() * b).imag


def _segments_cross(a, b, c, d) -> bool:
    d1, d2 = _cr(b - a, c - a), _cr(b - a, d - a)
    d3, d4 = _cr(d - c, a - c), _cr(d - c, b - c)
    return d1 * d2 < -1e-12 and d3 * d4 < -1e-12


def _midline():
    A, B, C, D = rhombus_polygon(THICK).vertices
    P = (D + A) * Fraction(1, 2)
    return P, (B + C) * Fraction(1, 2) - P


def equal_length_parameter(a: str, b: str) -> QSqrt5:
    """Exact parameter at which two of DJ, CJ, BJ coincide."""
    _, B, C, D = rhombus_polygon(THICK).vertices
    X, Y = {"B": B, "C": C, "D": D}[a[0]], {"B": B, "C": C, "D": D}[b[0]]
    P, V = _midline()
    # |P + sV - X|^2 = |P + sV - Y|^2 is linear in s
    num = (P - Y).abs2() - (P - X).abs2()
    den = (V.conjugate() * (Y - X)).real() * 2
    return num / den


@dataclass(frozen=True)
class AmmannMarking:
    """Decoration points in the reference frames of the two rhombi."""

    s: Fraction
    J: Cyc
    K: XPoint
    L: XPoint
    rk2: QSqrt5
    rl2: QSqrt5

    @classmethod
    def default(cls) -> "AmmannMarking":
        return cls.from_parameter(AMMANN_J_DEFAULT)

    @classmethod
    def from_parameter(cls, s) -> "AmmannMarking":
        s = Fraction(s).limit_denominator(10**12) if isinstance(s, float) else Fraction(s)
        P, V = _midline()
        J = P + V * s
        th = rhombus_polygon(THICK).vertices
        j = complex(J)
        if not _strictly_inside(j, [complex(v) for v in th]):
            raise DegenerateJ(f"J = {j:.6f} is not inside the thick rhombus")
        _, B, C, D = th
        BJ2, CJ2, DJ2 = (B - J).abs2(), (C - J).abs2(), (D - J).abs2()
        for (na, x), (nb, y) in [(("DJ", DJ2), ("CJ", CJ2)), (("DJ", DJ2), ("BJ", BJ2)),
                                 (("CJ", CJ2), ("BJ", BJ2))]:
            if abs(float(x - y)) <= _LEN_TOL:
                raise DegenerateJ(f"{na} = {nb} = {math.sqrt(float(x)):.9f}")
        E, F, G, H = rhombus_polygon(THIN).vertices
        tn = [complex(v) for v in (E, F, G, H)]
        ck, cl = _circle_exact(E, CJ2, H, BJ2), _circle_exact(G, DJ2, F, CJ2)
        if ck is None or cl is None:
            raise DegenerateJ(f"K or L does not exist for parameter {s}")
        rk, rl = _sqrt(ck[2]), _sqrt(cl[2])
        Ks = [sg for sg in (1, -1) if _strictly_inside(complex(ck[0]) + sg * rk * complex(ck[1]), tn)]
        Ls = [sg for sg in (1, -1) if _strictly_inside(complex(cl[0]) + sg * rl * complex(cl[1]), tn)]
        if len(Ks) != 1 or len(Ls) != 1:
            raise DegenerateJ(f"no unique interior K/L for parameter {s}")
        K = _xp(ck[0], ck[1] * Ks[0])
        L = _xp(cl[0], _ZERO, cl[1] * Ls[0])
        m = cls(s, J, K, L, ck[2], cl[2])
        m.check()
        return m

    def to_complex(self, p: XPoint) -> complex:
        return complex(p[0]) + _sqrt(self.rk2) * complex(p[1]) + _sqrt(self.rl2) * complex(p[2])

    def lengths(self) -> dict[str, float]:
        _, B, C, D = (complex(v) for v in rhombus_polygon(THICK).vertices)
        j = complex(self.J)
        k, l_ = self.to_complex(self.K), self.to_complex(self.L)
        return {"DJ": abs(D - j), "CJ": abs(C - j), "BJ": abs(B - j), "KL": abs(k - l_)}

    def check(self) -> None:
        """Raise DegenerateJ unless the gluing equalities hold, the four
        lengths are pairwise distinct and the pieces are proper polygons."""
        E, F, G, H = (complex(v) for v in rhombus_polygon(THIN).vertices)
        k, l_ = self.to_complex(self.K), self.to_complex(self.L)
        ln = self.lengths()
        eqs = [(abs(G - l_), ln["DJ"]), (abs(F - l_), ln["CJ"]),
               (abs(E - k), ln["CJ"]), (abs(H - k), ln["BJ"])]
        if any(abs(x - y) > _LEN_TOL for x, y in eqs):
            raise DegenerateJ("decoration lengths do not satisfy the gluing equalities")
        names = sorted(ln)
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                if abs(ln[a] - ln[b]) <= _LEN_TOL:
                    raise DegenerateJ(f"{a} = {b} = {ln[a]:.9f}")
        segs = [(E, k), (H, k), (F, l_), (G, l_), (k, l_)]
        for i, s1 in enumerate(segs):
            for s2 in segs[i + 1:]:
                if _segments_cross(*s1, *s2):
                    raise DegenerateJ("thin-rhombus segments cross")
        for kind in (THICK, THIN):
            vs = [_xp(v) for v in rhombus_polygon(kind).vertices]
            for piece in self.pieces(kind, vs):
                if signed_area2([self.to_complex(p) for p in piece]) <= _LEN_TOL:
                    raise DegenerateJ(f"a {kind} piece is degenerate")

    def pieces(self, kind: str, vs: list[XPoint]) -> list[list[XPoint]]:
        """Pieces of a placed rhombus whose labeled vertices are ``vs``.

        ``vs`` are the exact images of the reference vertices in reference
        order; reflected copies get mirrored decorations and reversed pieces.
        """
        origin, u = vs[0][0], vs[1][0] - vs[0][0]
        mirrored = (u.conjugate() * (vs[3][0] - vs[0][0])).im_scaled().sign() < 0
        if kind == THICK:
            pts = dict(zip("ABCD", vs))
            pts["J"] = _place(_xp(self.J), origin, u, mirrored)
            table = THICK_PIECES
        else:
            pts = dict(zip("EFGH", vs))
            pts["K"] = _place(self.K, origin, u, mirrored)
            pts["L"] = _place(self.L, origin, u, mirrored)
            table = THIN_PIECES
        out = [[pts[c] for c in piece] for piece in table]
        return [p[::-1] for p in out] if mirrored else out


# ---------------------------------------------------------------------------
# merging

def _key(z: complex):
    return (round(z.real, 7), round(z.imag, 7))


def _trace(edges: list[tuple[complex, complex]]) -> list[complex]:
    nxt = {}
    for a, b in edges:
        if _key(a) in nxt:
            raise GeometryError("merged region is not a simple polygon")
        nxt[_key(a)] = (a, b)
    a, b = edges[0]
    cyc, cur = [a], b
    while _key(cur) != _key(a):
        cyc.append(cur)
        if _key(cur) not in nxt or len(cyc) > len(edges):
            raise GeometryError("merged region boundary does not close")
        cur = nxt[_key(cur)][1]
    if len(cyc) != len(edges):
        raise GeometryError("merged region has a hole")
    m = len(cyc)
    return [cyc[i] for i in range(m)
            if abs(_cr(cyc[i] - cyc[i - 1], cyc[(i + 1) % m] - cyc[i])) > 1e-9]


@dataclass
class Recomposition:
    regions: list[list[complex]]
    complete: list[bool]
    area_terms: tuple  # exact total over all pieces, see _xcross


def ammann_regions(t: Tiling, marking: AmmannMarking) -> Recomposition:
    """Cut every rhombus and merge pieces across shared rhombus edges."""
    if not t.exact:
        raise ValueError("the recomposition needs an exact rhombus patch")
    pieces, rh_edges = [], defaultdict(int)
    total = (QSqrt5(0),) * 4
    for pt in t.tiles:
        if pt.prototile not in (THICK, THIN):
            raise ValueError(f"not a rhombus prototile: {pt.prototile!r}")
        vs = [_xp(pt.transform.apply(v)) for v in t.prototiles[pt.prototile].polygon.vertices]
        fv = [complex(v[0]) for v in vs]
        for a in range(4):
            rh_edges[frozenset((_key(fv[a]), _key(fv[(a + 1) % 4])))] += 1
        for piece in marking.pieces(pt.prototile, vs):
            n = len(piece)
            for a in range(n):
                c = _xcross(piece[a], piece[(a + 1) % n], marking.rk2, marking.rl2)
                total = tuple(x + y for x, y in zip(total, c))
            pieces.append([marking.to_complex(p) for p in piece])

    parent = list(range(len(pieces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owners = defaultdict(list)
    for i, p in enumerate(pieces):
        for a in range(len(p)):
            owners[frozenset((_key(p[a]), _key(p[(a + 1) % len(p)])))].append(i)
    for e, us in owners.items():
        if rh_edges.get(e, 0) == 2 and len(us) == 2:
            parent[find(us[0])] = find(us[1])

    groups = defaultdict(list)
    for i in range(len(pieces)):
        groups[find(i)].append(i)
    regions, complete = [], []
    for g in sorted(groups.values()):
        bnd, whole = [], True
        for i in g:
            p = pieces[i]
            for a in range(len(p)):
                e = frozenset((_key(p[a]), _key(p[(a + 1) % len(p)])))
                if rh_edges.get(e, 0) == 2:
                    continue
                if rh_edges.get(e, 0) == 1:
                    whole = False
                bnd.append((p[a], p[(a + 1) % len(p)]))
        regions.append(_trace(bnd))
        complete.append(whole)
    return Recomposition(regions, complete, total)


def exact_area_scaled(t: Tiling) -> QSqrt5:
    """Total patch area divided by sin(72)."""
    return sum((area_scaled(t.prototiles[pt.prototile].polygon) for pt in t.tiles), QSqrt5(0))


def area_defect(t: Tiling, rec: Recomposition) -> tuple:
    """Exact (pieces - rhombi) area over the basis (1, rho_K, rho_L, rho_K rho_L),
    scaled by 1/sin(72).  All zero means exact conservation."""
    one, k, l_, kl = (x * Fraction(1, 2) for x in rec.area_terms)
    return (one - exact_area_scaled(t), k, l_, kl)


def ammann_recompose(t: Tiling, marking: AmmannMarking | None = None) -> Tiling:
    """Replace a matched rhombus patch by the merged regions.

    Only regions that avoid the patch boundary become tiles; the window is
    cut down so that it avoids the dropped boundary regions.  ``meta`` carries
    the exact area bookkeeping over all regions.
    """
    marking = marking or AmmannMarking.default()
    viol = check_matching(t)
    if viol:
        raise MatchingViolation(f"{len(viol)} matching violations, first: {viol[0]}")
    rec = ammann_regions(t, marking)

    protos: list[Prototile] = []
    tiles: list[PlacedTile] = []
    for f, whole in zip(rec.regions, rec.complete):
        if not whole:
            continue
        poly = make_polygon(f, allow_nonconvex=True)
        for p in protos:
            g = congruent(p.polygon, poly)
            if g is not None:
                tiles.append(PlacedTile(p.name, g))
                break
        else:
            name = f"ammann{len(protos)}"
            protos.append(Prototile(name, poly))
            tiles.append(PlacedTile(name, Isometry.identity()))

    defect = area_defect(t, rec)
    dropped = [f for f, w in zip(rec.regions, rec.complete) if not w]
    meta = {
        "source": "ammann",
        "j_parameter": str(marking.s),
        "lengths": marking.lengths(),
        "area_in_scaled": str(exact_area_scaled(t)),
        "area_defect_scaled": [str(x) for x in defect],
        "area_conserved": all(not x for x in defect),
        "regions": len(rec.regions),
        "boundary_regions": len(dropped),
        "dropped_area": math.fsum(0.5 * signed_area2(f) for f in dropped),
    }
    return Tiling({p.name: p for p in protos}, tiles, window_avoiding(t.window, dropped), meta)


def ammann_prototiles(marking: AmmannMarking | None = None, k: int = 5) -> list:
    """Distinct region shapes away from the boundary of a substituted patch."""
    from .penrose import penrose_patch
    r = ammann_recompose(penrose_patch(k), marking)
    return [p.polygon for p in r.prototiles.values()]


def _scan_default(steps: int = 100):
    """Grid scan behind AMMANN_J_DEFAULT: (gap, parameter) of the best value."""
    best = None
    for i in range(1, steps):
        s = Fraction(i, steps)
        try:
            m = AmmannMarking.from_parameter(s)
        except DegenerateJ:
            continue
        ls = sorted(m.lengths().values())
        gap = min(b - a for a, b in zip(ls, ls[1:]))
        if best is None or gap > best[0]:
            best = (gap, s)
    return best
