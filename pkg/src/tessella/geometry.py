"""Planar geometry over floats (``complex``) or exact cyclotomic points (``Cyc``).

A point is a ``complex`` on the float backend and a :class:`Cyc` on the exact
backend.  Both support ``+``, ``-``, ``*`` and ``conjugate()``, so isometries
are simply ``z -> rot * z + trans`` (with an optional conjugation first).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import num
from .qfield import Cyc, QSqrt5, SIN72


class GeometryError(ValueError):
    """Base class for invalid polygon input."""


class NonConvex(GeometryError):
    pass


class SelfIntersecting(GeometryError):
    pass


class DegenerateCollinear(GeometryError):
    pass


Point = "complex | Cyc"


def to_point(p) -> complex | Cyc:
    if isinstance(p, (Cyc, complex)):
        return p
    if isinstance(p, (int, float)):
        return complex(p)
    x, y = p
    if isinstance(x, Cyc):
        raise TypeError("use a single Cyc value, not a pair, for exact points")
    return complex(float(x), float(y))


def is_exact_point(p) -> bool:
    return isinstance(p, Cyc)


def cross(u, v):
    """``u.x*v.y - u.y*v.x``; for exact points divided by sin(72 deg)."""
    if isinstance(u, Cyc):
        return (u.conjugate() * v).im_scaled()
    return u.real * v.imag - u.imag * v.real


def dot(u, v):
    if isinstance(u, Cyc):
        return (u.conjugate() * v).real()
    return u.real * v.real + u.imag * v.imag


def abs2(u):
    if isinstance(u, Cyc):
        return u.abs2()
    return u.real * u.real + u.imag * u.imag


def orient(a, b, c, eps: float | None = None) -> int:
    """Sign of the turn a -> b -> c (+1 left, -1 right, 0 collinear)."""
    u, v = b - a, c - a
    x = cross(u, v)
    if isinstance(x, QSqrt5):
        return x.sign()
    scale = math.sqrt(abs2(u) * abs2(v)) or 1.0
    return num.sign(x / scale, eps)


def same_length2(u, v, eps: float | None = None) -> bool:
    a, b = abs2(u), abs2(v)
    if isinstance(a, QSqrt5):
        return a == b
    return num.eq(math.sqrt(a), math.sqrt(b), eps)


def points_equal(a, b, eps: float | None = None) -> bool:
    if isinstance(a, Cyc) and isinstance(b, Cyc):
        return a == b
    return abs(complex(a) - complex(b)) <= (num.EPS if eps is None else eps)


def _segments_cross(p1, p2, q1, q2) -> bool:
    d1 = orient(p1, p2, q1)
    d2 = orient(p1, p2, q2)
    d3 = orient(q1, q2, p1)
    d4 = orient(q1, q2, p2)
    return d1 * d2 < 0 and d3 * d4 < 0


@dataclass(frozen=True, eq=False)
class Polygon:
    """Strictly convex polygon with counterclockwise vertices.

    Build with :func:`make_polygon`; the constructor itself does not validate.
    """

    vertices: tuple

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @property
    def exact(self) -> bool:
        return isinstance(self.vertices[0], Cyc)

    def edge(self, i: int):
        n = len(self.vertices)
        return self.vertices[i % n], self.vertices[(i + 1) % n]

    def edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def edge_lengths(self) -> list[float]:
        return [abs(complex(b) - complex(a)) for a, b in self.edges()]

    def float_vertices(self) -> list[complex]:
        return [complex(v) for v in self.vertices]

    def xy(self) -> list[tuple[float, float]]:
        return [(z.real, z.imag) for z in self.float_vertices()]

    def area(self) -> float:
        return area(self)

    def transformed(self, g: "Isometry") -> "Polygon":
        return g.apply_polygon(self)

    def __eq__(self, other):
        if not isinstance(other, Polygon) or len(other) != len(self):
            return NotImplemented
        return all(points_equal(a, b) for a, b in zip(self.vertices, other.vertices))

    def __hash__(self):
        return hash(len(self.vertices))


def signed_area2(vertices: Sequence):
    """Twice the signed area; exact polygons return the sin(72)-scaled value."""
    n = len(vertices)
    total = None
    for i in range(n):
        term = cross(vertices[i], vertices[(i + 1) % n])
        total = term if total is None else total + term
    return total


def area(p: Polygon) -> float:
    a2 = signed_area2(p.vertices)
    if isinstance(a2, QSqrt5):
        return float(a2) * SIN72 / 2
    return a2 / 2


def area_scaled(p: Polygon) -> QSqrt5:
    """Exact area divided by sin(72 deg); only for exact polygons."""
    a2 = signed_area2(p.vertices)
    if not isinstance(a2, QSqrt5):
        raise TypeError("area_scaled needs an exact polygon")
    return QSqrt5(a2.a / 2, a2.b / 2)


def make_polygon(points: Iterable, allow_nonconvex: bool = False) -> Polygon:
    """Validate ``points`` as a strictly convex polygon, normalised to CCW.

    With ``allow_nonconvex`` simple non-convex polygons (the dart) are also
    accepted.
    """
    pts = [to_point(p) for p in points]
    if len(pts) < 3:
        raise GeometryError("a polygon needs at least 3 vertices")
    n = len(pts)
    for i in range(n):
        if points_equal(pts[i], pts[(i + 1) % n]):
            raise DegenerateCollinear(f"repeated vertex at index {i}")
    a2 = signed_area2(pts)
    s = a2.sign() if isinstance(a2, QSqrt5) else num.sign(a2)
    if s < 0:
        pts.reverse()
    turns = [orient(pts[i - 1], pts[i], pts[(i + 1) % n]) for i in range(n)]
    if 0 in turns:
        raise DegenerateCollinear(f"three consecutive collinear vertices at index {turns.index(0)}")
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if _segments_cross(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]):
                raise SelfIntersecting(f"edges {i} and {j} cross")
    if s == 0:
        raise SelfIntersecting("polygon has zero signed area")
    if any(t < 0 for t in turns) and not allow_nonconvex:
        raise NonConvex("polygon has a reflex vertex")
    return Polygon(tuple(pts))


def interior_angles(p: Polygon) -> list[float]:
    """Interior angle at each vertex, in radians."""
    vs = p.float_vertices()
    n = len(vs)
    out = []
    for i in range(n):
        a = vs[(i + 1) % n] - vs[i]
        b = vs[i - 1] - vs[i]
        ang = math.atan2(a.real * b.imag - a.imag * b.real, a.real * b.real + a.imag * b.imag)
        if ang < 0:
            ang += 2 * math.pi
        out.append(ang)
    return out


def interior_angles_deg(p: Polygon) -> list[float]:
    return [math.degrees(a) for a in interior_angles(p)]


def centroid(p: Polygon) -> complex:
    vs = p.float_vertices()
    n = len(vs)
    a = cx = cy = 0.0
    for i in range(n):
        x0, y0 = vs[i].real, vs[i].imag
        x1, y1 = vs[(i + 1) % n].real, vs[(i + 1) % n].imag
        w = x0 * y1 - x1 * y0
        a += w
        cx += (x0 + x1) * w
        cy += (y0 + y1) * w
    a *= 0.5
    return complex(cx / (6 * a), cy / (6 * a))


def diameter(p: Polygon) -> float:
    vs = p.float_vertices()
    return max(abs(a - b) for a in vs for b in vs)


# ---------------------------------------------------------------------------
# isometries

@dataclass(frozen=True)
class Isometry:
    """``z -> rot * (conj(z) if reflected else z) + trans`` with ``|rot| = 1``."""

    rot: complex | Cyc = 1 + 0j
    trans: complex | Cyc = 0j
    reflected: bool = False

    @classmethod
    def from_degrees(cls, angle_deg: float, trans=(0.0, 0.0), reflected: bool = False) -> "Isometry":
        k = angle_deg / 36.0
        t = trans if isinstance(trans, Cyc) else to_point(trans)
        if isinstance(t, Cyc) and abs(k - round(k)) < 1e-12:
            return cls(Cyc.unit(int(round(k))), t, reflected)
        return cls(cmath.exp(1j * math.radians(angle_deg)), complex(t), reflected)

    @classmethod
    def exact(cls, k36: int = 0, trans: Cyc | None = None, reflected: bool = False) -> "Isometry":
        return cls(Cyc.unit(k36), trans if trans is not None else Cyc(0), reflected)

    @classmethod
    def identity(cls, exact: bool = False) -> "Isometry":
        return cls.exact() if exact else cls()

    @property
    def angle_deg(self) -> float:
        d = math.degrees(cmath.phase(complex(self.rot)))
        return d + 360.0 if d < -1e-12 else (0.0 if abs(d) < 1e-12 else d)

    @property
    def translation(self) -> complex:
        return complex(self.trans)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.rot, Cyc)

    def __call__(self, z):
        return self.apply(z)

    def apply(self, z):
        if self.reflected:
            z = z.conjugate()
        return self.rot * z + self.trans

    def apply_polygon(self, p: Polygon) -> Polygon:
        vs = [self.apply(v) for v in p.vertices]
        if self.reflected:
            vs.reverse()
        return Polygon(tuple(vs))

    def compose(self, other: "Isometry") -> "Isometry":
        """``self after other``."""
        rot_o = other.rot.conjugate() if self.reflected else other.rot
        trans_o = other.trans.conjugate() if self.reflected else other.trans
        return Isometry(self.rot * rot_o, self.rot * trans_o + self.trans,
                        self.reflected != other.reflected)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return self.compose(other)

    def inverse(self) -> "Isometry":
        rinv = self.rot.conjugate()
        if self.reflected:
            # z = conj(rinv * (w - t)) = conj(rinv) * conj(w) - conj(rinv * t)
            return Isometry(rinv.conjugate(), -(rinv * self.trans).conjugate(), True)
        return Isometry(rinv, -(rinv * self.trans), False)

    def to_float(self) -> "Isometry":
        return Isometry(complex(self.rot), complex(self.trans), self.reflected)


def _edge_signature(vs):
    n = len(vs)
    sig = []
    for i in range(n):
        a = vs[(i + 1) % n] - vs[i]
        b = vs[(i + 2) % n] - vs[(i + 1) % n]
        sig.append((abs2(a), dot(a, b), cross(a, b)))
    return sig


def _sig_match(s1, s2, scale2: float) -> bool:
    for x, y in zip(s1, s2):
        for u, v in zip(x, y):
            if isinstance(u, QSqrt5) and isinstance(v, QSqrt5):
                if u != v:
                    return False
            elif abs(float(u) - float(v)) > num.EPS * max(1.0, scale2) * 10:
                return False
    return True


def _mirror_cycle(vs):
    out = [v.conjugate() for v in vs]
    out.reverse()
    # keep the image of vs[0] first so offsets stay meaningful
    return [out[-1]] + out[:-1]


def congruent(p: Polygon, q: Polygon, allow_reflection: bool = True) -> Isometry | None:
    """An isometry mapping p's vertex cycle onto q's, or None."""
    if len(p) != len(q):
        return None
    n = len(p)
    exact = p.exact and q.exact
    pv = list(p.vertices) if exact else p.float_vertices()
    qv = list(q.vertices) if exact else q.float_vertices()
    scale2 = max(abs(complex(b) - complex(a)) ** 2 for a, b in p.edges())
    qsig = _edge_signature(qv)
    options = [False, True] if allow_reflection else [False]
    for refl in options:
        src = _mirror_cycle(pv) if refl else pv
        ssig = _edge_signature(src)
        for k in range(n):
            rolled = qsig[k:] + qsig[:k]
            if not _sig_match(ssig, rolled, scale2):
                continue
            d_src = src[1] - src[0]
            d_dst = qv[(k + 1) % n] - qv[k]
            rot = d_dst / d_src
            if not exact:
                rot /= abs(rot)
            # for mirrored sources src[0] is already conj(p[0])
            return Isometry(rot, qv[k] - rot * src[0], refl)
    return None


def interiors_intersect(p: Polygon, q: Polygon, eps: float | None = None) -> bool:
    """True iff the open interiors of two convex polygons share a point."""
    exact = p.exact and q.exact
    for a_poly, b_poly in ((p, q), (q, p)):
        av = a_poly.vertices if exact else a_poly.float_vertices()
        bv = b_poly.vertices if exact else b_poly.float_vertices()
        n = len(av)
        for i in range(n):
            a, b = av[i], av[(i + 1) % n]
            e = b - a
            if exact:
                if all(cross(e, v - a).sign() <= 0 for v in bv):
                    return False
            else:
                tol = (num.EPS if eps is None else eps) * max(abs(e), 1e-300)
                if all(cross(e, v - a) <= tol for v in bv):
                    return False
    return True


def point_in_polygon(z: complex, p: Polygon, closed: bool = True) -> bool:
    vs = p.float_vertices()
    n = len(vs)
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        c = cross(b - a, z - a)
        tol = num.EPS * abs(b - a)
        if closed and c < -tol:
            return False
        if not closed and c <= tol:
            return False
    return True
