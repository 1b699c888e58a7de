"""Exact arithmetic for the golden-ratio geometry.

Two number types live here:

``QSqrt5``
    Real numbers ``a + b*sqrt(5)`` with rational ``a`` and ``b``.  Equality
    and ordering are decided exactly.

``Cyc``
    Points of the plane written as elements of the cyclotomic field
    ``Q(zeta)`` with ``zeta = exp(2*pi*i/5)``, stored as rational coefficients
    over the basis ``1, zeta, zeta**2, zeta**3``.  Every rotation by a multiple
    of 36 degrees is multiplication by a power of ``-zeta**3``, and division
    by the golden ratio is multiplication by an algebraic integer, so Penrose
    and Ammann coordinates never leave the field.

Real parts of ``Cyc`` values are ``QSqrt5``.  Imaginary parts are
``sin(72 deg)`` times a ``QSqrt5``; :meth:`Cyc.im_scaled` returns that cofactor,
which is what orientation tests need.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering

SQRT5 = math.sqrt(5.0)
SIN72 = math.sin(math.radians(72.0))


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


def _sign_ab(a, b) -> int:
    """Sign of ``a + b*sqrt(5)`` for rationals a, b."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    d = a * a - 5 * b * b
    s = (d > 0) - (d < 0)
    return s if a > 0 else -s


@total_ordering
class QSqrt5:
    """Element ``a + b*sqrt(5)`` of the real quadratic field Q(sqrt 5)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _frac(a)
        self.b = _frac(b)

    @classmethod
    def coerce(cls, x) -> "QSqrt5":
        if isinstance(x, QSqrt5):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        if isinstance(x, str):
            return parse_qsqrt5(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QSqrt5")

    def __add__(self, o):
        try:
            o = QSqrt5.coerce(o)
        except TypeError:
            return NotImplemented
        return QSqrt5(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt5(-self.a, -self.b)

    def __sub__(self, o):
        try:
            o = QSqrt5.coerce(o)
        except TypeError:
            return NotImplemented
        return QSqrt5(self.a - o.a, self.b - o.b)

    def __rsub__(self, o):
        return QSqrt5.coerce(o) - self

    def __mul__(self, o):
        try:
            o = QSqrt5.coerce(o)
        except TypeError:
            return NotImplemented
        return QSqrt5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate_sqrt5(self) -> "QSqrt5":
        return QSqrt5(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 5 * self.b * self.b

    def inverse(self) -> "QSqrt5":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QSqrt5 division by zero")
        return QSqrt5(self.a / n, -self.b / n)

    def __truediv__(self, o):
        try:
            o = QSqrt5.coerce(o)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return QSqrt5.coerce(o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QSqrt5(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sign(self) -> int:
        return _sign_ab(self.a, self.b)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, o):
        try:
            o = QSqrt5.coerce(o)
        except TypeError:
            if isinstance(o, float):
                return float(self) == o
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, o):
        if isinstance(o, float):
            return float(self) < o
        return (self - QSqrt5.coerce(o)).sign() < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * SQRT5

    def __repr__(self):
        return f"QSqrt5({format_qsqrt5(self)!r})"

    def __str__(self):
        return format_qsqrt5(self)


_QS5_RE = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)?\s*(?:(?P<bs>[+-])\s*(?P<b>\d+(?:/\d+)?)?\s*(?:\*\s*)?(?:√5|sqrt5|sqrt\(5\)))?\s*$"
)


def parse_qsqrt5(text: str) -> QSqrt5:
    """Parse ``"p/q+r/s√5"`` (either part optional, ``sqrt5`` accepted for ``√5``)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty Q(sqrt5) literal")
    # a lone "√5" or "-2√5" has no rational part
    if re.fullmatch(r"[+-]?(\d+(/\d+)?)?(\*)?(√5|sqrt5|sqrt\(5\))", s):
        sign = -1 if s.startswith("-") else 1
        body = s.lstrip("+-")
        coeff = re.match(r"(\d+(?:/\d+)?)?", body).group(1)
        return QSqrt5(0, sign * Fraction(coeff or 1))
    m = _QS5_RE.match(s)
    if not m or (m.group("a") is None and m.group("bs") is None):
        raise ValueError(f"malformed Q(sqrt5) literal: {text!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    b = Fraction(0)
    if m.group("bs"):
        b = Fraction(m.group("b") or 1)
        if m.group("bs") == "-":
            b = -b
    return QSqrt5(a, b)


def format_qsqrt5(x: QSqrt5) -> str:
    """Canonical ``p/q+r/s√5`` string; the rational part is always present."""
    a = str(x.a)
    if x.b == 0:
        return a
    sign = "+" if x.b > 0 else "-"
    return f"{a}{sign}{abs(x.b)}√5"


# ---------------------------------------------------------------------------
# cyclotomic points

def _mul4(x, y):
    r0 = x[0] * y[0]
    r1 = x[0] * y[1] + x[1] * y[0]
    r2 = x[0] * y[2] + x[1] * y[1] + x[2] * y[0]
    r3 = x[0] * y[3] + x[1] * y[2] + x[2] * y[1] + x[3] * y[0]
    r4 = x[1] * y[3] + x[2] * y[2] + x[3] * y[1]
    r5 = x[2] * y[3] + x[3] * y[2]
    r6 = x[3] * y[3]
    # zeta^5 = 1, zeta^4 = -(1 + zeta + zeta^2 + zeta^3)
    r0 += r5
    r1 += r6
    return (r0 - r4, r1 - r4, r2 - r4, r3 - r4)


# images of zeta^0..zeta^3 under zeta -> zeta^k, expressed in the basis
def _power_vec(e: int):
    e %= 5
    if e == 4:
        return (-1, -1, -1, -1)
    v = [0, 0, 0, 0]
    v[e] = 1
    return tuple(v)


_GALOIS = {k: [_power_vec(k * j) for j in range(4)] for k in (1, 2, 3, 4)}
_ZETA_FLOAT = [complex(math.cos(2 * math.pi * j / 5), math.sin(2 * math.pi * j / 5)) for j in range(4)]


def _galois(c, k):
    imgs = _GALOIS[k]
    out = [0, 0, 0, 0]
    for cj, img in zip(c, imgs):
        if cj:
            for i in range(4):
                out[i] += cj * img[i]
    return tuple(out)


def _norm_int(v):
    f = v.denominator if isinstance(v, Fraction) else 1
    if f == 1:
        return int(v)
    return v


class Cyc:
    """Exact point/complex number in Q(zeta_5).

    Supports ``+ - * /``, :meth:`conjugate`, exact equality and hashing.
    ``complex(z)`` gives the floating-point value.
    """

    __slots__ = ("c", "_h")

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c = (_norm_int(_frac(c0)) if not isinstance(c0, int) else c0,
                  _norm_int(_frac(c1)) if not isinstance(c1, int) else c1,
                  _norm_int(_frac(c2)) if not isinstance(c2, int) else c2,
                  _norm_int(_frac(c3)) if not isinstance(c3, int) else c3)
        self._h = None

    @classmethod
    def _raw(cls, c) -> "Cyc":
        z = object.__new__(cls)
        z.c = tuple(_norm_int(v) if isinstance(v, Fraction) else v for v in c)
        z._h = None
        return z

    @classmethod
    def coerce(cls, x) -> "Cyc":
        if isinstance(x, Cyc):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        if isinstance(x, QSqrt5):
            return cls.from_real(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyc")

    @classmethod
    def from_real(cls, x: QSqrt5) -> "Cyc":
        # sqrt5 = 1 + 2(zeta + zeta^4) = -1 - 2 zeta^2 - 2 zeta^3
        x = QSqrt5.coerce(x)
        return cls(x.a - x.b, 0, -2 * x.b, -2 * x.b)

    @classmethod
    def unit(cls, k: int) -> "Cyc":
        """``exp(i*pi*k/5)``: the unit vector at ``36*k`` degrees."""
        return _UNITS[k % 10]

    # arithmetic -------------------------------------------------------
    def __add__(self, o):
        if not isinstance(o, Cyc):
            try:
                o = Cyc.coerce(o)
            except TypeError:
                return NotImplemented
        a, b = self.c, o.c
        return Cyc._raw((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))

    __radd__ = __add__

    def __neg__(self):
        a = self.c
        return Cyc._raw((-a[0], -a[1], -a[2], -a[3]))

    def __sub__(self, o):
        if not isinstance(o, Cyc):
            try:
                o = Cyc.coerce(o)
            except TypeError:
                return NotImplemented
        a, b = self.c, o.c
        return Cyc._raw((a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]))

    def __rsub__(self, o):
        return Cyc.coerce(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return Cyc._raw(tuple(v * o for v in self.c))
        if not isinstance(o, Cyc):
            try:
                o = Cyc.coerce(o)
            except TypeError:
                return NotImplemented
        return Cyc._raw(_mul4(self.c, o.c))

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm (product of the four Galois conjugates), a rational."""
        p = _mul4(self.c, _galois(self.c, 2))
        p = _mul4(p, _galois(self.c, 3))
        p = _mul4(p, _galois(self.c, 4))
        return Fraction(p[0])

    def inverse(self) -> "Cyc":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Cyc division by zero")
        p = _mul4(_galois(self.c, 2), _galois(self.c, 3))
        p = _mul4(p, _galois(self.c, 4))
        return Cyc._raw(tuple(Fraction(v) / n for v in p))

    def __truediv__(self, o):
        if isinstance(o, (int, Fraction)):
            return Cyc._raw(tuple(Fraction(v) / o for v in self.c))
        o = Cyc.coerce(o)
        return self * o.inverse()

    def __rtruediv__(self, o):
        return Cyc.coerce(o) * self.inverse()

    def conjugate(self) -> "Cyc":
        c0, c1, c2, c3 = self.c
        return Cyc._raw((c0 - c1, -c1, c3 - c1, c2 - c1))

    # real / imaginary parts ---------------------------------------------
    def real(self) -> QSqrt5:
        c0, c1, c2, c3 = self.c
        # 2 Re = z + conj(z) = y*(zeta + zeta^4) + x with x,y below
        s = (2 * c0 - c1, 0, c2 + c3 - c1, c2 + c3 - c1)
        y = -s[2]
        x = s[0] + y
        # (x + y*(sqrt5 - 1)/2) / 2
        return QSqrt5(Fraction(x) / 2 - Fraction(y) / 4, Fraction(y) / 4)

    def im_scaled(self) -> QSqrt5:
        """``Im(z) / sin(72 deg)``, exactly."""
        c0, c1, c2, c3 = self.c
        d = Fraction(c2 - c3)
        return QSqrt5(c1 - d / 2, d / 2)

    def abs2(self) -> QSqrt5:
        return (self * self.conjugate()).real()

    def is_real(self) -> bool:
        return not self.im_scaled()

    # comparison / conversion ------------------------------------------
    def __eq__(self, o):
        if isinstance(o, Cyc):
            return self.c == o.c
        if isinstance(o, (int, Fraction)):
            return self.c == (o, 0, 0, 0)
        return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(self.c)
        return self._h

    def __bool__(self):
        return any(self.c)

    def __complex__(self):
        z = 0j
        for v, zf in zip(self.c, _ZETA_FLOAT):
            if v:
                z += float(v) * zf
        return z

    @property
    def x(self) -> float:
        return complex(self).real

    @property
    def y(self) -> float:
        return complex(self).imag

    def __repr__(self):
        return "Cyc({})".format(", ".join(str(v) for v in self.c))


def _unit(k):
    # exp(i pi/5) = -zeta^3
    w = Cyc(1)
    step = Cyc(0, 0, 0, -1)
    for _ in range(k):
        w = w * step
    return w


_UNITS = [_unit(k) for k in range(10)]

PHI = Cyc(0, 0, -1, -1)          # golden ratio = -(zeta^2 + zeta^3)
PHI_INV = Cyc(-1, 0, -1, -1)     # 1/phi = phi - 1
PHI_Q = QSqrt5(Fraction(1, 2), Fraction(1, 2))


def format_cyc(z: Cyc) -> list[str]:
    return [str(Fraction(v)) for v in z.c]


def parse_cyc(items) -> Cyc:
    if len(items) != 4:
        raise ValueError("cyclotomic coordinate needs four coefficients")
    return Cyc(*(Fraction(str(v)) for v in items))
