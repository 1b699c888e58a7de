"""The single place where numbers are compared.

Exact values (``int``, ``Fraction``, :class:`~tessella.qfield.QSqrt5`) are
compared exactly.  Floats are compared against one global tolerance, ``EPS``,
which defaults to 1e-9 and can be overridden with ``TESSELLA_TOL``.
"""
from __future__ import annotations

import os
from fractions import Fraction

from .qfield import QSqrt5

EPS = float(os.environ.get("TESSELLA_TOL", "1e-9"))


def sign(x, eps: float | None = None) -> int:
    if isinstance(x, QSqrt5):
        return x.sign()
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    e = EPS if eps is None else eps
    if x > e:
        return 1
    if x < -e:
        return -1
    return 0


def is_zero(x, eps: float | None = None) -> bool:
    return sign(x, eps) == 0


def eq(x, y, eps: float | None = None) -> bool:
    return sign(x - y, eps) == 0


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QSqrt5))
