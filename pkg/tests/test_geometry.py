import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_isometry, regular
from tessella.geometry import (DegenerateCollinear, Isometry, NonConvex, SelfIntersecting, area,
                               congruent, interior_angles, interior_angles_deg, interiors_intersect,
                               make_polygon)
from tessella.qfield import Cyc

SQUARE = [0, 1, 1 + 1j, 1j]


def test_square_is_kept_counterclockwise():
    p = make_polygon(SQUARE)
    assert p.float_vertices() == [0, 1, 1 + 1j, 1j]


def test_clockwise_input_is_reversed():
    p = make_polygon(SQUARE[::-1])
    assert area(p) == pytest.approx(1.0)
    q = make_polygon(SQUARE)
    assert set(p.float_vertices()) == set(q.float_vertices())


def test_collinear_vertex_rejected():
    with pytest.raises(DegenerateCollinear):
        make_polygon([0, 1, 2, 1 + 1j])


def test_reflex_vertex_rejected():
    with pytest.raises(NonConvex):
        make_polygon([0, 2, 1 + 0.2j, 1 + 2j])


def test_bow_tie_rejected():
    with pytest.raises((SelfIntersecting, NonConvex)):
        make_polygon([0, 1 + 1j, 1, 1j])


def test_nonconvex_allowed_on_request():
    p = make_polygon([0, 2, 1 + 0.2j, 1 + 2j], allow_nonconvex=True)
    assert area(p) > 0


def test_angles_of_square_and_regular_pentagon():
    assert interior_angles(make_polygon(SQUARE)) == pytest.approx([math.pi / 2] * 4)
    assert interior_angles_deg(regular(5)) == pytest.approx([108.0] * 5)


@given(st.lists(st.floats(0.2, 2.0), min_size=6, max_size=6))
def test_hexagon_angle_sum(radii):
    pts = [r * complex(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k, r in enumerate(radii)]
    try:
        p = make_polygon(pts)
    except (NonConvex, DegenerateCollinear):
        return
    assert sum(interior_angles_deg(p)) == pytest.approx(720.0)


def test_congruent_square_rotated_37_degrees():
    sq = make_polygon(SQUARE)
    g = Isometry.from_degrees(37, (3.0, -1.0))
    h = congruent(sq, g.apply_polygon(sq))
    assert h is not None
    assert h.angle_deg % 90 == pytest.approx(37.0)


def test_mirror_triangle_needs_reflection():
    tri = make_polygon([0, 3, 1 + 1j])
    mirror = Isometry(1, 0, True).apply_polygon(tri)
    assert congruent(tri, mirror, allow_reflection=False) is None
    assert congruent(tri, mirror, allow_reflection=True) is not None


def test_square_not_congruent_to_rectangle():
    assert congruent(make_polygon(SQUARE), make_polygon([0, 1, 1 + 2j, 2j])) is None


def test_interiors_intersect_cases():
    sq = make_polygon(SQUARE)
    assert not interiors_intersect(sq, make_polygon([z + 1 for z in SQUARE]))
    assert interiors_intersect(sq, sq)
    assert interiors_intersect(sq, make_polygon([z + 0.5 for z in SQUARE]))


def test_isometry_composition_and_inverse(rng):
    for _ in range(50):
        g, h = random_isometry(rng), random_isometry(rng)
        z = complex(*rng.uniform(-3, 3, 2))
        assert abs((g @ h).apply(z) - g.apply(h.apply(z))) < 1e-9
        assert abs(g.inverse().apply(g.apply(z)) - z) < 1e-9


def test_reflection_keeps_polygons_counterclockwise():
    tri = make_polygon([0, 3, 1 + 1j])
    img = Isometry(1, 0, True).apply_polygon(tri)
    vs = img.float_vertices()
    a2 = sum((vs[i].conjugate() * vs[(i + 1) % 3]).imag for i in range(3))
    assert a2 > 0


def test_exact_isometries_stay_exact():
    g = Isometry.exact(3, Cyc(1, 2, 0, 0), reflected=True)
    z = Cyc(0, 1, 0, 0)
    w = g.apply(z)
    assert isinstance(w, Cyc)
    assert g.inverse().apply(w) == z


def test_angles_move_cyclically_under_isometries(rng):
    p = make_polygon([0, 2, 2.5 + 1j, 1 + 2j, -0.3 + 1j])
    base = interior_angles_deg(p)
    for _ in range(20):
        g = random_isometry(rng)
        got = interior_angles_deg(g.apply_polygon(p))
        ref = base[::-1] if g.reflected else base
        assert any(np.allclose(got, ref[k:] + ref[:k]) for k in range(5))
