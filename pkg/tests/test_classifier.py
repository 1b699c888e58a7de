import math

import numpy as np
import pytest

from conftest import random_isometry, regular
from tessella.classifier import (QUADRILATERAL, TRIANGLE, ClassificationResult, ClassMismatch,
                                 Hexagon, LabeledPolygon, Pentagon, Relabeling, TileTypeId,
                                 can_tile_edge_to_edge, classify, matches_type)
from tessella.families import sample_polygon
from tessella.geometry import make_polygon
from tessella.qfield import Cyc

# arccos((3 sqrt 57 - 17) / 16) in degrees
TYPE14_C = math.degrees(math.acos((3 * math.sqrt(57) - 17) / 16))


def pentagon_from_angles(angles, first_three=(1.0, 1.2, 0.9)):
    """Vertices A..E with the given interior angles.

    Walks AB, BC, CD with the given lengths, then solves the 2x2 linear
    system for |DE| and |EA| that closes the loop.
    """
    heading, z, pts = 0.0, 0j, [0j]
    dirs = []
    for i in range(5):
        dirs.append(complex(math.cos(heading), math.sin(heading)))
        heading += math.radians(180 - angles[(i + 1) % 5])
    for i in range(3):
        z += first_three[i] * dirs[i]
        pts.append(z)
    m = np.array([[dirs[3].real, dirs[4].real], [dirs[3].imag, dirs[4].imag]])
    de, ea = np.linalg.solve(m, [-z.real, -z.imag])
    assert de > 0 and ea > 0
    pts.append(z + de * dirs[3])
    return pts


def test_type14_angle_value():
    assert TYPE14_C == pytest.approx(69.32, abs=5e-3)
    assert math.radians(TYPE14_C) == pytest.approx(1.2099, abs=5e-5)


def test_regular_hexagon_is_all_three_types():
    r = classify(regular(6))
    assert r.types == {Hexagon(1), Hexagon(2), Hexagon(3)}
    assert can_tile_edge_to_edge(r)


def test_regular_hexagon_any_labeling_is_type3():
    h = regular(6, phase=0.3)
    for off in range(6):
        for mir in (False, True):
            assert matches_type(LabeledPolygon(h, Relabeling(off, mir)), Hexagon(3))


def test_heptagon_rejected():
    r = classify(regular(7))
    assert r.types == set() and r.rejection_reason == "SevenOrMoreEdges"
    assert not can_tile_edge_to_edge(r)


def test_regular_pentagon_has_no_type_float_and_exact():
    assert classify(regular(5)).types == set()
    exact = make_polygon([Cyc.unit(2 * k) for k in range(5)])
    assert exact.exact
    assert classify(exact, tol=0).types == set()


def test_pentagon_with_three_angles_summing_to_360_is_type1():
    pts = pentagon_from_angles([150, 120, 90, 100, 80])
    r = classify(make_polygon(pts))
    assert Pentagon(1) in r.types
    assert can_tile_edge_to_edge(r)


def test_type14_pentagon(rng):
    lp = sample_polygon(Pentagon(14), rng)
    r = classify(lp.polygon)
    assert Pentagon(14) in r.types
    assert not can_tile_edge_to_edge(ClassificationResult({Pentagon(14)}))
    witness = LabeledPolygon(lp.polygon, r.witnesses[Pentagon(14)])
    assert witness.angles()["C"] == pytest.approx(TYPE14_C, abs=1e-6)


def test_type14_fails_off_the_special_angle(rng):
    lp = sample_polygon(Pentagon(14), rng)
    vs = lp.polygon.float_vertices()
    # nudge one vertex: the rigid type breaks, convexity survives
    bent = make_polygon(vs[:2] + [vs[2] + 0.01] + vs[3:])
    assert Pentagon(14) not in classify(bent).types


def test_square_against_pentagon_type():
    sq = make_polygon([0, 1, 1 + 1j, 1j])
    with pytest.raises(ClassMismatch):
        matches_type(LabeledPolygon(sq, Relabeling(0)), Pentagon(1))


def test_triangles_and_quadrilaterals():
    assert classify(make_polygon([0, 1, 1j])).types == {TRIANGLE}
    r = classify(make_polygon([0, 2, 1.5 + 1j, 0.2 + 0.7j]))
    assert r.types == {QUADRILATERAL} and can_tile_edge_to_edge(r)
    assert not can_tile_edge_to_edge(ClassificationResult())


def test_type_id_parsing():
    assert TileTypeId.parse("P7") == Pentagon(7)
    assert TileTypeId.parse("Hexagon(2)") == Hexagon(2)
    assert TileTypeId.parse("triangle") == TRIANGLE
    with pytest.raises(ValueError):
        TileTypeId.parse("P16")


@pytest.mark.parametrize("name", [f"P{k}" for k in range(1, 16)] + ["H1", "H2", "H3"])
def test_sampled_members_classify(name, rng):
    t = TileTypeId.parse(name)
    lp = sample_polygon(t, rng)
    assert matches_type(lp, t)
    assert t in classify(lp.polygon).types


@pytest.mark.parametrize("name", ["P1", "P5", "P9", "H2"])
def test_classification_ignores_start_vertex_and_isometry(name, rng):
    lp = sample_polygon(TileTypeId.parse(name), rng)
    base = classify(lp.polygon).types
    vs = lp.polygon.float_vertices()
    for k in range(len(vs)):
        assert classify(make_polygon(vs[k:] + vs[:k])).types == base
    for _ in range(5):
        g = random_isometry(rng)
        assert classify(g.apply_polygon(lp.polygon)).types == base
    assert classify(make_polygon([2.5 * z for z in vs])).types == base


def test_edge_to_edge_capability_matches_type_membership():
    for k in range(1, 16):
        assert can_tile_edge_to_edge(ClassificationResult({Pentagon(k)})) == (k in {1, 2, 4, 5, 6, 7, 8, 9})
