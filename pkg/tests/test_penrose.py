import math

import numpy as np
import pytest

from tessella.geometry import Isometry, interior_angles_deg, make_polygon
from tessella.penrose import (DART, KITE, THICK, THIN, NotARhombusPatch, check_matching,
                              count_tiles, deflate_halves, halves, kite_dart_prototiles,
                              oriented_rhombus_periodic, oriented_rhombus_prototiles,
                              penrose_patch, penrose_rhombus_prototiles, rhombus_polygon,
                              seed_patch, substitute, substitution_matrix)
from tessella.qfield import Cyc
from tessella.tiling import PlacedTile, Prototile, Tiling
from tessella.validate import detect_periodicity, validate

GOLDEN = (1 + math.sqrt(5)) / 2


def test_rhombus_angles():
    assert sorted(interior_angles_deg(rhombus_polygon(THIN))) == pytest.approx([36, 36, 144, 144])
    assert sorted(interior_angles_deg(rhombus_polygon(THICK))) == pytest.approx([72, 72, 108, 108])
    assert interior_angles_deg(rhombus_polygon(THIN))[0] == pytest.approx(36)
    assert interior_angles_deg(rhombus_polygon(THICK))[0] == pytest.approx(108)


def test_oriented_prototiles():
    plain, oriented = penrose_rhombus_prototiles(), oriented_rhombus_prototiles()
    for k in (THIN, THICK):
        assert oriented[k].polygon == plain[k].polygon
        assert set(oriented[k].marking.vertex_colors) == {"none"}
        assert all(d.arrows == 1 for d in oriented[k].marking.edge_decorations)
        assert oriented[k].marking != plain[k].marking


def test_kite_dart_shapes():
    kd = kite_dart_prototiles()
    for name in (KITE, DART):
        lens = sorted(kd[name].polygon.edge_lengths())
        assert lens[2] / lens[0] == pytest.approx(GOLDEN)
        assert lens[0] == pytest.approx(lens[1]) and lens[2] == pytest.approx(lens[3])
    assert sorted(interior_angles_deg(kd[KITE].polygon)) == pytest.approx([72, 72, 72, 144])
    # the dart has one reflex corner
    assert max(interior_angles_deg(kd[DART].polygon)) == pytest.approx(216)


def test_substitution_matrix_drives_half_counts():
    m = np.array(substitution_matrix())
    tris = halves(seed_patch(THICK))
    for k in range(1, 6):
        got = deflate_halves(tris, k)
        thin = sum(1 for h in got if h[0] == "T")
        thick = sum(1 for h in got if h[0] == "G")
        assert [thin, thick] == list(np.linalg.matrix_power(m, k) @ [0, 2])


def test_substitute_identity_and_errors():
    seed = seed_patch(THICK)
    assert substitute(seed, 0).tiles == seed.tiles
    with pytest.raises(ValueError):
        substitute(seed, -1)
    sq = Prototile("square", make_polygon([0, 1, 1 + 1j, 1j]))
    bad = Tiling({"square": sq}, [PlacedTile("square", Isometry())], ((0.1, 0.1), (0.9, 0.9)))
    with pytest.raises(NotARhombusPatch):
        substitute(bad, 1)


def test_small_patch_counts():
    # frozen from the implemented rule table
    assert count_tiles(penrose_patch(1)) == {THICK: 1, THIN: 0}
    assert count_tiles(penrose_patch(2)) == {THICK: 3, THIN: 3}
    assert count_tiles(penrose_patch(3)) == {THICK: 10, THIN: 7}


@pytest.mark.parametrize("k", range(1, 7))
def test_substituted_patches_match(k):
    t = penrose_patch(k)
    assert check_matching(t) == []
    assert all(isinstance(tile.transform.rot, Cyc) for tile in t.tiles)


def test_thin_seed_matches():
    assert check_matching(penrose_patch(4, seed=THIN)) == []


def test_unit_edges_after_substitution():
    for p in penrose_patch(4).polygons:
        assert p.edge_lengths() == pytest.approx([1.0] * 4)


def test_thick_thin_ratio_k10():
    c = count_tiles(penrose_patch(10))
    assert c[THICK] / c[THIN] == pytest.approx(GOLDEN, rel=0.01)


def test_penrose_patch_validates_without_period():
    t = penrose_patch(4)
    rep = validate(t)
    assert rep.no_overlap and rep.covered and rep.edge_to_edge
    assert rep.prototile_count == 2
    assert rep.periodicity is None


def test_single_tile_has_no_violations():
    assert check_matching(seed_patch(THIN)) == []


def test_mismatched_arrows_on_shared_edge():
    protos = penrose_rhombus_prototiles()
    # second copy turned half a turn about the midpoint of AB: its arrow on
    # the shared edge points the other way
    tiles = [PlacedTile(THICK, Isometry.exact()), PlacedTile(THICK, Isometry.exact(5, Cyc(1)))]
    t = Tiling(protos, tiles, ((0.1, -0.1), (0.9, 0.1)))
    edge = [v for v in check_matching(t) if v.kind == "edge"]
    assert len(edge) == 1
    assert edge[0].tiles == (0, 1)


def test_turned_tile_inside_patch_is_caught():
    t = penrose_patch(3)
    i = len(t.tiles) // 2
    g = t.tiles[i].transform
    c = Cyc.unit(3) if t.tiles[i].prototile == THICK else Cyc.unit(1)
    # half-turn about the rhombus centre keeps the shape and swaps the markings
    turned = Isometry(-g.rot, g.rot * (Cyc(1) + c) + g.trans, False)
    tiles = list(t.tiles)
    tiles[i] = PlacedTile(t.tiles[i].prototile, turned)
    t2 = t.with_tiles(tiles)
    same = {complex(v) for v in t.polygons[i].vertices}
    assert {complex(v) for v in t2.polygons[i].vertices} == same
    assert check_matching(t2)


def test_oriented_periodic_patch():
    t = oriented_rhombus_periodic(2, 2)
    assert len(t.tiles) == 4
    t = oriented_rhombus_periodic(3, 3)
    assert check_matching(t) == []
    rep = validate(t)
    assert rep.all_pass()
    assert rep.periodicity is not None
    with pytest.raises(ValueError):
        oriented_rhombus_periodic(0, 1)


@pytest.mark.parametrize("k", [4, 5])
def test_no_period_in_substituted_patches(k):
    assert detect_periodicity(penrose_patch(k)) is None


@pytest.mark.parametrize("seed", [THICK, THIN])
@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_window_is_covered(seed, k):
    t = penrose_patch(k, seed=seed)
    rep = validate(t, periodicity=False)
    assert rep.covered, rep.gaps[:3]
