import re

from tessella.classifier import QUADRILATERAL
from tessella.geometry import Isometry, make_polygon
from tessella.penrose import penrose_patch
from tessella.periodic import fundamental_region, generate_patch
from tessella.render import HIGHLIGHT, region_indices, render_svg
from tessella.tiling import PlacedTile, Prototile, Tiling

SQUARE = make_polygon([0, 1, 1 + 1j, 1j])


def square_patch():
    # the square's fundamental region is two squares, so 3 x 3 cells give 18
    return generate_patch(fundamental_region(SQUARE, QUADRILATERAL), 3, 3)


def test_square_grid_nine_paths():
    tiles = [PlacedTile("S", Isometry(1 + 0j, complex(i, j), False)) for i in range(3) for j in range(3)]
    t = Tiling({"S": Prototile("S", SQUARE)}, tiles, ((0.0, 0.0), (3.0, 3.0)))
    assert render_svg(t).count("<path ") == 9


def test_penrose_path_count():
    t = penrose_patch(4)
    assert render_svg(t).count("<path ") == len(t.tiles)


def test_one_path_per_tile():
    t = square_patch()
    svg = render_svg(t)
    assert svg.count("<path ") == len(t.tiles) == 18
    assert svg.startswith("<?xml")
    assert svg.rstrip().endswith("</svg>")


def test_highlight_fundamental_region():
    t = square_patch()
    hl = region_indices(t)
    assert hl == {0, 1}
    svg = render_svg(t, hl)
    assert svg.count(f'fill="{HIGHLIGHT}"') == 2
    assert svg.count('fill="none"') == 16


def test_deterministic():
    t = square_patch()
    assert render_svg(t, {0}) == render_svg(t, {0})


def test_picture_size_follows_extent():
    t = square_patch()
    w = float(re.search(r'width="([0-9.]+)"', render_svg(t, unit_px=10)).group(1))
    h = float(re.search(r'height="([0-9.]+)"', render_svg(t, unit_px=10)).group(1))
    # 3 squares wide, 6 tall, plus a margin on both sides
    assert (w, h) == (38.0, 68.0)


def test_y_axis_points_up():
    t = generate_patch(fundamental_region(SQUARE, QUADRILATERAL), 1, 1)
    svg = render_svg(t, unit_px=10)
    first = re.search(r'd="M([0-9.]+),([0-9.]+)', svg)
    # the tile at the origin is drawn at the bottom of the picture
    assert float(first.group(2)) > 10
