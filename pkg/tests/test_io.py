import json
from importlib import resources

import jsonschema
import pytest

from tessella import io
from tessella.ammann import ammann_recompose
from tessella.classifier import QUADRILATERAL
from tessella.geometry import make_polygon
from tessella.penrose import check_matching, penrose_patch
from tessella.periodic import fundamental_region, generate_patch
from tessella.qfield import Cyc


def schema(name):
    return json.loads(resources.files("tessella").joinpath("schemas", name).read_text())


def roundtrip(doc):
    return json.loads(io.dumps(doc))


def test_scalars():
    assert io.parse_scalar(2) == 2.0
    assert io.parse_scalar("0.25") == 0.25
    assert io.parse_scalar("1/2+1/2√5") == pytest.approx((1 + 5 ** 0.5) / 2)
    for bad in (True, None, "abc", [1]):
        with pytest.raises(io.DocumentError):
            io.parse_scalar(bad)


def test_points():
    assert io.parse_point([1, "2"]) == 1 + 2j
    z = Cyc.unit(3)
    assert io.parse_point(roundtrip({"p": io.point_json(z)})["p"]) == z
    with pytest.raises(io.DocumentError):
        io.parse_point({"x": 1})
    with pytest.raises(io.DocumentError):
        io.parse_point([1, 2, 3])


def test_polygon_roundtrip_float_and_exact():
    fp = make_polygon([0, 1.1, 1 + 0.7j, 0.3j])
    doc = roundtrip(io.polygon_json(fp))
    jsonschema.validate(doc, schema("polygon.schema.json"))
    assert io.polygon_from_json(doc) == fp
    ep = make_polygon([Cyc(0), Cyc(1), Cyc(1) + Cyc.unit(1), Cyc.unit(1)])
    assert io.polygon_from_json(roundtrip(io.polygon_json(ep))) == ep


def test_polygon_errors():
    with pytest.raises(io.DocumentError):
        io.polygon_from_json({"vertices": [[0, 0], [1, 0]]})
    with pytest.raises(io.DocumentError):
        io.polygon_from_json({"vertices": [[0, 0], [1, 0], [0, 1]], "angle_unit": "radians"})
    with pytest.raises(io.DocumentError):
        io.polygon_from_json([])


def test_periodic_tiling_roundtrip():
    r = fundamental_region(make_polygon([0, 2, 1.5 + 1j, 0.2 + 1.2j]), QUADRILATERAL)
    t = generate_patch(r, 2, 3)
    doc = roundtrip(io.tiling_json(t))
    jsonschema.validate(doc, schema("tiling.schema.json"))
    back = io.tiling_from_json(doc)
    assert back.window == t.window
    for a, b in zip(back.polygons, t.polygons):
        assert a.float_vertices() == pytest.approx(b.float_vertices(), abs=1e-12)
    assert back.meta["fundamental_region"] == [0, 1]


def test_penrose_roundtrip_is_exact():
    t = penrose_patch(3)
    doc = roundtrip(io.tiling_json(t))
    jsonschema.validate(doc, schema("tiling.schema.json"))
    back = io.tiling_from_json(doc)
    assert back.exact
    assert back.polygons == t.polygons
    assert check_matching(back) == []
    assert io.dumps(io.tiling_json(back)) == io.dumps(io.tiling_json(t))


def test_nonconvex_prototiles_roundtrip():
    t = ammann_recompose(penrose_patch(3))
    back = io.tiling_from_json(roundtrip(io.tiling_json(t)))
    assert len(back.tiles) == len(t.tiles)


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(schema_version=2),
    lambda d: d.pop("tiles"),
    lambda d: d["tiles"].append({"prototile": "nope", "rotation_deg": 0, "translation": [0, 0],
                                 "reflected": False}),
    lambda d: d["tiles"][0].update(reflected="yes"),
    lambda d: d.update(window=[[1, 1], [0, 0]]),
])
def test_tiling_errors(mutate):
    doc = roundtrip(io.tiling_json(penrose_patch(1)))
    mutate(doc)
    with pytest.raises(io.DocumentError):
        io.tiling_from_json(doc)


def test_load_reports_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(io.DocumentError):
        io.load(str(p))
