import json

import pytest

from app.algebra.cartan import build, grade_by_r, simple_core
from app.algebra.embed import (
    fixture,
    fixture_names,
    load_fixture_file,
    realize,
    structure_invariants,
    verify_realization,
)
from app.algebra.presets import o_odd, sl, wk3
from app.core.config import settings
from app.core.exceptions import InvalidParams, SpecFileError, UnknownFixture


@pytest.mark.parametrize(
    "name, dims",
    [
        ("fG5N1", {-1: 4, 0: 8}),
        ("fGbis5N2", {-1: 4, 0: 7}),
        ("fG5N", {-2: 1, -1: 4, 0: 7}),
        ("endpoint", {-1: 6, 0: 16}),
        ("branch", {-2: 1, -1: 8, 0: 10}),
        ("mb11", {-3: 2, -2: 3, -1: 6, 0: 12}),
        ("brown", {-2: 3, -1: 6, 0: 8}),
    ],
)
def test_fixture_dimensions(name, dims):
    rz = fixture(name)
    assert rz.dims_by_degree() == dims
    assert rz.context.size == sum(n for d, n in dims.items() if d < 0)


def test_fixture_variant_adds_generators():
    assert fixture("brown", "vle").dims_by_degree()[0] == 12
    with pytest.raises(UnknownFixture):
        fixture("brown", "nope")


@pytest.mark.parametrize("name", ["fG5N1", "endpoint", "mb11"])
def test_fixtures_span_graded_subalgebras(name):
    assert verify_realization(fixture(name)) == []


def test_fixture_names():
    assert {"mb11", "branch", "fG5N1"} <= set(fixture_names())
    with pytest.raises(UnknownFixture):
        fixture("missing")


def test_tampered_fixture_is_rejected(tmp_path, monkeypatch):
    source = settings.DATA_DIR / "fixtures" / "fG5N1.json"
    data = json.loads(source.read_text(encoding="utf-8"))
    data["generators"][0]["field"] = "d2"
    (tmp_path / "fixtures").mkdir()
    (tmp_path / "fixtures" / "tampered.json").write_text(json.dumps(data), encoding="utf-8")
    monkeypatch.setattr(settings, "DATA_DIR", tmp_path)
    with pytest.raises(SpecFileError) as exc:
        load_fixture_file("tampered")
    assert "checksum" in exc.value.detail


def test_realize_sl3():
    graded = grade_by_r(build(sl(3)), [1, 0])
    rz = realize(graded.nonpositive)
    assert rz.dims_by_degree() == {-1: 2, 0: 4}
    assert rz.depth == 1
    assert verify_realization(rz) == []


def test_realize_rank_one():
    rz = realize(grade_by_r(build(o_odd(1)), [1]).nonpositive)
    assert rz.dims_by_degree() == {-1: 1, 0: 1}
    assert rz.required_shearing() == (1,)


def test_realize_needs_a_negative_part():
    with pytest.raises(InvalidParams):
        realize(build(sl(3)).algebra)
    with pytest.raises(InvalidParams):
        realize(grade_by_r(build(sl(3)), [0, 0]).algebra)


def test_symbolic_shearing_needs_values():
    rz = fixture("fG5N1")
    assert rz.shearing({"n": 2, "m": 3}) == (1, 2, 3, 1)
    assert rz.shearing(default=5) == (1, 5, 5, 1)
    with pytest.raises(InvalidParams):
        rz.shearing()


def test_fg5n_drops_the_dependent_torus_generator():
    rz = fixture("fG5N")
    assert rz.warnings == ["H2 is dependent on earlier generators"]
    assert "H2" not in rz.labels
    assert {"H1", "H3", "d"} <= set(rz.labels)


@pytest.fixture(scope="module")
def wk3_nonpositive():
    return grade_by_r(simple_core(build(wk3(1))), [1, 0, 0]).nonpositive


def test_fg5n1_matches_the_constructed_nonpositive_part(wk3_nonpositive):
    assert verify_realization(fixture("fG5N1"), wk3_nonpositive) == []


def test_fixture_of_another_algebra_is_told_apart(wk3_nonpositive):
    report = verify_realization(fixture("fGbis5N2"), wk3_nonpositive)
    assert report
    assert report[0].startswith("superdimension by degree")


def test_invariants_of_a_realization_match_its_source():
    graded = grade_by_r(build(sl(3)), [1, 0]).nonpositive
    assert structure_invariants(realize(graded).algebra()) == structure_invariants(graded)
