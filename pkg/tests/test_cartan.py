import json

import pytest

from app.algebra.cartan import (
    CartanSpec,
    build,
    center_quotient,
    derived_core,
    dynkin_ascii,
    grade_by_r,
    load_spec,
    normalize_spec,
    simple_core,
)
from app.algebra.liesuper import center, verify
from app.algebra.linalg import rank_of
from app.algebra.presets import bgl4, o_odd, oc, parse_preset_args, preset, preset_files, sl, wk3, wk4
from app.algebra.roots import (
    PARAM_GROUPS,
    enumerate_root_systems,
    equivalence_key,
    initial_system,
    parameter_orbit,
    reflect,
    substituted,
)
from app.core.exceptions import InvalidParams, ReflectionUndefined, SpecFileError, UnknownPreset


def test_rank_one_orthogonal():
    assert build(o_odd(1)).algebra.dim == 3


def test_sl3_from_even_marks():
    assert build(CartanSpec.from_rows([["ev", 1], [1, "ev"]])).algebra.dim == 8


def test_gl3_has_eight_dimensions_and_closes():
    ca = build(sl(3))
    assert ca.algebra.dim == 8
    assert [ca.algebra.labels[i] for i in ca.algebra.br(ca.chevalley[("e", 0, 1)], ca.chevalley[("e", 0, -1)])] == ["h1"]
    assert verify(ca.algebra) == []


def test_equal_height_brackets_terminate_on_wk3():
    ca = build(wk3(1))
    g = ca.algebra
    top = [i for i, w in enumerate(g.weights) if sum(w) == max(sum(v) for v in g.weights)]
    bottom = [i for i, w in enumerate(g.weights) if sum(w) == -max(sum(v) for v in g.weights)]
    for x in top:
        for y in bottom:
            target = (g.parity[x] + g.parity[y]) & 1
            assert all(g.parity[k] == target for k in g.br(x, y))
    assert verify(g) == []


def test_center_is_spanned_by_the_centrals():
    ca = build(sl(4))
    assert len(ca.centrals) == 1
    assert rank_of(list(center(ca.algebra)) + ca.centrals) == 1


def test_wk3_dimensions():
    ca = build(wk3(1))
    assert ca.algebra.dim == 18
    assert simple_core(ca).dim == 16


@pytest.mark.parametrize("index", [1, 2, 3])
def test_wk4_dimensions(index):
    assert build(wk4(index)).algebra.dim == 34


def test_bgl4_superdimension():
    assert build(bgl4()).algebra.sdim_str() == "18|16"


@pytest.mark.parametrize("spec", [sl(3), sl(4), wk3(1), wk3(2), o_odd(3), oc(4)])
def test_simple_core_dimension_bookkeeping(spec):
    ca = build(spec)
    assert simple_core(ca).dim == ca.algebra.dim - 2 * (spec.n - ca.rank)


def test_variants_of_sl4():
    ca = build(sl(4))
    assert ca.algebra.dim == 16
    assert derived_core(ca).dim == 15
    assert center_quotient(ca).dim == 15
    assert simple_core(ca).dim == 14


def test_normalized_input_is_unchanged():
    spec = wk3(1)
    assert normalize_spec(spec, reorder=False).offdiag == spec.offdiag


def test_grading_wk4_mb():
    graded = grade_by_r(build(wk4(1)), [0, 1, 0, 0])
    negative = sum(n for d, n in graded.dims_by_degree().items() if d < 0)
    assert negative == 11
    assert graded.simplest


def test_grading_length_mismatch():
    with pytest.raises(InvalidParams):
        grade_by_r(build(sl(3)), [1, 0, 0])


def test_dynkin_wk3():
    assert dynkin_ascii(wk3(1)) == "@ =a= @ — @"


def test_root_classes_wk3():
    assert len(enumerate_root_systems(build(wk3(1)))) == 2


def test_reflection_out_of_range():
    ca = build(sl(3))
    with pytest.raises(ReflectionUndefined):
        reflect(ca, initial_system(ca), 5)


def test_reflection_of_sl3_stays_in_its_class():
    ca = build(sl(3))
    start = initial_system(ca)
    there = reflect(ca, start, 0)
    assert there.roots[0] == (-1, 0)
    assert there.roots[1] == (1, 1)
    assert equivalence_key(there.spec) == equivalence_key(start.spec)


def test_preset_lookup():
    assert preset("wk3", 2).offdiag[(0, 1)] == wk3(2).offdiag[(0, 1)]
    assert preset("psl", 4).dim == 14
    assert preset("o_Pi", 4).dim == 6
    with pytest.raises(UnknownPreset):
        preset("nope")
    with pytest.raises(InvalidParams):
        preset("sl", 1)


def test_shipped_preset_files_load():
    assert "wk3_1" in preset_files()
    assert parse_preset_args("2,2") == [2, 2]
    with pytest.raises(InvalidParams):
        parse_preset_args("x")


def test_spec_file_errors_carry_position(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"size": 2,\n "diagonal": ["ev" "ev"]}', encoding="utf-8")
    with pytest.raises(SpecFileError) as exc:
        load_spec(broken)
    assert "line 2" in exc.value.detail

    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"size": 2, "diagonal": ["ev"]}), encoding="utf-8")
    with pytest.raises(SpecFileError):
        load_spec(wrong)

    with pytest.raises(SpecFileError):
        load_spec(tmp_path / "missing.json")


def test_spec_file_round_trip(tmp_path):
    path = tmp_path / "wk3.json"
    path.write_text(json.dumps(wk3(1).to_file_dict()), encoding="utf-8")
    loaded = load_spec(path)
    assert loaded.offdiag == wk3(1).offdiag
    assert loaded.marks == wk3(1).marks


@pytest.fixture(scope="module")
def wk3_built():
    return build(wk3(1))


@pytest.mark.parametrize("image", PARAM_GROUPS["wk3"][1:], ids=str)
def test_parameter_maps_keep_the_wk3_structure(image, wk3_built):
    moved = build(substituted(wk3(1), image))
    assert moved.root_space_dims() == wk3_built.root_space_dims()
    assert verify(moved.algebra) == []
    graded = grade_by_r(simple_core(moved), [1, 0, 0])
    assert graded.dims_by_degree() == grade_by_r(simple_core(wk3_built), [1, 0, 0]).dims_by_degree()


def test_parameter_orbit_of_wk3():
    orbit = parameter_orbit(wk3(1))
    assert len(orbit) == len(PARAM_GROUPS["wk3"])
    assert orbit[0].offdiag == wk3(1).offdiag
    assert len(parameter_orbit(sl(3))) == 1
