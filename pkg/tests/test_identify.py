import pytest

from app.algebra.cartan import build, grade_by_r
from app.algebra.divpow import Coordinates
from app.algebra.embed import fixture, realize, superize
from app.algebra.identify import (
    dim_formula,
    identify,
    load_catalog,
    monomial_counts,
    oracle_profile,
    sdim_text,
    shearing_arrangements,
    superized_fixture,
    top_verdicts,
)
from app.algebra.presets import o_odd
from app.algebra.prolong import complete_prolong
from app.core.exceptions import BadSeriesParams, InvalidParams, NotApplicable


@pytest.mark.parametrize("name, params, expected", [
    ("o_odd", {"k": 3}, (21, 0)),
    ("pec2", {"m": 3}, (10, 6)),
    ("pec1", {"m": 4, "sign": "-"}, (14, 12)),
    ("oo_odd", {"k_ev": 1, "k_od": 1}, (6, 6)),
    ("oc1", {"k": 4}, (30, 0)),
    ("vect", {"N": [1, 2]}, (16, 0)),
    ("h_Pi", {"N": [1, 1]}, (3, 0)),
])
def test_dimension_formulas(name, params, expected):
    assert dim_formula(name, params) == expected


@pytest.mark.parametrize("name, params", [
    ("nope", {"k": 1}),
    ("pec2", {"m": 4}),
    ("oc1", {"k": 3}),
    ("o_odd", {}),
    ("ooc1", {"k_ev": 1, "k_od": 1, "sign": "?"}),
    ("vect", {"N": []}),
])
def test_formula_parameter_errors(name, params):
    with pytest.raises(InvalidParams):
        dim_formula(name, params)


def test_sdim_text():
    assert sdim_text((10, 6)) == "10|6"
    assert sdim_text((21, 0)) == "21"


def test_monomial_counts_are_weighted():
    ctx = Coordinates.standard([1, 1, 1], degrees=[2, 1, 1])
    assert monomial_counts(ctx) == {0: 1, 1: 2, 2: 2, 3: 2, 4: 1}


def test_oracles_check_their_coordinates():
    with pytest.raises(NotApplicable):
        oracle_profile("k_contact", Coordinates.standard([1, 1]))
    with pytest.raises(NotApplicable):
        oracle_profile("svect", Coordinates.standard([1], n_odd=1))
    with pytest.raises(InvalidParams):
        oracle_profile("nope", Coordinates.standard([1]))


def test_shearing_arrangements_permute_within_degrees():
    got = shearing_arrangements((1, 2, 3), (1, 1, 2), (2, 1, 1))
    assert set(got) == {(3, 1, 2), (3, 2, 1)}
    assert shearing_arrangements((1, 2), (1, 1), (1, 2)) == []


def test_catalog_loads():
    catalog = load_catalog()
    assert catalog.entries
    assert {"rank1", "rank2"} <= set(catalog.tables)


def test_rank_one_prolong_is_recognized():
    graded = grade_by_r(build(o_odd(1)), [1])
    result = complete_prolong(realize(graded.nonpositive), N=(3,))
    verdicts = identify(result, source=graded.algebra)
    assert "vect(1;N)" in top_verdicts(verdicts)
    exact = [v.exact for v in verdicts]
    assert exact == sorted(exact, reverse=True)


@pytest.mark.parametrize("name, sdim", [("ir(5;N|4)", (5, 4)), ("ir(3;N|6)", (1, 8))])
def test_superizations_of_ir9_keep_the_branch_fields_homogeneous(name, sdim):
    entry = load_catalog().entry(name)
    assert entry.base == "ir(9;N)"
    rz = superized_fixture(entry)
    ctx = rz.context
    assert (ctx.m, ctx.size - ctx.m) == sdim
    assert rz.dims_by_degree() == fixture("branch").dims_by_degree()
    assert all(ctx.field_parity(D) is not None for D in rz.fields)


def test_inconsistent_parity_assignment_is_rejected():
    with pytest.raises(BadSeriesParams):
        superize(fixture("branch"), ["x3"])
    with pytest.raises(InvalidParams):
        superize(fixture("branch"), ["x12"])
    with pytest.raises(NotApplicable):
        superized_fixture(load_catalog().entry("ir(9;N)"))
