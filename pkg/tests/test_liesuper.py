import pytest

from app.algebra.cartan import CartanSpec, build, grade_by_r, simple_core
from app.algebra.liesuper import (
    LieSuperAlgebra,
    SimplicityVerdict,
    associated_graded,
    center,
    derived,
    desuperize,
    from_json,
    graded_derivations,
    is_simple,
    outer_derivations,
    quotient,
    to_json,
    verify,
    weisfeiler_filtration,
)
from app.algebra.presets import bgl3, sl
from app.algebra.scalar import ONE
from app.core.exceptions import InvalidSeed, NotAnIdeal


@pytest.fixture
def hei2() -> LieSuperAlgebra:
    """[x, y] = z, z central."""
    return LieSuperAlgebra(["x", "y", "z"], [0, 0, 0], {(0, 1): {2: ONE}}, meta={"name": "hei(2)"})


def test_valid_table_has_no_violations(hei2):
    assert verify(hei2) == []


def test_broken_jacobi_is_reported():
    g = LieSuperAlgebra(["x", "y", "z"], [0, 0, 0], {(0, 1): {0: ONE}, (0, 2): {1: ONE}})
    assert verify(g)


def test_even_element_with_a_square_is_reported():
    g = LieSuperAlgebra(["x", "y"], [0, 1], square_provider=lambda i: {0: ONE} if i == 0 else {})
    report = verify(g)
    assert report == ["polarization: even element x carries a square"]
    assert g.sq(0) == {}


def test_center_of_heisenberg(hei2):
    z = center(hei2)
    assert z == [{2: ONE}]


def test_derived_of_rank_zero_cartan_matrices():
    gl2 = build(CartanSpec.from_rows([["ev"]])).algebra
    assert derived(gl2).dim == 3
    odd = build(CartanSpec.from_rows([["0"]])).algebra
    assert derived(odd).sdim_str() == "1|2"


def test_quotient_by_non_ideal(hei2):
    with pytest.raises(NotAnIdeal):
        quotient(hei2, [{0: ONE}])


def test_quotient_by_center(hei2):
    q = quotient(hei2, center(hei2))
    assert q.dim == 2
    assert q.br(0, 1) == {}


def test_outer_derivations_of_heisenberg(hei2):
    report = graded_derivations(hei2, [0, 0, 0], 0)
    assert report.inner == 2
    assert report.outer >= 1


def test_psl4_has_seven_outer_derivations():
    graded = grade_by_r(simple_core(build(sl(4))), [0, 1, 0]).algebra
    counts = outer_derivations(graded, graded.degrees)
    assert sum(counts.values()) == 7


def test_desuperize_bgl3_core():
    core = simple_core(build(bgl3()))
    flat = desuperize(core)
    assert flat.dim == 16
    assert flat.sdim == (16, 0)


def test_simple_core_of_sl3_is_not_reducible():
    result = is_simple(simple_core(build(sl(3))))
    assert result.verdict is not SimplicityVerdict.NOT_SIMPLE


def test_heisenberg_is_not_simple(hei2):
    result = is_simple(hei2)
    assert result.verdict is SimplicityVerdict.NOT_SIMPLE
    assert result.reason == "nonzero center"


def test_weisfeiler_filtration_of_sl3():
    graded = grade_by_r(build(sl(3)), [1, 0]).algebra
    nonnegative = [{i: ONE} for i, d in enumerate(graded.degrees) if d >= 0]
    everything = [{i: ONE} for i in range(graded.dim)]
    filt = weisfeiler_filtration(graded, nonnegative, everything)
    gr = associated_graded(filt)
    assert filt.depth == 1
    assert (gr[-1], gr[0], gr[1]) == (2, 4, 2)


def test_filtration_seed_must_be_invariant(hei2):
    with pytest.raises(InvalidSeed):
        weisfeiler_filtration(hei2, [{0: ONE}], [{1: ONE}])


def test_json_round_trip_keeps_structure(hei2):
    again = from_json(to_json(hei2))
    assert again.labels == hei2.labels
    assert again.structure_table() == hei2.structure_table()
