import pytest

from app.algebra.divpow import Coordinates, parse_function
from app.algebra.embed import load_fixture_file
from app.algebra.forms import matform_algebra
from app.algebra.identify import dim_formula, oracle_profile
from app.algebra.liesuper import center_and_quotient, verify
from app.algebra.series import (
    construct_series,
    contact_bracket,
    contact_context,
    contact_correspondence,
    dims_profile,
)
from app.core.exceptions import BadSeriesParams
from app.schemas.cartan import RunConfig


def test_vect_on_one_coordinate():
    g = construct_series("vect", (2,))
    assert g.dim == 4
    assert g.dims_by_degree() == {-1: 1, 0: 1, 1: 1, 2: 1}
    assert dims_profile(g) == [1, 1, 1, 1]
    assert verify(g) == []


def test_vect_with_an_odd_coordinate():
    assert construct_series("vect", (1,), n_odd=1).sdim == (4, 4)


@pytest.mark.parametrize("name, N", [
    ("vect", (1, 2)),
    ("svect", (1, 1)),
    ("h_Pi", (1, 1)),
    ("h_Pi", (2, 1)),
    ("k_contact", (1, 1, 1)),
])
def test_constructions_agree_with_profiles(name, N):
    g = construct_series(name, N)
    degrees = (2, 1, 1) if name == "k_contact" else None
    ctx = Coordinates.standard(N, degrees=degrees)
    assert g.dims_by_degree() == oracle_profile(name, ctx)
    assert g.sdim == dim_formula(name, {"N": list(N)})


def test_small_members():
    assert construct_series("svect", (1, 1)).dim == 5
    assert construct_series("h_Pi", (1, 1)).dim == 3
    assert construct_series("k_contact", (1, 1, 1)).dim == 8


@pytest.mark.parametrize("name, N, n_odd", [
    ("nonsense", (1,), 0),
    ("k_contact", (1, 1), 0),
    ("h_Pi", (1, 1), 1),
    ("vect", (), 0),
])
def test_bad_series_parameters(name, N, n_odd):
    with pytest.raises(BadSeriesParams):
        construct_series(name, N, n_odd)


def test_service_report(services):
    report = services.get_series_service().series("vect", [2], 0, RunConfig(command="series"), basis=True)
    assert report.dim == 4
    assert report.formula == "4"
    assert report.dims_by_degree == {-1: 1, 0: 1, 1: 1, 2: 1}


def test_brown_d4_is_o_pi_level_two_modulo_center():
    _, quotient = center_and_quotient(matform_algebra([0] * 8, 2))
    assert construct_series("brown_D4", (1, 1, 1)).dim == quotient.dim == 26


def test_contact_bracket_on_coordinates():
    ctx = contact_context()
    t, xi1, eta1, eta2 = (parse_function(ctx, s) for s in ("x1", "xi1", "xi3", "xi4"))
    one = parse_function(ctx, "1")
    assert contact_bracket(xi1, eta1) == one
    assert contact_bracket(t, xi1) == {}
    assert contact_bracket(t, eta2) == eta2
    assert contact_bracket(one, t) == one


def test_fg5n_is_the_nonpositive_part_of_the_contact_algebra():
    assert contact_correspondence("fG5N") == []


def test_broken_contact_image_is_reported():
    images = dict(load_fixture_file("fG5N").contact_images)
    images["X1p"] = "xi1*xi4"
    assert "[w3, X1p] is not preserved" in contact_correspondence("fG5N", images)


def test_dependent_contact_images_are_reported():
    images = dict(load_fixture_file("fG5N").contact_images)
    images["d"] = images["H3"]
    report = contact_correspondence("fG5N", images)
    assert report[0] == "image of d depends on earlier images"


def test_fixture_without_contact_images():
    with pytest.raises(BadSeriesParams):
        contact_correspondence("fG5N1")
