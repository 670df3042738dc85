import pytest

from app.algebra.forms import (
    BilinearForm,
    FormClass,
    canonical_gram,
    canonicalize_form,
    extend_and_dress,
    matform_algebra,
    oo_parities,
    pe_parities,
    preserver_algebra,
    superform,
)
from app.algebra.identify import dim_formula
from app.algebra.linalg import ExactMatrix
from app.algebra.liesuper import derived
from app.core.exceptions import DegenerateForm, InvalidParams, NotApplicable
from app.schemas.forms import ExtendRequest, FormSpec


def _check_canonical(form):
    cls, M = canonicalize_form(form)
    assert M @ form.gram @ M.transpose() == canonical_gram(cls, form.size)
    return cls, M


def test_unit_form_is_already_canonical():
    cls, M = _check_canonical(superform(4, 0))
    assert cls is FormClass.I
    assert M == ExactMatrix.identity(4)


@pytest.mark.parametrize("token, n, expected", [
    ("Pi", 4, FormClass.PI),
    ("Pi", 6, FormClass.PI),
    ("S", 3, FormClass.I),
    ("S", 4, FormClass.PI),
    ("Pi", 5, FormClass.I),
])
def test_form_classes(token, n, expected):
    cls, _ = _check_canonical(superform(n, 0, token))
    assert cls is expected


def test_mixed_form_trades_into_class_i():
    gram = ExactMatrix.from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 0]])
    cls, _ = _check_canonical(BilinearForm(gram, [0, 0, 0]))
    assert cls is FormClass.I


def test_degenerate_and_parametric_forms():
    with pytest.raises(DegenerateForm):
        canonicalize_form(BilinearForm(ExactMatrix.from_rows([[1, 1], [1, 1]]), [0, 0]))
    with pytest.raises(InvalidParams):
        canonicalize_form(BilinearForm(ExactMatrix.from_rows([["a", 0], [0, 1]]), [0, 0]))


def test_preserver_of_the_unit_form():
    assert preserver_algebra(superform(2, 0)).dim == 3


@pytest.mark.parametrize("k", [1, 2])
def test_derived_orthogonal_algebra(k):
    g = derived(preserver_algebra(superform(2 * k + 1, 0)))
    assert g.dim == dim_formula("o_odd", {"k": k})[0]


def test_pe_extension_matches_formula():
    g = extend_and_dress(matform_algebra(pe_parities(4), 1), "both")
    assert g.sdim == dim_formula("pec1", {"m": 4})
    assert g.sdim == (18, 12)


def test_oo_extension_matches_formula():
    g = extend_and_dress(matform_algebra(oo_parities(2, 2), 1), "both")
    assert g.sdim == (14, 16)
    assert g.sdim == dim_formula("ooc1", {"k_ev": 2, "k_od": 2, "sign": "+"})


def test_single_extensions_add_one_element():
    base = matform_algebra(pe_parities(4), 1)
    assert extend_and_dress(base, "cocycle").dim == base.dim + 1
    assert extend_and_dress(base, "I0").dim == base.dim + 1


def test_extension_needs_a_matform_algebra():
    with pytest.raises(NotApplicable):
        extend_and_dress(preserver_algebra(superform(2, 0)))
    with pytest.raises(InvalidParams):
        extend_and_dress(matform_algebra(pe_parities(4), 1), "neither")


def test_service_reports(services):
    forms = services.get_forms_service()
    report = forms.canonicalize(FormSpec(n_ev=3, n_od=2, B_ev="S", B_od="Pi"))
    assert [(b.block, b.form_class) for b in report.blocks] == [("even", "I"), ("odd", "Pi")]
    assert report.sdim == "3|2"
    summary = forms.extend(ExtendRequest(family="pe", m=4))
    assert summary.sdim == "18|12"
    with pytest.raises(InvalidParams):
        forms.extend(ExtendRequest(family="oo", k_ev=2))


def test_odd_form_spec_needs_matching_dimensions():
    with pytest.raises(ValueError):
        FormSpec(n_ev=2, n_od=1, parity="odd")
