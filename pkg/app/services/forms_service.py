from typing import List

from app.algebra.forms import (
    BilinearForm,
    canonicalize_form,
    extend_and_dress,
    form_from_spec,
    gram_from_token,
    matform_algebra,
    oo_parities,
    pe_parities,
    preserver_algebra,
)
from app.algebra.liesuper import LieSuperAlgebra
from app.core.exceptions import InvalidParams
from app.schemas.forms import AlgebraSummary, ExtendRequest, FormBlock, FormReport, FormSpec


def summarize(g: LieSuperAlgebra) -> AlgebraSummary:
    return AlgebraSummary(name=g.meta.get("name") or "g", dim=g.dim, sdim=g.sdim_str(), labels=list(g.labels))


class FormsService:
    """Service to canonicalize forms and build their preservers and extensions."""

    @staticmethod
    def form(spec: FormSpec) -> BilinearForm:
        return form_from_spec(spec.model_dump())

    def canonicalize(self, spec: FormSpec, with_preserver: bool = True) -> FormReport:
        blocks: List[FormBlock] = []
        if spec.parity == "even":
            for block, n, token in (("even", spec.n_ev, spec.B_ev), ("odd", spec.n_od, spec.B_od)):
                if not n:
                    continue
                cls, M = canonicalize_form(BilinearForm(gram_from_token(token, n), [0] * n))
                rows = [[str(M.get(i, j)) for j in range(M.cols)] for i in range(M.rows)]
                blocks.append(FormBlock(block=block, form_class=cls.value, change_of_basis=rows))
        preserver = preserver_algebra(self.form(spec)).sdim_str() if with_preserver else None
        sdim = f"{spec.n_ev}|{spec.n_od}" if spec.n_od else str(spec.n_ev)
        return FormReport(parity=spec.parity, sdim=sdim, blocks=blocks, preserver_sdim=preserver)

    def preserver(self, spec: FormSpec) -> AlgebraSummary:
        return summarize(preserver_algebra(self.form(spec)))

    @staticmethod
    def extend(request: ExtendRequest) -> AlgebraSummary:
        if request.family == "oo":
            if request.k_ev is None or request.k_od is None:
                raise InvalidParams("oo needs k_ev and k_od")
            parities = oo_parities(request.k_ev, request.k_od)
        else:
            if request.m is None:
                raise InvalidParams("pe needs m")
            parities = pe_parities(request.m)
        g = matform_algebra(parities, request.level)
        return summarize(extend_and_dress(g, request.which))
