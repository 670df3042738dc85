from typing import Dict, List, Sequence

from app.algebra.divpow import format_field
from app.algebra.identify import FORMULAS, dim_formula, sdim_text
from app.algebra.series import construct_series
from app.schemas.cartan import RunConfig
from app.schemas.catalog import DimFormulaModel
from app.schemas.series import SeriesReport


class SeriesService:
    """Service to construct series members and evaluate dimension formulas."""

    def series(self, name: str, N: Sequence[int], n_odd: int, config: RunConfig, basis: bool = False) -> SeriesReport:
        g = construct_series(name, N, n_odd)
        formula = None
        if name in FORMULAS and not n_odd:
            formula = sdim_text(dim_formula(name, {"N": list(N)}))
        fields: List[str] = []
        if basis and "context" in g.meta and "fields" in g.meta:
            ctx = g.meta["context"]
            fields = [f"{label} = {format_field(ctx, D)}" for label, D in zip(g.labels, g.meta["fields"])]
        return SeriesReport(
            config=config,
            name=g.meta.get("name") or name,
            N=list(N),
            n_odd=n_odd,
            dim=g.dim,
            sdim=g.sdim_str(),
            dims_by_degree=g.dims_by_degree(),
            formula=formula,
            basis=fields,
        )

    @staticmethod
    def formula(name: str, params: Dict[str, object]) -> DimFormulaModel:
        even, odd = dim_formula(name, params)
        return DimFormulaModel(name=name, params=params, even=even, odd=odd, sdim=sdim_text((even, odd)))
