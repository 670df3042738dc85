from typing import List, Optional

from fastapi import APIRouter, Depends, Query

from app.algebra.presets import parse_preset_args
from app.dependencies.service_dependencies import ServiceProvider
from app.schemas.cartan import RunConfig
from app.schemas.catalog import DimFormulaModel
from app.schemas.series import SeriesReport

router = APIRouter(prefix="/series", tags=["Series"])


@router.get("/formula/{name}", response_model=DimFormulaModel)
def dimension_formula(
    name: str,
    k: Optional[int] = None,
    k_ev: Optional[int] = None,
    k_od: Optional[int] = None,
    m: Optional[int] = None,
    N: Optional[str] = None,
    sign: str = "+",
    services: ServiceProvider = Depends(ServiceProvider),
):
    """
    Evaluates a closed-form superdimension; N is given as '1,2,1'.
    """
    params = {key: value for key, value in
              (("k", k), ("k_ev", k_ev), ("k_od", k_od), ("m", m)) if value is not None}
    if N is not None:
        params["N"] = parse_preset_args(N)
    params["sign"] = sign
    return services.get_series_service().formula(name, params)


@router.get("/{name}", response_model=SeriesReport)
def series_member(
    name: str,
    N: List[int] = Query(...),
    n_odd: int = 0,
    basis: bool = False,
    services: ServiceProvider = Depends(ServiceProvider),
):
    """
    Constructs a series member on its natural basis.
    """
    config = RunConfig(command="series", inputs=[name], N=N, format="json")
    return services.get_series_service().series(name, N, n_odd, config, basis=basis)
