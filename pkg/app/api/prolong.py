from fastapi import APIRouter, Depends

from app.dependencies.service_dependencies import ServiceProvider
from app.schemas.cartan import RunConfig
from app.schemas.prolong import PartialProlongRequest, ProlongReport, ProlongRequest, ReproduceReport

router = APIRouter(prefix="/prolong", tags=["Prolongs"])


def _config(command: str, request: ProlongRequest) -> RunConfig:
    return RunConfig(command=command, inputs=[request.model_dump_json(exclude_none=True)], r=request.r,
                     N=request.N, degree_cap=request.degree_cap, format="json")


@router.post("", response_model=ProlongReport)
def prolong(request: ProlongRequest, services: ServiceProvider = Depends(ServiceProvider)):
    """
    Computes the complete prolong of g_<=0 and matches it against the catalog.
    """
    _, report = services.get_prolong_service().prolong(request, _config("prolong", request))
    return report


@router.post("/partial", response_model=ProlongReport)
def partial_prolong(request: PartialProlongRequest, services: ServiceProvider = Depends(ServiceProvider)):
    """
    Computes the prolong with g_1 fixed to the span of the given fields.
    """
    _, report = services.get_prolong_service().partial_prolong(request, _config("partial-prolong", request))
    return report


@router.post("/identify", response_model=ProlongReport)
def identify(request: ProlongRequest, services: ServiceProvider = Depends(ServiceProvider)):
    """
    Prolongs and lists every catalog candidate with its mismatches; FREE coordinates default to 1.
    """
    if request.N is None and request.free is None:
        request = request.model_copy(update={"free": 1})
    request = request.model_copy(update={"identify": True, "constraints": True})
    _, report = services.get_prolong_service().prolong(request, _config("identify", request))
    return report


@router.get("/reproduce/{table}", response_model=ReproduceReport)
def reproduce(table: str, skip_slow: bool = True, services: ServiceProvider = Depends(ServiceProvider)):
    """
    Recomputes every row of a table and compares it with the catalogued verdicts.
    """
    config = RunConfig(command="reproduce", inputs=[table], format="json")
    return services.get_prolong_service().reproduce(table, config, skip_slow=skip_slow)
