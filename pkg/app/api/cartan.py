from fastapi import APIRouter, Depends

from app.dependencies.service_dependencies import ServiceProvider
from app.schemas.cartan import (
    BuildReport,
    GradeReport,
    GradeRequest,
    ReflectReport,
    ReflectRequest,
    RootClassesReport,
    RunConfig,
    SpecSource,
)

router = APIRouter(prefix="/cartan", tags=["Cartan Matrices"])


@router.get("/presets")
def list_presets(services: ServiceProvider = Depends(ServiceProvider)):
    """
    Lists the preset families and the shipped Cartan spec files.
    """
    return services.get_cartan_service().presets()


@router.post("/build", response_model=BuildReport)
def build_algebra(source: SpecSource, services: ServiceProvider = Depends(ServiceProvider)):
    """
    Constructs g(A) and reports its dimensions, center, simple core and root spaces.
    """
    config = RunConfig(command="build", inputs=[source.model_dump_json(exclude_none=True)], format="json")
    return services.get_cartan_service().build_report(source, config)


@router.post("/grade", response_model=GradeReport)
def grade_algebra(request: GradeRequest, services: ServiceProvider = Depends(ServiceProvider)):
    """
    Grades the algebra by deg X_i^± = ±r_i and reports the dimensions of its components.
    """
    config = RunConfig(command="grade", r=request.r, format="json")
    return services.get_cartan_service().grade_report(request.source, request.r, config)


@router.post("/reflect", response_model=ReflectReport)
def reflect_roots(request: ReflectRequest, services: ServiceProvider = Depends(ServiceProvider)):
    """
    Applies a sequence of simple reflections and returns the resulting Cartan matrix.
    """
    config = RunConfig(command="reflect", format="json")
    return services.get_cartan_service().reflect(request.source, request.sequence, config)


@router.post("/enumerate-roots", response_model=RootClassesReport)
def enumerate_roots(source: SpecSource, services: ServiceProvider = Depends(ServiceProvider)):
    """
    Closes the simple root system under reflections and lists one Cartan matrix per class.
    """
    config = RunConfig(command="enumerate-roots", format="json")
    return services.get_cartan_service().enumerate_roots(source, config)
