from fastapi import APIRouter, Depends

from app.dependencies.service_dependencies import ServiceProvider
from app.schemas.forms import AlgebraSummary, ExtendRequest, FormReport, FormSpec

router = APIRouter(prefix="/forms", tags=["Bilinear Forms"])


@router.post("/canonicalize", response_model=FormReport)
def canonicalize(spec: FormSpec, services: ServiceProvider = Depends(ServiceProvider)):
    """
    Classifies each block of the form as I or Pi with the change of basis.
    """
    return services.get_forms_service().canonicalize(spec)


@router.post("/preserver", response_model=AlgebraSummary)
def preserver(spec: FormSpec, services: ServiceProvider = Depends(ServiceProvider)):
    return services.get_forms_service().preserver(spec)


@router.post("/extend", response_model=AlgebraSummary)
def extend(request: ExtendRequest, services: ServiceProvider = Depends(ServiceProvider)):
    """
    Central extension by the cocycle and/or adjunction of I_0 to a derived oo or pe algebra.
    """
    return services.get_forms_service().extend(request)
