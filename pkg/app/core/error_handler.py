from fastapi import Request
from fastapi.responses import JSONResponse
from app.core.exceptions import BaseEngineError
from app.core.log_config import logger

async def custom_exception_handler(request: Request, exc: BaseEngineError) -> JSONResponse:
    """
    Global exception handler for engine errors.

    Catches instances of BaseEngineError and formats them into a
    standard JSON error response naming the error class.
    """
    logger.warning(f"{type(exc).__name__} on {request.url.path}: {exc.detail}")
    return JSONResponse(
        status_code=exc.status_code,
        content={"detail": exc.detail, "error": type(exc).__name__}
    )
