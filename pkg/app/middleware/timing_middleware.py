import time

from fastapi import Request
from starlette.middleware.base import BaseHTTPMiddleware

from app.core.config import settings
from app.core.log_config import logger

ELAPSED_HEADER = "X-Elapsed-Seconds"


class TimingMiddleware(BaseHTTPMiddleware):
    """Times every request; builds and prolongs can run for minutes."""

    async def dispatch(self, request: Request, call_next):
        """
        Stamps the wall time on the response and logs it.

        Requests slower than ``settings.SLOW_REQUEST_SECONDS`` are logged as warnings
        so they reach the console as well as the JSON log file.

        Args:
            request (Request): The incoming HTTP request.
            call_next: The next middleware or endpoint to call.

        Returns:
            Response: The HTTP response, with the elapsed seconds in a header.
        """
        started = time.perf_counter()
        response = await call_next(request)
        elapsed = time.perf_counter() - started

        response.headers[ELAPSED_HEADER] = f"{elapsed:.4f}"
        message = f"{request.method} {request.url.path} -> {response.status_code} in {elapsed:.4f}s"
        if elapsed > settings.SLOW_REQUEST_SECONDS:
            logger.warning(f"slow request: {message}")
        else:
            logger.info(message)
        return response
