"""
Maps lab exceptions and framework errors onto the ErrorResponse envelope.
"""
import logging
import traceback
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from sqlalchemy.exc import SQLAlchemyError

from core.config import settings
from core.exceptions import LabError
from schemas.response import ErrorCodes, ErrorResponse

logger = logging.getLogger(__name__)

HTTP_ERROR_CODES = {
    400: ErrorCodes.VALIDATION_ERROR,
    404: ErrorCodes.RESOURCE_NOT_FOUND,
    405: ErrorCodes.VALIDATION_ERROR,
    422: ErrorCodes.VALIDATION_ERROR,
}


def _debug() -> bool:
    return settings.LOG_LEVEL.upper() == "DEBUG"


def _field_path(loc) -> str:
    # ("body", "gamma_ab") -> "gamma_ab"; request sections are noise for callers
    parts = [str(p) for p in loc if p not in ("body", "query", "path")]
    return ".".join(parts) or "request"


class UnifiedErrorHandler:
    """
    Every error leaves the API as {success: false, message, error_code}.
    Detail lists and raw exception text are only exposed with LOG_LEVEL=DEBUG.
    """

    @staticmethod
    def envelope(
        message: str,
        error_code: str,
        status_code: int,
        errors: Optional[List[Dict[str, Any]]] = None,
    ) -> JSONResponse:
        body = ErrorResponse(message=message, error_code=error_code, errors=errors if _debug() else None)
        body.timestamp = datetime.now(timezone.utc).isoformat()
        return JSONResponse(status_code=status_code, content=body.model_dump(exclude_none=True))

    @staticmethod
    async def lab_exception_handler(request: Request, exc: LabError) -> JSONResponse:
        logger.warning(f"{request.method} {request.url.path} -> {exc.error_code}: {exc.message}")
        return UnifiedErrorHandler.envelope(exc.message, exc.error_code, exc.status_code)

    @staticmethod
    async def http_exception_handler(request: Request, exc: HTTPException) -> JSONResponse:
        logger.warning(f"{request.method} {request.url.path} -> HTTP {exc.status_code}: {exc.detail}")
        code = HTTP_ERROR_CODES.get(exc.status_code, ErrorCodes.INTERNAL_SERVER_ERROR)
        return UnifiedErrorHandler.envelope(str(exc.detail), code, exc.status_code)

    @staticmethod
    async def validation_exception_handler(request: Request, exc: RequestValidationError) -> JSONResponse:
        problems = exc.errors()
        logger.warning(f"{request.method} {request.url.path} rejected: {problems}")
        if problems:
            first = problems[0]
            message = f"{first.get('msg', 'Invalid value')} (field '{_field_path(first.get('loc', ()))}')"
        else:
            message = "Invalid request"
        details = [
            {"field": _field_path(p.get("loc", ())), "type": p.get("type"), "message": p.get("msg")}
            for p in problems
        ]
        return UnifiedErrorHandler.envelope(message, ErrorCodes.VALIDATION_ERROR, 422, details)

    @staticmethod
    async def sqlalchemy_exception_handler(request: Request, exc: SQLAlchemyError) -> JSONResponse:
        logger.error(f"Run registry error on {request.url.path}: {exc}")
        message = str(exc) if _debug() else "Run registry operation failed"
        return UnifiedErrorHandler.envelope(message, ErrorCodes.DATABASE_ERROR, 500)

    @staticmethod
    async def general_exception_handler(request: Request, exc: Exception) -> JSONResponse:
        logger.error(f"Unhandled error on {request.url.path}: {exc}\n{traceback.format_exc()}")
        message = str(exc) if _debug() else "Internal server error"
        return UnifiedErrorHandler.envelope(message, ErrorCodes.INTERNAL_SERVER_ERROR, 500)

    @classmethod
    def install(cls, app: FastAPI) -> None:
        app.add_exception_handler(LabError, cls.lab_exception_handler)
        app.add_exception_handler(RequestValidationError, cls.validation_exception_handler)
        app.add_exception_handler(HTTPException, cls.http_exception_handler)
        app.add_exception_handler(SQLAlchemyError, cls.sqlalchemy_exception_handler)
        app.add_exception_handler(Exception, cls.general_exception_handler)
