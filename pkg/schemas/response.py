"""
Response envelope shared by every API endpoint, plus the lab's error codes.
"""
import math
from typing import Any, Dict, Generic, List, Optional, TypeVar

from pydantic import BaseModel, Field

T = TypeVar("T")


class BaseResponse(BaseModel, Generic[T]):
    success: bool = Field(..., description="Whether the request was served")
    message: str = Field(..., description="Human readable status")
    data: Optional[T] = Field(None, description="Payload")
    error_code: Optional[str] = Field(None, description="One of ErrorCodes on failure")
    errors: Optional[List[Dict[str, Any]]] = Field(None, description="Per-field problems, debug only")
    timestamp: Optional[str] = Field(None, description="UTC time the error was produced")


class SuccessResponse(BaseResponse[T]):
    success: bool = True
    message: str = "OK"

    def __init__(self, data: T = None, message: str = "OK", **kwargs):
        super().__init__(data=data, message=message, **kwargs)


class ErrorResponse(BaseResponse[None]):
    success: bool = False

    def __init__(self, message: str, error_code: Optional[str] = None, errors=None, **kwargs):
        super().__init__(message=message, error_code=error_code, errors=errors, **kwargs)


class Page(BaseModel, Generic[T]):
    """
    One page of registry rows, newest first.
    """
    items: List[T]
    total: int = Field(..., ge=0)
    page: int = Field(..., ge=1)
    size: int = Field(..., ge=1)
    pages: int = Field(..., ge=1)


def create_list_response(items: List[Any], total: int, page: int = 1, size: int = 20) -> SuccessResponse[Page]:
    pages = max(1, math.ceil(total / size))
    return SuccessResponse(
        data=Page(items=items, total=total, page=page, size=size, pages=pages),
        message=f"{len(items)} of {total} runs",
    )


class ErrorCodes:
    # input
    VALIDATION_ERROR = "VALIDATION_ERROR"
    DOMAIN_ERROR = "DOMAIN_ERROR"
    UNSUPPORTED_PARAMETERS = "UNSUPPORTED_PARAMETERS"
    CONFIGURATION_ERROR = "CONFIGURATION_ERROR"

    # seed generator state
    RESEED_REFUSED = "RESEED_REFUSED"
    NOT_SEEDED = "NOT_SEEDED"

    # secure sketch recovery
    DECODE_FAILURE = "DECODE_FAILURE"
    HASH_MISMATCH = "HASH_MISMATCH"
    EMPTY_INTERSECTION = "EMPTY_INTERSECTION"

    RESOURCE_LIMIT = "RESOURCE_LIMIT"
    RESOURCE_NOT_FOUND = "RESOURCE_NOT_FOUND"

    IO_ERROR = "IO_ERROR"
    DATABASE_ERROR = "DATABASE_ERROR"
    INTERNAL_SERVER_ERROR = "INTERNAL_SERVER_ERROR"
    LAB_ERROR = "LAB_ERROR"
