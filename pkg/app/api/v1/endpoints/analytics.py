from typing import Dict

from fastapi import APIRouter, Query, status

from analytics.formulas import MEASUREMENT_RATES, estimate_success, gammas_from_budget, key_generation_time
from schemas.analytics import LinkBudget, LinkGains, SuccessEstimate, SuccessRequest
from schemas.response import SuccessResponse

router = APIRouter()


@router.post(
    "/success-probability",
    response_model=SuccessResponse[SuccessEstimate],
    status_code=status.HTTP_200_OK,
    summary="Transmission success probability",
    description="Closed-form and approximate success probability against the RACS attacker, "
                "plus throughput when k_t is given.",
    responses={
        200: {
            "description": "Estimate computed",
            "content": {
                "application/json": {
                    "example": {
                        "success": True,
                        "message": "OK",
                        "data": {
                            "closed_form": 0.5897,
                            "approximation": 0.5897,
                            "throughput": 1.1794,
                            "phi": 1.0016,
                            "code_count": 7,
                        },
                    }
                }
            }
        }
    }
)
async def success_probability(request: SuccessRequest) -> SuccessResponse[SuccessEstimate]:
    """
    Evaluate the success probability for one (k_r, L, gamma_th) point.
    Lab errors (e.g. gamma_ab out of domain) surface through the unified
    error envelope.
    """
    estimate = estimate_success(request, request.gamma_ab, request.gamma_eb, request.rate)
    return SuccessResponse(data=estimate, message="OK")


@router.post(
    "/link-budget",
    response_model=SuccessResponse[LinkGains],
    summary="Linear SNRs from a link budget",
)
async def link_budget(budget: LinkBudget) -> SuccessResponse[LinkGains]:
    gamma_ab, gamma_eb = gammas_from_budget(budget)
    return SuccessResponse(data=LinkGains(gamma_ab=gamma_ab, gamma_eb=gamma_eb), message="OK")


@router.get(
    "/key-generation-time",
    response_model=SuccessResponse[Dict[str, float]],
    summary="Seconds to generate k_t key bits per measurement type",
)
async def key_generation_times(
    k_t: int = Query(..., ge=1, le=256, description="Key bits per transmission"),
) -> SuccessResponse[Dict[str, float]]:
    times = {name: key_generation_time(k_t, rate) for name, rate in MEASUREMENT_RATES.items()}
    return SuccessResponse(data=times, message="OK")
