"""
Entanglement criteria endpoints (PPT, steering, CCNR)
"""
from fastapi import APIRouter, Query

from src.gaussian.reports import criteria_payload
from src.gaussian.states import GIParams

router = APIRouter(prefix="/criteria", tags=["criteria"])

@router.get("/")
def get_criteria(
    r: float = Query(..., ge=0),
    p: float = Query(..., ge=0, le=1)
):
    return criteria_payload(GIParams(r, p))
