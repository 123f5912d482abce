"""
Correlation measure endpoints (EOF, Gaussian discord, mutual information)
"""
from fastapi import APIRouter, Query

from src.gaussian.reports import measures_payload
from src.gaussian.states import GIParams

router = APIRouter(prefix="/measures", tags=["measures"])

@router.get("/")
def get_measures(
    r: float = Query(..., ge=0),
    p: float = Query(..., ge=0, le=1),
    bits: bool = False
):
    """All measures at one point, in nats unless bits=true"""
    return measures_payload(GIParams(r, p), bits=bits)
