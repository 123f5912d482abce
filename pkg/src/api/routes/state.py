"""
State endpoints: covariance matrix, symplectic spectrum and entropies
"""
from fastapi import APIRouter, Query

from src.gaussian.reports import state_payload
from src.gaussian.states import GIParams

router = APIRouter(prefix="/state", tags=["state"])

@router.get("/")
def get_state(
    r: float = Query(..., ge=0, description="Squeezing parameter"),
    p: float = Query(..., ge=0, le=1, description="Mixing probability"),
    bits: bool = False
):
    """CM and scalar properties of gamma_GI(r, p)"""
    return state_payload(GIParams(r, p), bits=bits)
