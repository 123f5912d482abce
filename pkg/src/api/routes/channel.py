"""
Choi-isomorphic channel endpoint
"""
from typing import Optional

from fastapi import APIRouter, HTTPException, Query

from src.gaussian.channel import InputKind
from src.gaussian.reports import channel_payload
from src.gaussian.states import GIParams

router = APIRouter(prefix="/channel", tags=["channel"])

@router.get("/")
def get_channel_output(
    r: float = Query(..., ge=0),
    p: float = Query(..., ge=0, le=1),
    input: InputKind = InputKind.COHERENT,
    nbar: Optional[float] = Query(None, ge=0),
    squeezing: Optional[float] = None
):
    """Send a coherent, thermal or squeezed single-mode input through the channel"""
    if input is InputKind.THERMAL and nbar is None:
        raise HTTPException(status_code=422, detail="thermal input needs nbar")
    if input is InputKind.SQUEEZED and squeezing is None:
        raise HTTPException(status_code=422, detail="squeezed input needs squeezing")
    return channel_payload(GIParams(r, p), input, nbar=nbar, squeezing=squeezing)
