"""
Parameter-space sweeps
Evaluates every criterion and measure on an (r, p) grid and writes the
result as CSV. Rows are always emitted sorted by (r, p), also when the grid
is evaluated by several worker processes.
"""

import csv
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Iterable, List, NamedTuple, Optional, Sequence, Union

import numpy as np

from src.gaussian.criteria import ccnr, ppt, steerable
from src.gaussian.errors import DomainError
from src.gaussian.measures import eof, gaussian_discord, mutual_information
from src.gaussian.states import GIParams, properties
from src.settings import SWEEP_CONFIG, TOLERANCES

logger = logging.getLogger(__name__)

CSV_HEADER = [
    "r", "p", "nu", "nu_tilde", "purity", "S", "eof", "discord", "mutual_information",
    "ppt_entangled", "steerable", "ccnr_detects", "eof_exceeds_half_mi",
]


@dataclass(frozen=True)
class SweepRecord:
    r: float
    p: float
    nu: float
    nu_tilde: float
    purity: float
    S: float
    eof: float
    discord: float
    mutual_information: float
    ppt_entangled: bool
    steerable: bool
    ccnr_detects: bool
    eof_exceeds_half_mi: bool

    def csv_row(self) -> list:
        return [_format(value) for value in astuple(self)]


class BoundingBox(NamedTuple):
    r_min: float
    r_max: float
    p_min: float
    p_max: float
    count: int


def _format(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    return format(value, ".9g")


def evaluate_point(r: float, p: float) -> SweepRecord:
    """All grid quantities at one (r, p); matrix cross-checks are skipped for speed"""
    params = GIParams(r, p)
    props = properties(params)
    e = eof(params)
    mi = mutual_information(params)
    return SweepRecord(
        r=params.r,
        p=params.p,
        nu=props.nu,
        nu_tilde=props.nu_tilde,
        purity=props.purity,
        S=props.von_neumann,
        eof=e,
        discord=gaussian_discord(params),
        mutual_information=mi,
        ppt_entangled=ppt(params, cross_check=False).entangled,
        steerable=steerable(params, cross_check=False).steerable,
        ccnr_detects=ccnr(params).detected,
        eof_exceeds_half_mi=e - mi / 2.0 > TOLERANCES["boundary"],
    )


def _evaluate_row(r: float, p_values: Sequence[float]) -> List[SweepRecord]:
    return [evaluate_point(r, p) for p in p_values]


def grid(lo: float, hi: float, steps: int) -> np.ndarray:
    """Evenly spaced, duplicate-free grid including both ends"""
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    if hi < lo:
        raise DomainError(f"range [{lo}, {hi}] is empty")
    if steps == 1:
        return np.array([float(lo)])
    return np.unique(np.linspace(lo, hi, steps))


def run_sweep(
    r_values: Iterable[float],
    p_values: Iterable[float],
    workers: int = SWEEP_CONFIG["workers"],
) -> List[SweepRecord]:
    """
    Evaluate the full grid

    Args:
        r_values: Squeezing values (r >= 0)
        p_values: Mixing probabilities in [0, 1]
        workers: Process count; 1 evaluates in-process

    Returns:
        Records sorted by (r, p), one per distinct grid point
    """
    r_values = sorted({float(r) for r in r_values})
    p_values = sorted({float(p) for p in p_values})
    for r in r_values:
        GIParams(r, 0.0)
    for p in p_values:
        GIParams(0.0, p)

    if workers > 1 and len(r_values) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(_evaluate_row, r_values, [p_values] * len(r_values)))
    else:
        rows = [_evaluate_row(r, p_values) for r in r_values]

    records = sorted((rec for row in rows for rec in row), key=lambda rec: (rec.r, rec.p))
    logger.info("sweep evaluated %d points (%d r x %d p)", len(records), len(r_values), len(p_values))
    return records


def write_csv(records: Sequence[SweepRecord], path: Union[str, Path]):
    """Write records with the fixed header; raises OSError for unwritable paths"""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow(rec.csv_row())


def read_csv(path: Union[str, Path]) -> List[SweepRecord]:
    """Load records written by write_csv"""
    bool_fields = {f.name for f in fields(SweepRecord) if f.type in (bool, "bool")}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return [
            SweepRecord(**{
                key: (value == "1") if key in bool_fields else float(value)
                for key, value in row.items()
            })
            for row in reader
        ]


def bounding_box(records: Sequence[SweepRecord], field_name: str = "eof_exceeds_half_mi") -> Optional[BoundingBox]:
    """(r, p) bounding box of the rows where a boolean column is set"""
    hits = [rec for rec in records if getattr(rec, field_name)]
    if not hits:
        return None
    rs = [rec.r for rec in hits]
    ps = [rec.p for rec in hits]
    return BoundingBox(min(rs), max(rs), min(ps), max(ps), len(hits))


def boundary_profile(records: Sequence[SweepRecord], field_name: str = "ppt_entangled") -> dict:
    """Smallest p per r at which a boolean column switches on (inf when it never does)"""
    profile = {}
    for rec in records:
        if rec.r not in profile:
            profile[rec.r] = math.inf
        if getattr(rec, field_name):
            profile[rec.r] = min(profile[rec.r], rec.p)
    return profile
