import math
import time

import numpy as np
from pytest import approx, raises

from src.gaussian.errors import DomainError
from src.gaussian.sweep import (
    CSV_HEADER,
    bounding_box,
    boundary_profile,
    evaluate_point,
    grid,
    read_csv,
    run_sweep,
    write_csv,
)
from src.gaussian.criteria import steering_threshold


def test_small_grid_rows_are_sorted_and_unique():
    records = run_sweep([2, 0, 1], [1, 0, 0.5, 0.5])
    assert [(rec.r, rec.p) for rec in records] == [(r, p) for r in (0, 1, 2) for p in (0, 0.5, 1)]
    row = next(rec for rec in records if (rec.r, rec.p) == (0, 0.5))
    assert row.eof == 0 and row.discord == approx(0, abs=1e-12)
    assert not row.ppt_entangled


def test_csv_format(tmp_path):
    path = tmp_path / "grid.csv"
    write_csv(run_sweep(grid(0, 2, 3), grid(0, 1, 3)), path)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[0] == "r,p,nu,nu_tilde,purity,S,eof,discord,mutual_information,ppt_entangled,steerable,ccnr_detects,eof_exceeds_half_mi"
    assert len(lines) == 10
    fields = lines[-1].split(",")
    assert fields[:2] == ["2", "1"]
    assert fields[9:] == ["1", "1", "1", "0"]
    assert fields[2] == format(evaluate_point(2.0, 1.0).nu, ".9g")


def test_csv_round_trip_and_determinism(tmp_path):
    r_values, p_values = grid(0, 2, 15), grid(0, 1, 15)
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(run_sweep(r_values, p_values), first)
    write_csv(run_sweep(r_values, p_values, workers=2), second)
    assert first.read_bytes() == second.read_bytes()
    records = read_csv(first)
    assert len(records) == 225
    assert records[17].ppt_entangled == evaluate_point(records[17].r, records[17].p).ppt_entangled


def test_ppt_boundary_follows_tanh_on_a_fine_grid():
    start = time.perf_counter()
    r_values = grid(0.01, 2, 200)
    p_values = grid(0, 1, 200)
    records = run_sweep(r_values, p_values)
    assert time.perf_counter() - start < 5
    cell = p_values[1] - p_values[0]
    for r, p_first in boundary_profile(records, "ppt_entangled").items():
        if math.tanh(r) < 1 - cell:
            assert abs(p_first - math.tanh(r)) <= cell + 1e-12


def test_steering_and_ccnr_inside_ppt_on_the_sweep():
    records = run_sweep(grid(0.02, 2, 60), grid(0, 1, 60))
    for rec in records:
        if rec.steerable or rec.ccnr_detects:
            assert rec.ppt_entangled
    profile = boundary_profile(records, "steerable")
    for r, p_first in profile.items():
        if p_first < math.inf:
            assert p_first >= steering_threshold(r) - 1e-12


def test_eof_exceeds_half_mi_region_is_found():
    records = run_sweep(grid(0, 2, 101), grid(0, 1, 101))
    box = bounding_box(records, "eof_exceeds_half_mi")
    assert box is not None
    assert box.count >= 1
    assert box.p_max < 1.0
    assert all(rec.ppt_entangled for rec in records if rec.eof_exceeds_half_mi)
    assert box.r_min <= 1.5 and box.r_max >= 0.5


def test_bounding_box_of_nothing():
    assert bounding_box(run_sweep([0.0], [0.0, 1.0]), "steerable") is None


def test_grid_validation():
    assert grid(0.5, 0.5, 1).tolist() == [0.5]
    assert np.allclose(grid(0, 1, 5), [0, 0.25, 0.5, 0.75, 1])
    with raises(DomainError):
        grid(0, 1, 0)
    with raises(DomainError):
        grid(1, 0, 3)
    with raises(DomainError):
        run_sweep([-1.0], [0.5])
