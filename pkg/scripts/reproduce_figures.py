#!/usr/bin/env python3
"""
Generate the datasets behind the standard plots of the isotropic state
- criteria.csv        full sweep (PPT / steering / CCNR regions, discord heatmap)
- eof_surface.csv     r, p, eof
- scan_r<r>.csv       eof and discord along p at fixed r
- eof_vs_half_mi.csv  eof against half the mutual information
"""
import argparse
import csv
import os
import sys

# Add project paths
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from src.gaussian.measures import eof, gaussian_discord
from src.gaussian.states import GIParams
from src.gaussian.sweep import bounding_box, grid, run_sweep, write_csv
from src.settings import SWEEP_CONFIG

SCAN_RADII = [0.5, 1.0]
SCAN_POINTS = 200


def _write(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([[format(v, ".9g") for v in row] for row in rows])
    print(f"  ✓ {path} ({len(rows)} rows)", flush=True)


def reproduce(out_dir, steps=SWEEP_CONFIG["steps"], workers=SWEEP_CONFIG["workers"]):
    """
    Write every dataset into out_dir

    Returns:
        Bounding box of the region where the EOF exceeds half the mutual information
    """
    os.makedirs(out_dir, exist_ok=True)
    print("=" * 60, flush=True)
    print(f"Sweeping {steps} x {steps} grid over r in [0, 2], p in [0, 1]", flush=True)
    print("=" * 60, flush=True)

    records = run_sweep(grid(0.0, 2.0, steps), grid(0.0, 1.0, steps), workers=workers)
    write_csv(records, os.path.join(out_dir, "criteria.csv"))
    print(f"  ✓ {os.path.join(out_dir, 'criteria.csv')} ({len(records)} rows)", flush=True)

    _write(os.path.join(out_dir, "eof_surface.csv"), ["r", "p", "eof"],
           [(rec.r, rec.p, rec.eof) for rec in records])
    _write(os.path.join(out_dir, "eof_vs_half_mi.csv"), ["r", "p", "eof", "half_mutual_information"],
           [(rec.r, rec.p, rec.eof, rec.mutual_information / 2.0) for rec in records])

    for r in SCAN_RADII:
        rows = []
        for p in grid(0.0, 1.0, SCAN_POINTS):
            params = GIParams(r, p)
            rows.append((p, eof(params), gaussian_discord(params)))
        _write(os.path.join(out_dir, f"scan_r{r:g}.csv"), ["p", "eof", "discord"], rows)

    box = bounding_box(records, "eof_exceeds_half_mi")
    print("=" * 60, flush=True)
    if box is None:
        print("EOF never exceeds I_M/2 on this grid", flush=True)
    else:
        print(f"EOF > I_M/2: r in [{box.r_min:.4f}, {box.r_max:.4f}], "
              f"p in [{box.p_min:.4f}, {box.p_max:.4f}] ({box.count} points)", flush=True)
    return box


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    parser.add_argument("--out-dir", default="figures_data")
    parser.add_argument("--steps", type=int, default=SWEEP_CONFIG["steps"])
    parser.add_argument("--workers", type=int, default=SWEEP_CONFIG["workers"])
    args = parser.parse_args(argv)

    try:
        reproduce(args.out_dir, steps=args.steps, workers=args.workers)
    except Exception as e:
        print(f"ERROR: {e}", flush=True)
        raise
    return 0


if __name__ == "__main__":
    sys.exit(main())
