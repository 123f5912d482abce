"""
Runtime configuration
Values come from the environment (or a local .env file) with sensible defaults
"""

import os
from dotenv import load_dotenv

load_dotenv()


def _float(name: str, default: float) -> float:
    return float(os.getenv(name, default))


def _int(name: str, default: int) -> int:
    return int(os.getenv(name, default))


LOG_LEVEL = os.getenv("GI_LOG_LEVEL", "WARNING").upper()

# Numerical tolerances shared by every module
TOLERANCES = {
    "physical": 1e-9,
    "symmetric": 1e-12,
    "boundary": 1e-12,
    "singular": 1e-14,
}

# Truncated Fock-space engine
FOCK_CONFIG = {
    "cutoff": _int("GI_FOCK_CUTOFF", 40),
    "min_cutoff": 4,
    # N^4 tensor and N^2 x N^2 eigen-solves; 80 levels is already ~0.7 GB per operator
    "max_cutoff": _int("GI_FOCK_MAX_CUTOFF", 80),
    "tail_bound": _float("GI_TAIL_BOUND", 1e-8),
    "fourier_radius": _float("GI_FOURIER_RADIUS", 1.0),
    "fourier_samples": _int("GI_FOURIER_SAMPLES", 8),
    "extraction_tolerance": 1e-6,
    "holdout_points": _int("GI_HOLDOUT_POINTS", 6),
    "holdout_radius": 0.5,
    "holdout_seed": 20240611,
    "quadrature_nodes": _int("GI_QUADRATURE_NODES", 60),
    "trace_tolerance": 1e-6,
}

# Parameter sweeps
SWEEP_CONFIG = {
    "workers": _int("GI_SWEEP_WORKERS", 1),
    "r_min": 0.0,
    "r_max": 2.0,
    "p_min": 0.0,
    "p_max": 1.0,
    "steps": 101,
}

API_CONFIG = {
    "title": "Gaussian Isotropic State API",
    "version": "1.0.0",
    "allowed_origins": [
        origin.strip()
        for origin in os.getenv(
            "GI_API_ORIGINS", "http://localhost:3000,http://localhost:5173"
        ).split(",")
        if origin.strip()
    ],
}
