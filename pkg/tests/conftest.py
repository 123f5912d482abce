import pytest

from src.gaussian.fock import fock_gi, select_cutoff
from src.gaussian.states import GIParams


@pytest.fixture(scope="session")
def fock_point():
    """Cached fock_gi operators keyed by (r, p, cutoff)"""
    cache = {}

    def build(r, p, cutoff=None):
        cutoff = select_cutoff(r) if cutoff is None else cutoff
        key = (r, p, cutoff)
        if key not in cache:
            cache[key] = fock_gi(GIParams(r, p), cutoff)
        return cache[key]

    return build
