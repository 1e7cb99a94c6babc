"""Shared fixtures: precision contexts and deterministic tau sampling."""

import random

import pytest
from hypothesis import HealthCheck, settings
from mpmath import mpc

from modpi.numerics import PrecisionContext

settings.register_profile(
    "modpi",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("modpi")


@pytest.fixture(scope="session")
def ctx60():
    return PrecisionContext(60)


@pytest.fixture(scope="session")
def ctx80():
    return PrecisionContext(80)


def make_tau_samples(seed, count, im_lo=0.85, im_hi=1.6, re_half=0.45):
    """Seeded points in the upper half plane, high enough for q-expansions
    and low enough that the hauptmodul stays well inside the unit disk."""
    rng = random.Random(seed)
    return [mpc(rng.uniform(-re_half, re_half), rng.uniform(im_lo, im_hi))
            for _ in range(count)]


@pytest.fixture(scope="session")
def tau_samples():
    return make_tau_samples
