"""Shared test helpers: reference simulators kept independent of the library."""

from __future__ import annotations

import numpy as np
import pytest


def reference_solo(z, q, phase=0):
    """Slot-by-slot greedy solo synthesis; the oracle for closed-form times."""
    t = 0
    i = 0
    while i < len(z):
        t += 1
        if z[i] == (phase + t - 1) % q:
            i += 1
    return t if len(z) else 0


def random_pair(rng: np.random.Generator, q: int, length: int):
    x = tuple(rng.integers(0, q, size=length).tolist())
    y = tuple(rng.integers(0, q, size=length).tolist())
    return x, y


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
