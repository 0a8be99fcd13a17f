"""Deterministic sub-seed derivation so one root seed drives every stage."""

from __future__ import annotations

import numpy as np


def derive_seed(root: int, stream: int) -> int:
    """Stable per-stage child seed for a root seed; distinct streams give
    statistically independent generators."""
    ss = np.random.SeedSequence(entropy=root, spawn_key=(stream,))
    return int(ss.generate_state(1)[0])
