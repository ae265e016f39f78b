"""Seeded random streams.

Every stochastic routine draws from ``stream(seed, index)``: a Philox
counter-based generator keyed through ``numpy``'s ``SeedSequence`` with the
index as spawn key. Instance ``i`` of an audit therefore sees the same numbers
no matter how many other instances run, or in what order.
"""

from __future__ import annotations

import numpy as np


def stream(seed: int, index: int = 0) -> np.random.Generator:
    seq = np.random.SeedSequence(int(seed) & (2**64 - 1), spawn_key=(int(index),))
    return np.random.Generator(np.random.Philox(seq))
