"""Seeded random streams.

All randomness in the package comes from numpy's PCG64 bit generator.
Independent streams (bootstrap replicas, repeated trials) are derived
from a master seed plus an integer key through ``SeedSequence`` spawn
keys, so a replica's draws do not depend on the order replicas run in.
"""

import numpy as np

DEFAULT_SEED = 20080417


def make_rng(seed, *keys):
    """Return a ``numpy.random.Generator`` for ``seed`` and optional sub-stream ``keys``."""
    if keys:
        ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    else:
        ss = np.random.SeedSequence(int(seed))
    return np.random.Generator(np.random.PCG64(ss))
