"""Deterministic random substreams for replicated experiments.

Every generator in the simulation stack takes an explicit stream, and a
replication's streams are derived from (master_seed, replication index,
purpose tag) alone.  This makes experiment output a pure function of the
seed, independent of worker count and scheduling.
"""

import numpy as np

__all__ = ["substream", "FACTORS", "COV", "ERRORS", "BETAS", "ALPHA"]

# purpose tags; one stream per (replication, tag)
FACTORS = 0
COV = 1
ERRORS = 2
BETAS = 3
ALPHA = 4


def substream(master_seed: int, *path: int) -> np.random.Generator:
    """Independent generator keyed by a seed and an integer path."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(path))
    )
