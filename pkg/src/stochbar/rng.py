"""Deterministic random-stream derivation.

Every stochastic routine takes an explicit ``numpy.random.Generator``.
Parallel work units (one per input image, one per sweep point, ...) get
their own substream derived from ``(seed, *key)``, so results never depend
on scheduling order or worker count.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError


def substream(seed: int, *key: int) -> np.random.Generator:
    """Return a generator for the work unit identified by ``key``.

    The same ``(seed, key)`` always yields the same stream; distinct keys
    yield statistically independent streams (SeedSequence spawning rules).
    """
    parts = (seed, *key)
    if any(int(p) < 0 for p in parts):
        raise ConfigError(f"stream key parts must be non-negative, got {parts}")
    return np.random.default_rng(tuple(int(p) for p in parts))


def as_generator(seed_or_rng: int | np.random.Generator) -> np.random.Generator:
    # Accept either a raw seed or an existing generator (for stream reuse).
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return substream(int(seed_or_rng))
