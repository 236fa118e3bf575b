"""Per-precision mpmath contexts.

Each precision gets its own ``MPContext`` whose precision is fixed at
creation, so no caller ever mutates global mpmath state.
"""

from __future__ import annotations

from functools import lru_cache

from mpmath.ctx_mp import MPContext

DEFAULT_DPS = 35


@lru_cache(maxsize=None)
def ctx(dps: int = DEFAULT_DPS) -> MPContext:
    c = MPContext()
    c.dps = int(dps)
    return c
