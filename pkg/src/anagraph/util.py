"""Seed derivation and small shared helpers."""
from __future__ import annotations

import hashlib
import os

_MASK64 = (1 << 64) - 1

BUDGET_ENV_VAR = "ANAGRAPH_BUDGET"


def derive_seed(*parts) -> int:
    """Derive an independent 63-bit seed from a root seed plus labels.

    Every randomized component draws its own stream this way, so a single
    top-level seed reproduces a whole multi-stage run and changing one
    component's label leaves the others untouched.
    """
    text = ":".join(repr(p) for p in parts)
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big") >> 1


def splitmix64(x: int) -> int:
    """Cheap stateless 64-bit mixer; used for per-vertex lazy colorings."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def env_budget():
    """Budget override from ANAGRAPH_BUDGET, or None when unset."""
    raw = os.environ.get(BUDGET_ENV_VAR)
    return None if raw is None else int(float(raw))


def default_budget(fallback: int) -> int:
    """Step budget for bounded searches, overridable via ANAGRAPH_BUDGET."""
    override = env_budget()
    return fallback if override is None else override
