"""Deterministic random-number management with named substreams."""
from __future__ import annotations

import hashlib
import random


def derive_seed(root_seed: int, name: str) -> int:
    """Stable 64-bit seed for a named substream.

    Uses sha256 rather than hash() so results do not depend on
    PYTHONHASHSEED or the platform.
    """
    digest = hashlib.sha256(f"{root_seed}:{name}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


class StreamSet:
    """Independent named RNG substreams derived from one root seed.

    Each random mechanism (spawning, Aloha backoff, CSMA arbitration, ...)
    draws from its own stream, so changing how many numbers one mechanism
    consumes never perturbs the others.  This keeps A/B comparisons between
    protocols paired under a shared seed.
    """

    def __init__(self, root_seed: int):
        self.root_seed = root_seed
        self._streams: dict[str, random.Random] = {}

    def stream(self, name: str) -> random.Random:
        rng = self._streams.get(name)
        if rng is None:
            rng = random.Random(derive_seed(self.root_seed, name))
            self._streams[name] = rng
        return rng
