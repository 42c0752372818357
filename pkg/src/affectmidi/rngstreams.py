"""Labeled deterministic random substreams.

Each consumer of randomness (chord choice, motives, licks, velocities,
soprano pitches, ...) draws from its own substream, derived from the session
seed and a stable label. Adding a new consumer never perturbs the draws of
existing ones, which keeps seeded output stable across code growth.
"""

from __future__ import annotations

import hashlib
import random

STREAM_VERSION = "v1"


def child_seed(seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{STREAM_VERSION}:{seed}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


class RngStreams:
    """Factory of independent `random.Random` substreams keyed by label."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._streams: dict[str, random.Random] = {}

    def stream(self, label: str) -> random.Random:
        if label not in self._streams:
            self._streams[label] = random.Random(child_seed(self.seed, label))
        return self._streams[label]
