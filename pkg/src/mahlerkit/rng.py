"""Deterministic seed derivation for shardable experiments.

Every experiment cell derives its own Random from (master seed, tags), so
worker partitioning can never change the sampled values and reruns are
byte-identical.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(master: int, *tags) -> int:
    text = f"{master}|" + "|".join(str(t) for t in tags)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:16], "big")


def derive_rng(master: int, *tags) -> random.Random:
    return random.Random(derive_seed(master, *tags))
