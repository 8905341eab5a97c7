"""Per-cell seed derivation.

A cell's seed is the first 8 bytes (big-endian) of the BLAKE2b digest of
``"<master>|<class>|<algorithm>|<repetition>"`` encoded as UTF-8, so any
single cell can be reproduced without running the others.
"""

from __future__ import annotations

import hashlib


def mix_seed(master: int, class_name: str, algorithm: str, repetition: int) -> int:
    text = f"{master}|{class_name}|{algorithm}|{repetition}".encode("utf-8")
    return int.from_bytes(hashlib.blake2b(text, digest_size=8).digest(), "big")
