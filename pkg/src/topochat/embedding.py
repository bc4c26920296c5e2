"""Deterministic text embedding by signed feature hashing.

Tokens are hashed into a fixed number of buckets with a sign bit, the
bucket counts are accumulated, and the vector is L2-normalized.  The
same text always embeds to the identical vector, which the retrieval
and dedup tests rely on.
"""

from __future__ import annotations

import hashlib
import re

import numpy as np

DEFAULT_DIM = 256

_SPLIT = re.compile(r"[^0-9a-z]+")


class EmptyText(ValueError):
    pass


def _tokens(text: str) -> list[str]:
    return [t for t in _SPLIT.split(text.lower()) if t]


def embed(text: str, dim: int = DEFAULT_DIM) -> np.ndarray:
    """Embed text as a unit-norm float64 vector of length dim."""
    if not text or not text.strip():
        raise EmptyText("cannot embed empty text")
    if dim < 1:
        raise ValueError("dim must be positive")
    tokens = _tokens(text)
    if not tokens:
        # all-punctuation input: hash the trimmed text as one token
        tokens = [text.strip().lower()]
    vec = np.zeros(dim, dtype=np.float64)
    for token in tokens:
        h = int.from_bytes(
            hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest(), "big"
        )
        sign = 1.0 if (h >> 63) & 1 == 0 else -1.0
        vec[h % dim] += sign
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        # opposite-signed tokens can cancel exactly; pin a unit axis
        vec[0] = 1.0
        return vec
    return vec / norm


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))
