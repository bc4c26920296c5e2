"""Literature QA store with exact nearest-neighbor retrieval.

Question embeddings live in one float64 matrix; a search embeds the
query, takes squared L2 distances against every row in a single numpy
pass, and returns the k smallest with ties broken by lower pair id.
At corpus scale (about a thousand pairs) the full scan is exact and
effectively free, so there is no approximate index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .embedding import DEFAULT_DIM, embed
from .records import FileUnreadableError


class DuplicateIdError(ValueError):
    pass


class DimensionMismatchError(ValueError):
    pass


class MalformedPair(ValueError):
    def __init__(self, index: int, reason: str):
        self.index = index
        self.reason = reason
        super().__init__(f"pair {index}: {reason}")


@dataclass(frozen=True)
class QAPair:
    id: int
    question: str
    answer: str
    title: str
    doi: str


@dataclass(frozen=True)
class RetrievalHit:
    pair: QAPair
    distance: float


def _check_pair(pair: QAPair, index: int) -> None:
    if not isinstance(pair.id, int) or isinstance(pair.id, bool):
        raise MalformedPair(index, "id must be an integer")
    for name in ("question", "answer", "doi"):
        value = getattr(pair, name)
        if not isinstance(value, str) or not value.strip():
            raise MalformedPair(index, f"{name} must be non-empty text")
    if not isinstance(pair.title, str):
        raise MalformedPair(index, "title must be text")


class VectorIndex:
    """Append-only store of (embedding, QAPair) rows, searched exactly."""

    def __init__(self, dim: int = DEFAULT_DIM, embed_fn=None):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim
        self._embed = embed_fn or embed
        self._vectors = np.empty((0, dim), dtype=np.float64)
        self._pairs: list[QAPair] = []
        self._ids: set[int] = set()

    def __len__(self) -> int:
        return len(self._pairs)

    @property
    def pairs(self) -> list[QAPair]:
        return list(self._pairs)

    @property
    def vectors(self) -> np.ndarray:
        return self._vectors

    def add(self, pair: QAPair, vector: np.ndarray | None = None) -> None:
        _check_pair(pair, len(self._pairs))
        if pair.id in self._ids:
            raise DuplicateIdError(f"pair id {pair.id} already indexed")
        if vector is None:
            vector = self._embed(pair.question, self.dim)
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != (self.dim,):
            raise DimensionMismatchError(
                f"expected dimension {self.dim}, got {vector.shape}"
            )
        self._vectors = np.vstack([self._vectors, vector[None, :]])
        self._pairs.append(pair)
        self._ids.add(pair.id)

    def search(self, query: str, k: int = 3) -> list[RetrievalHit]:
        if k < 0:
            raise ValueError("k must be non-negative")
        q = self._embed(query, self.dim)
        if k == 0 or not self._pairs:
            return []
        dists = np.square(self._vectors - q).sum(axis=1)
        order = sorted(range(len(self._pairs)), key=lambda i: (dists[i], self._pairs[i].id))
        return [
            RetrievalHit(pair=self._pairs[i], distance=float(dists[i]))
            for i in order[:k]
        ]


def build_index(pairs: list[QAPair], dim: int = DEFAULT_DIM, embed_fn=None) -> VectorIndex:
    ix = VectorIndex(dim=dim, embed_fn=embed_fn)
    for pair in pairs:
        ix.add(pair)
    return ix


def _pair_from_obj(obj, index: int, fallback_id: int) -> QAPair:
    if not isinstance(obj, dict):
        raise MalformedPair(index, "entry must be an object")
    known = {"id", "question", "answer", "title", "doi"}
    extra = set(obj) - known
    if extra:
        raise MalformedPair(index, f"unknown fields: {sorted(extra)}")
    pair = QAPair(
        id=obj.get("id", fallback_id),
        question=obj.get("question", ""),
        answer=obj.get("answer", ""),
        title=obj.get("title", ""),
        doi=obj.get("doi", ""),
    )
    _check_pair(pair, index)
    return pair


def load_pairs(path: str | Path) -> list[QAPair]:
    """Read a QA-pairs file: a JSON array of question/answer/title/doi
    objects.  Entries without an explicit id get their array position."""
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadableError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedPair(0, f"not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise MalformedPair(0, "top level must be an array")
    pairs = []
    seen: set[int] = set()
    for i, obj in enumerate(data):
        pair = _pair_from_obj(obj, i, fallback_id=i)
        if pair.id in seen:
            raise MalformedPair(i, f"duplicate id {pair.id}")
        seen.add(pair.id)
        pairs.append(pair)
    return pairs


def save_pairs(pairs: list[QAPair], path: str | Path) -> None:
    data = [
        {"id": p.id, "question": p.question, "answer": p.answer,
         "title": p.title, "doi": p.doi}
        for p in pairs
    ]
    Path(path).write_text(
        json.dumps(data, ensure_ascii=False, indent=1, sort_keys=True) + "\n",
        encoding="utf-8",
    )


INDEX_FORMAT = "topochat-index"
INDEX_VERSION = 1


def save_index(ix: VectorIndex, path: str | Path) -> None:
    doc = {
        "format": INDEX_FORMAT,
        "version": INDEX_VERSION,
        "dim": ix.dim,
        "entries": [
            {
                "pair": {"id": p.id, "question": p.question, "answer": p.answer,
                         "title": p.title, "doi": p.doi},
                "vector": [float(x) for x in ix.vectors[i]],
            }
            for i, p in enumerate(ix.pairs)
        ],
    }
    Path(path).write_text(json.dumps(doc, sort_keys=True) + "\n", encoding="utf-8")


def load_index(path: str | Path, embed_fn=None) -> VectorIndex:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileUnreadableError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise FileUnreadableError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != INDEX_FORMAT:
        raise FileUnreadableError(f"{path} is not an index snapshot")
    if doc.get("version") != INDEX_VERSION:
        raise FileUnreadableError(f"unsupported index version {doc.get('version')!r}")
    ix = VectorIndex(dim=int(doc["dim"]), embed_fn=embed_fn)
    for i, entry in enumerate(doc.get("entries", [])):
        pair = _pair_from_obj(entry["pair"], i, fallback_id=i)
        ix.add(pair, vector=np.asarray(entry["vector"], dtype=np.float64))
    return ix
