"""Lin similarity between vocabulary entries and the sparse class vectors."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterator, Mapping

import numpy as np

from .context import ContextStats, information
from .corpus import Vocabulary

DEFAULT_THRESHOLD = 0.01
DEFAULT_TOP_K = 200
EPSILON = 1e-12


class NoContextsError(ValueError):
    pass


class SimVector:
    """Immutable sparse vector over entry ids.

    Stored as parallel arrays sorted by id. Only strictly positive, finite
    scores are kept.
    """

    __slots__ = ("ids", "values")

    def __init__(self, ids=(), values=()):
        ids = np.asarray(ids, dtype=np.int64)
        values = np.asarray(values, dtype=np.float64)
        if ids.shape != values.shape or ids.ndim != 1:
            raise ValueError("ids and values must be 1-d arrays of equal length")
        if len(ids) > 1 and not np.all(ids[1:] > ids[:-1]):
            order = np.argsort(ids, kind="stable")
            ids, values = ids[order], values[order]
            if np.any(ids[1:] == ids[:-1]):
                raise ValueError("duplicate ids in SimVector")
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise ValueError("SimVector scores must be finite and > 0")
        ids.setflags(write=False)
        values.setflags(write=False)
        self.ids = ids
        self.values = values

    @classmethod
    def from_dict(cls, components: Mapping[int, float]) -> "SimVector":
        keys = sorted(components)
        return cls(keys, [components[k] for k in keys])

    def to_dict(self) -> dict[int, float]:
        return dict(zip(self.ids.tolist(), self.values.tolist()))

    def items(self) -> Iterator[tuple[int, float]]:
        return zip(self.ids.tolist(), self.values.tolist())

    def get(self, entry_id: int, default: float = 0.0) -> float:
        pos = np.searchsorted(self.ids, entry_id)
        if pos < len(self.ids) and self.ids[pos] == entry_id:
            return float(self.values[pos])
        return default

    def __getitem__(self, entry_id: int) -> float:
        return self.get(entry_id)

    def __contains__(self, entry_id: int) -> bool:
        return self.get(entry_id, -1.0) > 0

    def __len__(self) -> int:
        return len(self.ids)

    def __iter__(self):
        return iter(self.ids.tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimVector):
            return NotImplemented
        return np.array_equal(self.ids, other.ids) and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.ids.tobytes(), self.values.tobytes()))

    def __repr__(self) -> str:
        return f"SimVector({self.to_dict()!r})"

    def total(self) -> float:
        """Sequential sum of the components in id order."""
        s = 0.0
        for v in self.values.tolist():
            s += v
        return s

    def scaled(self, alpha: float) -> "SimVector":
        if alpha <= 0:
            return SimVector()
        return SimVector(self.ids, self.values * alpha)

    def ranked(self) -> list[tuple[int, float]]:
        """Components by descending score, ties by ascending id."""
        order = np.lexsort((self.ids, -self.values))
        return list(zip(self.ids[order].tolist(), self.values[order].tolist()))

    def pruned(self, top_k: int, epsilon: float = EPSILON) -> "SimVector":
        keep = self.values >= epsilon
        ids, values = self.ids[keep], self.values[keep]
        if len(ids) > top_k:
            order = np.lexsort((ids, -values))[:top_k]
            order.sort()
            ids, values = ids[order], values[order]
        return SimVector(ids, values)


def _require_contexts(stats: ContextStats, entry_id: int):
    support = stats.support(entry_id)
    if not support:
        raise NoContextsError(f"entry {entry_id} has no contexts")
    return support


def lin_similarity(stats: ContextStats, a: int, b: int) -> float:
    con_a = _require_contexts(stats, a)
    con_b = _require_contexts(stats, b)
    shared = con_a & con_b
    if not shared:
        return 0.0
    denom = information(stats, con_a) + information(stats, con_b)
    if denom == 0.0:
        return 0.0
    return min(1.0, 2.0 * information(stats, shared) / denom)


def _select(w: int, sims: Mapping[int, float], threshold: float, top_k: int) -> SimVector:
    chosen = [(b, s) for b, s in sims.items() if b != w and s > threshold]
    chosen.sort(key=lambda bs: (-bs[1], bs[0]))
    chosen = [(w, 1.0)] + chosen[: max(top_k - 1, 0)]
    return SimVector.from_dict(dict(chosen))


def class_vector(stats: ContextStats, vocab: Vocabulary, w: int,
                 threshold: float = DEFAULT_THRESHOLD, top_k: int = DEFAULT_TOP_K) -> SimVector:
    """Vector of Lin similarities from ``w`` to every entry scoring above ``threshold``.

    The self component is always present with score 1 and counts toward
    ``top_k``.
    """
    if not 0 <= threshold < 1:
        raise ValueError("threshold must lie in [0, 1)")
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    con_w = _require_contexts(stats, w)
    candidates = [b for b, feats in stats.contexts.items()
                  if b != w and not con_w.isdisjoint(feats)]
    sims = {b: lin_similarity(stats, w, b) for b in candidates}
    return _select(w, sims, threshold, top_k)


def build_all_class_vectors(stats: ContextStats, vocab: Vocabulary,
                            threshold: float = DEFAULT_THRESHOLD,
                            top_k: int = DEFAULT_TOP_K) -> dict[int, SimVector]:
    """Class vectors for every entry with contexts.

    Same values as calling :func:`class_vector` per entry, computed through an
    inverted feature index so only pairs sharing a context are visited.
    """
    if not 0 <= threshold < 1:
        raise ValueError("threshold must lie in [0, 1)")
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    finfo = {f: stats.feature_information(f) for f in stats.feature_totals}
    holders: dict = defaultdict(list)
    entry_info = {}
    for e in sorted(stats.contexts):
        total = 0.0
        for f in sorted(stats.contexts[e]):
            holders[f].append(e)
            total += finfo[f]
        entry_info[e] = total

    vectors = {}
    for a in sorted(stats.contexts):
        shared: dict[int, float] = {}
        for f in sorted(stats.contexts[a]):
            x = finfo[f]
            for b in holders[f]:
                shared[b] = shared.get(b, 0.0) + x
        sims = {}
        for b, inter in shared.items():
            denom = entry_info[a] + entry_info[b]
            sims[b] = 0.0 if denom == 0.0 else min(1.0, 2.0 * inter / denom)
        vectors[a] = _select(a, sims, threshold, top_k)
    return vectors


def format_vector(vector: SimVector, vocab: Vocabulary, head: int | None = None) -> str:
    """Render as ``word,score word,score ...`` in descending score order."""
    parts = []
    for k, v in vector.ranked()[:head]:
        name = vocab.canonical(k) if 1 <= k <= len(vocab) else "<unk>"
        parts.append(f"{name},{v:.2g}")
    return " ".join(parts)
