"""Ordered-pair map onto vocabulary entries, weighted by clamped PMI."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .corpus import Corpus, Vocabulary

Pair = tuple[int, int]


@dataclass
class PairTable:
    """``delta[(i, j)] = k`` when entry ``k`` is the concatenation of ``i`` and ``j``.

    ``mi`` carries a weight for exactly the keys of ``delta``.
    """

    delta: dict[Pair, int] = field(default_factory=dict)
    mi: dict[Pair, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.delta.keys() != self.mi.keys():
            raise ValueError("delta and mi must share the same keys")
        for pair, w in self.mi.items():
            if not (w >= 0 and math.isfinite(w)):
                raise ValueError(f"invalid MI weight {w!r} for pair {pair}")

    def __len__(self):
        return len(self.delta)

    def scaled(self, alpha: float) -> "PairTable":
        return PairTable(dict(self.delta), {p: w * alpha for p, w in self.mi.items()})


def pmi(joint_count: int, left_count: int, right_count: int, n_tokens: int) -> float:
    """Pointwise mutual information in bits, clamped at zero."""
    p_joint = joint_count / n_tokens
    p_left = left_count / n_tokens
    p_right = right_count / n_tokens
    return max(0.0, math.log2(p_joint / (p_left * p_right)))


def build_pair_table(corpus: Corpus, vocab: Vocabulary) -> PairTable:
    n_tokens = corpus.n_tokens
    delta: dict[Pair, int] = {}
    mi: dict[Pair, float] = {}
    for entry in vocab.entries:
        toks = entry.tokens
        for cut in range(1, len(toks)):
            i = vocab.by_tokens.get(toks[:cut])
            j = vocab.by_tokens.get(toks[cut:])
            if i is None or j is None:
                continue
            delta[(i, j)] = entry.id
            mi[(i, j)] = pmi(entry.count, vocab[i].count, vocab[j].count, n_tokens)
    keys = sorted(delta)
    return PairTable({p: delta[p] for p in keys}, {p: mi[p] for p in keys})


def lookup(table: PairTable, i: int, j: int) -> tuple[int, float]:
    k = table.delta.get((i, j), 0)
    if not k:
        return 0, 0.0
    return k, table.mi[(i, j)]
