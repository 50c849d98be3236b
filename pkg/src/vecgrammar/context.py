"""Triplet context counts and the information of a set of contexts.

A context of an entry is the ordered pair of tokens flanking one of its
occurrences. ``I(S)`` for a set of contexts is ``sum(-log2 P(f))`` with
``P(f)`` the maximum-likelihood probability of feature ``f`` over every
counted (entry, context) occurrence.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .corpus import Corpus, Vocabulary

ContextFeature = tuple[int, int]


class UnknownFeatureError(KeyError):
    pass


@dataclass
class ContextStats:
    contexts: dict[int, dict[ContextFeature, int]] = field(default_factory=dict)
    feature_totals: dict[ContextFeature, int] = field(default_factory=dict)
    grand_total: int = 0

    def support(self, entry_id: int) -> frozenset[ContextFeature]:
        return frozenset(self.contexts.get(entry_id, ()))

    def feature_information(self, f: ContextFeature) -> float:
        return -math.log2(feature_probability(self, f))


def count_contexts(corpus: Corpus, vocab: Vocabulary) -> ContextStats:
    contexts: dict[int, dict[ContextFeature, int]] = defaultdict(lambda: defaultdict(int))
    max_n = vocab.ngram_max
    for sent in corpus.sentences:
        # positions 1..len-2 hold real tokens; sentinels only ever flank
        for start in range(1, len(sent) - 1):
            for n in range(1, max_n + 1):
                stop = start + n
                if stop > len(sent) - 1:
                    break
                entry_id = vocab.by_tokens.get(sent[start:stop])
                if entry_id is None:
                    # longer n-grams containing an unkept prefix may still be kept
                    continue
                contexts[entry_id][(sent[start - 1], sent[stop])] += 1

    stats = ContextStats()
    totals: dict[ContextFeature, int] = defaultdict(int)
    for entry_id in sorted(contexts):
        feats = contexts[entry_id]
        stats.contexts[entry_id] = {f: feats[f] for f in sorted(feats)}
        for f, c in feats.items():
            totals[f] += c
    stats.feature_totals = {f: totals[f] for f in sorted(totals)}
    stats.grand_total = sum(stats.feature_totals.values())
    return stats


def feature_probability(stats: ContextStats, f: ContextFeature) -> float:
    try:
        count = stats.feature_totals[f]
    except KeyError:
        raise UnknownFeatureError(f"unknown feature {f!r}") from None
    return count / stats.grand_total


def information(stats: ContextStats, features: Iterable[ContextFeature]) -> float:
    # plain sequential sum in sorted order; the bulk similarity pass relies on
    # reproducing it bit for bit
    total = 0.0
    for f in sorted(set(features)):
        total += stats.feature_information(f)
    return total
