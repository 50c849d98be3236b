"""The trained grammar: vocabulary, class vectors and pair table."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import cached_property

import numpy as np

from .context import count_contexts
from .corpus import Corpus, Vocabulary, build_vocabulary
from .pairs import PairTable, build_pair_table
from .similarity import DEFAULT_THRESHOLD, DEFAULT_TOP_K, SimVector, build_all_class_vectors


class OutOfVocabularyError(KeyError):
    pass


@dataclass(frozen=True)
class GrammarConfig:
    ngram_max: int = 3
    min_count: int = 2
    threshold_c: float = DEFAULT_THRESHOLD
    top_k: int = DEFAULT_TOP_K
    normalize: bool = False

    def __post_init__(self):
        if self.ngram_max < 1 or self.min_count < 1 or self.top_k < 1:
            raise ValueError("ngram_max, min_count and top_k must be >= 1")
        if not 0 <= self.threshold_c < 1:
            raise ValueError("threshold_c must lie in [0, 1)")

    def to_dict(self) -> dict:
        return asdict(self)


class Grammar:
    """Everything composition and parsing need, frozen after training.

    ``unk_id`` (``N + 1``) is reserved for out-of-vocabulary leaves. No pair
    involves it, so such leaves never contribute to a composition.
    """

    def __init__(self, config: GrammarConfig, vocab: Vocabulary,
                 class_vectors: dict[int, SimVector], pairs: PairTable,
                 context_summary: dict | None = None):
        self.config = config
        self.vocab = vocab
        self.class_vectors = class_vectors
        self.pairs = pairs
        self.context_summary = context_summary or {}

    @property
    def unk_id(self) -> int:
        return len(self.vocab) + 1

    def leaf_id(self, word: str) -> int:
        return self.vocab.word_id(word) or self.unk_id

    def entry_name(self, entry_id: int) -> str:
        if 1 <= entry_id <= len(self.vocab):
            return self.vocab.canonical(entry_id)
        return "<unk>"

    def with_mi_scaled(self, alpha: float) -> "Grammar":
        return Grammar(self.config, self.vocab, self.class_vectors,
                       self.pairs.scaled(alpha), self.context_summary)

    @cached_property
    def arrays(self) -> "_CompiledTables":
        return _CompiledTables(self)

    def __eq__(self, other):
        if not isinstance(other, Grammar):
            return NotImplemented
        return (self.config == other.config
                and self.vocab.token_strings == other.vocab.token_strings
                and self.vocab.entries == other.vocab.entries
                and self.class_vectors == other.class_vectors
                and self.pairs == other.pairs
                and self.context_summary == other.context_summary)


class _CompiledTables:
    """CSR-style arrays over the pair table and class vectors."""

    def __init__(self, grammar: Grammar):
        size = len(grammar.vocab) + 2  # ids 0..N plus the unk slot
        keys = sorted(grammar.pairs.delta)
        self.pair_left = np.array([p[0] for p in keys], dtype=np.int64)
        self.pair_right = np.array([p[1] for p in keys], dtype=np.int64)
        self.pair_target = np.array([grammar.pairs.delta[p] for p in keys], dtype=np.int64)
        self.pair_mi = np.array([grammar.pairs.mi[p] for p in keys], dtype=np.float64)
        self.left_ptr = np.searchsorted(self.pair_left, np.arange(size + 1)).astype(np.int64)

        lengths = np.zeros(size, dtype=np.int64)
        for k, vec in grammar.class_vectors.items():
            lengths[k] = len(vec)
        self.cv_ptr = np.concatenate([[0], np.cumsum(lengths)]).astype(np.int64)
        self.cv_ids = np.zeros(self.cv_ptr[-1], dtype=np.int64)
        self.cv_vals = np.zeros(self.cv_ptr[-1], dtype=np.float64)
        for k, vec in grammar.class_vectors.items():
            self.cv_ids[self.cv_ptr[k]:self.cv_ptr[k + 1]] = vec.ids
            self.cv_vals[self.cv_ptr[k]:self.cv_ptr[k + 1]] = vec.values
        self.size = size


def train(corpus: Corpus, config: GrammarConfig | None = None) -> Grammar:
    config = config or GrammarConfig()
    vocab = build_vocabulary(corpus, config.ngram_max, config.min_count)
    stats = count_contexts(corpus, vocab)
    vectors = build_all_class_vectors(stats, vocab, config.threshold_c, config.top_k)
    pairs = build_pair_table(corpus, vocab)
    summary = {
        "grand_total": stats.grand_total,
        "n_features": len(stats.feature_totals),
        "n_tokens": corpus.n_tokens,
        "n_sentences": len(corpus),
    }
    return Grammar(config, vocab, vectors, pairs, summary)
