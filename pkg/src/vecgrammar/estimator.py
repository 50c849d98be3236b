"""scikit-learn style front end for training and parsing."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .composer import ParseTree
from .corpus import Corpus, split_sentences, word_tokens
from .evaluation import bracket_f1
from .model import Grammar, GrammarConfig, train
from .parser import DEFAULT_BEAM, DEFAULT_MAX_EXACT_LEN, ParseOptions, ParseResult, parse_tokens
from .similarity import DEFAULT_THRESHOLD, DEFAULT_TOP_K


def check_documents(X) -> list[list[str]]:
    """Normalise training input to a list of token lists.

    Accepts a single string, an iterable of raw strings (split into
    sentences) or an iterable of token sequences.
    """
    if isinstance(X, str):
        X = [X]
    sentences = []
    for item in X:
        if isinstance(item, str):
            sentences.extend(split_sentences(item))
        else:
            tokens = [str(t) for t in item]
            if tokens:
                sentences.append(tokens)
    return sentences


def check_sentences(X) -> list[list[str]]:
    """Normalise parse input: one sentence per item, raw or pre-tokenized."""
    if isinstance(X, str):
        raise TypeError("expected an iterable of sentences, got a single string")
    out = []
    for item in X:
        tokens = word_tokens(item) if isinstance(item, str) else [str(t) for t in item]
        if not tokens:
            raise ValueError("empty input")
        out.append(tokens)
    return out


class VectorGrammarParser(BaseEstimator):
    """Unsupervised bracketing parser over word-association vectors.

    ``fit`` learns class vectors and the pair table from raw text,
    ``predict`` returns the best binary tree per sentence and ``transform``
    returns root vectors as rows of a sparse matrix.
    """

    def __init__(self, ngram_max=3, min_count=2, threshold_c=DEFAULT_THRESHOLD,
                 top_k=DEFAULT_TOP_K, normalize=False, beam_width=DEFAULT_BEAM,
                 max_exact_len=DEFAULT_MAX_EXACT_LEN, score_mode="sum"):
        self.ngram_max = ngram_max
        self.min_count = min_count
        self.threshold_c = threshold_c
        self.top_k = top_k
        self.normalize = normalize
        self.beam_width = beam_width
        self.max_exact_len = max_exact_len
        self.score_mode = score_mode

    def _grammar_config(self):
        return GrammarConfig(self.ngram_max, self.min_count, self.threshold_c,
                             self.top_k, self.normalize)

    def _parse_options(self):
        return ParseOptions(self.beam_width, self.max_exact_len, self.score_mode)

    @classmethod
    def from_grammar(cls, grammar: Grammar, **params) -> "VectorGrammarParser":
        est = cls(**{**grammar.config.to_dict(), **params})
        est.grammar_ = grammar
        est.n_entries_ = len(grammar.vocab)
        return est

    def fit(self, X, y=None):
        corpus = Corpus.from_token_lists(check_documents(X))
        self.grammar_ = train(corpus, self._grammar_config())
        self.n_entries_ = len(self.grammar_.vocab)
        return self

    def parse(self, X) -> list[ParseResult]:
        check_is_fitted(self, "grammar_")
        options = self._parse_options()
        return [parse_tokens(self.grammar_, s, options) for s in check_sentences(X)]

    def predict(self, X) -> list[ParseTree]:
        return [r.tree for r in self.parse(X)]

    def transform(self, X):
        results = self.parse(X)
        width = self.grammar_.unk_id + 1
        rows = np.repeat(np.arange(len(results)), [len(r.vector) for r in results])
        cols = np.concatenate([r.vector.ids for r in results]) if results else []
        vals = np.concatenate([r.vector.values for r in results]) if results else []
        return sp.csr_matrix((vals, (rows, cols)), shape=(len(results), width))

    def fit_predict(self, X, y=None):
        return self.fit(X).predict(X)

    def score(self, X, y) -> float:
        """Unlabeled bracket F1 of the predicted trees against gold trees ``y``."""
        return bracket_f1(self.predict(X), y).f1
