"""Bracketing search: choose the binary tree whose root vector scores highest.

Ties are broken toward the tree with the larger left constituent at the
root, then recursively in the children, so a model that scores every tree
equally returns the fully left-branching tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .composer import Leaf, Node, ParseTree, compose, leaf_vector
from .corpus import word_tokens
from .model import Grammar
from .similarity import SimVector

DEFAULT_BEAM = 4
DEFAULT_MAX_EXACT_LEN = 10
SCORE_MODES = ("sum", "concentration")


@dataclass(frozen=True)
class ParseOptions:
    beam_width: int = DEFAULT_BEAM
    max_exact_len: int = DEFAULT_MAX_EXACT_LEN
    score_mode: str = "sum"

    def __post_init__(self):
        if self.beam_width < 1:
            raise ValueError("beam_width must be >= 1")
        if self.score_mode not in SCORE_MODES:
            raise ValueError(f"score_mode must be one of {SCORE_MODES}")


@dataclass(frozen=True)
class ParseResult:
    tree: ParseTree
    score: float
    vector: SimVector
    method: str

    def bracketed(self) -> str:
        return self.tree.bracketed()


@dataclass(frozen=True)
class _Candidate:
    tree: ParseTree
    vector: SimVector
    score: float
    tiekey: tuple

    @property
    def rank(self):
        return (-self.score, self.tiekey)


def score(v: SimVector, mode: str = "sum") -> float:
    total = v.total()
    if mode == "concentration":
        return total / len(v) if len(v) else 0.0
    return total


def catalan(n: int) -> int:
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


def _leaves(grammar: Grammar, tokens: Sequence[int], words: Sequence[str] | None):
    if words is None:
        words = [grammar.entry_name(t) for t in tokens]
    return [Leaf(t, w) for t, w in zip(tokens, words)]


def _leaf_candidate(grammar, leaf, mode):
    vec = leaf_vector(grammar, leaf.entry)
    return _Candidate(leaf, vec, score(vec, mode), ())


def _join(grammar, a: _Candidate, b: _Candidate, mode) -> _Candidate:
    vec = compose(grammar, a.vector, b.vector)
    key = (-a.tree.n_leaves,) + a.tiekey + b.tiekey
    return _Candidate(Node(a.tree, b.tree), vec, score(vec, mode), key)


def _trivial(grammar, leaves, mode):
    if not leaves:
        raise ValueError("empty input")
    if len(leaves) == 1:
        c = _leaf_candidate(grammar, leaves[0], mode)
        return ParseResult(c.tree, c.score, c.vector, "exact")
    return None


def parse_exact(grammar: Grammar, tokens: Sequence[int], words: Sequence[str] | None = None,
                score_mode: str = "sum", max_len: int = DEFAULT_MAX_EXACT_LEN) -> ParseResult:
    """Score every bracketing and return the best one."""
    leaves = _leaves(grammar, tokens, words)
    trivial = _trivial(grammar, leaves, score_mode)
    if trivial is not None:
        return trivial
    n = len(leaves)
    if n > max_len:
        raise ValueError(f"exact search limited to {max_len} tokens, got {n}")

    table: dict[tuple[int, int], list[_Candidate]] = {}
    for i, leaf in enumerate(leaves):
        table[(i, i + 1)] = [_leaf_candidate(grammar, leaf, score_mode)]
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            j = i + length
            table[(i, j)] = [_join(grammar, a, b, score_mode)
                             for mid in range(i + 1, j)
                             for a in table[(i, mid)]
                             for b in table[(mid, j)]]
    best = min(table[(0, n)], key=lambda c: c.rank)
    return ParseResult(best.tree, best.score, best.vector, "exact")


def parse_beam(grammar: Grammar, tokens: Sequence[int], beam_width: int = DEFAULT_BEAM,
               words: Sequence[str] | None = None, score_mode: str = "sum") -> ParseResult:
    """CKY chart keeping the ``beam_width`` best (tree, vector) candidates per span.

    A parent's vector depends on its children's full vectors, not just their
    scores, so pruning a span can discard the subtree the best parse needed.
    The result is exact only when ``beam_width >= catalan(n - 1)``.
    """
    if beam_width < 1:
        raise ValueError("beam_width must be >= 1")
    leaves = _leaves(grammar, tokens, words)
    trivial = _trivial(grammar, leaves, score_mode)
    if trivial is not None:
        return trivial
    n = len(leaves)
    chart: dict[tuple[int, int], list[_Candidate]] = {}
    for i, leaf in enumerate(leaves):
        chart[(i, i + 1)] = [_leaf_candidate(grammar, leaf, score_mode)]
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            j = i + length
            cands = [_join(grammar, a, b, score_mode)
                     for mid in range(i + 1, j)
                     for a in chart[(i, mid)]
                     for b in chart[(mid, j)]]
            cands.sort(key=lambda c: c.rank)
            chart[(i, j)] = cands[:beam_width]
    best = chart[(0, n)][0]
    return ParseResult(best.tree, best.score, best.vector, "beam")


def parse_tokens(grammar: Grammar, words: Sequence[str],
                 options: ParseOptions | None = None) -> ParseResult:
    options = options or ParseOptions()
    if not words:
        raise ValueError("empty input")
    ids = [grammar.leaf_id(w) for w in words]
    if len(ids) <= options.max_exact_len:
        return parse_exact(grammar, ids, words, options.score_mode, options.max_exact_len)
    return parse_beam(grammar, ids, options.beam_width, words, options.score_mode)


def parse_sentence(grammar: Grammar, raw: str, options: ParseOptions | None = None) -> ParseResult:
    return parse_tokens(grammar, word_tokens(raw), options)
