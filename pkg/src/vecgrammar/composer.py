"""Binary trees over vocabulary entries and the pair-substitution product.

Composing two vectors ``v1`` and ``v2`` gives, for every component ``k``::

    out[k] = sum over (i, j) with delta(i, j) = d != 0 of
             mi(i, j) * v1[i] * v2[j] * classvec(d)[k]

Contributions are accumulated per component in ascending ``(i, j)`` order,
so the result is bit-reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .model import Grammar, OutOfVocabularyError
from .similarity import EPSILON, SimVector

_EMPTY = SimVector()


@dataclass(frozen=True)
class Leaf:
    entry: int
    word: str

    @property
    def n_leaves(self) -> int:
        return 1

    def bracketed(self) -> str:
        return self.word

    def leaves(self) -> list["Leaf"]:
        return [self]


@dataclass(frozen=True)
class Node:
    left: "ParseTree"
    right: "ParseTree"

    @property
    def n_leaves(self) -> int:
        return self.left.n_leaves + self.right.n_leaves

    def bracketed(self) -> str:
        return f"({self.left.bracketed()} {self.right.bracketed()})"

    def leaves(self) -> list[Leaf]:
        return self.left.leaves() + self.right.leaves()


ParseTree = Union[Leaf, Node]


def tree_spans(tree: ParseTree, start: int = 0) -> set[tuple[int, int]]:
    """All constituent spans ``(start, end)`` of two or more leaves."""
    if isinstance(tree, Leaf):
        return set()
    mid = start + tree.left.n_leaves
    end = start + tree.n_leaves
    return {(start, end)} | tree_spans(tree.left, start) | tree_spans(tree.right, mid)


def left_branching(leaves) -> ParseTree:
    tree = leaves[0]
    for leaf in leaves[1:]:
        tree = Node(tree, leaf)
    return tree


def right_branching(leaves) -> ParseTree:
    tree = leaves[-1]
    for leaf in reversed(leaves[:-1]):
        tree = Node(leaf, tree)
    return tree


def parse_bracketed(expr: str, grammar: Grammar | None = None) -> ParseTree:
    """Read ``"((the cat) sat)"`` into a tree; leaves resolve through ``grammar``."""
    tokens = re.findall(r"\(|\)|[^\s()]+", expr)
    pos = 0

    def leaf(word):
        entry = grammar.leaf_id(word) if grammar is not None else 0
        return Leaf(entry, word)

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"unexpected end of tree expression: {expr!r}")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise ValueError(f"unbalanced ')' in {expr!r}")
        if tok != "(":
            return leaf(tok)
        children = []
        while pos < len(tokens) and tokens[pos] != ")":
            children.append(read())
        if pos >= len(tokens):
            raise ValueError(f"missing ')' in {expr!r}")
        pos += 1
        if not children:
            raise ValueError("empty brackets")
        # (a b c) reads as left-nested binary structure
        return left_branching(children)

    tree = read()
    if pos != len(tokens):
        raise ValueError(f"trailing input in tree expression: {expr!r}")
    return tree


def leaf_vector(grammar: Grammar, w: int) -> SimVector:
    if w == grammar.unk_id:
        return SimVector([w], [1.0])
    try:
        return grammar.class_vectors[w]
    except KeyError:
        raise OutOfVocabularyError(f"entry {w} is out of vocabulary") from None


def _expand(starts, counts):
    """Concatenate ``arange(s, s + c)`` for every (s, c) pair."""
    total = int(counts.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    offsets = np.repeat(np.cumsum(counts) - counts, counts)
    return np.arange(total, dtype=np.int64) - offsets + np.repeat(starts, counts)


def compose(grammar: Grammar, v1: SimVector, v2: SimVector) -> SimVector:
    if not len(v1) or not len(v2):
        return _EMPTY
    tab = grammar.arrays
    left = v1.ids
    in_range = left < tab.size
    left, a1 = left[in_range], v1.values[in_range]
    starts = tab.left_ptr[left]
    counts = tab.left_ptr[left + 1] - starts
    idx = _expand(starts, counts)
    if not len(idx):
        return _EMPTY
    a1 = np.repeat(a1, counts)

    right = tab.pair_right[idx]
    pos = np.searchsorted(v2.ids, right)
    pos_c = np.minimum(pos, len(v2.ids) - 1)
    hit = v2.ids[pos_c] == right
    if not hit.any():
        return _EMPTY
    idx, a1 = idx[hit], a1[hit]
    a2 = v2.values[pos_c[hit]]
    weights = tab.pair_mi[idx] * a1 * a2

    targets = tab.pair_target[idx]
    cv_start = tab.cv_ptr[targets]
    cv_count = tab.cv_ptr[targets + 1] - cv_start
    flat = _expand(cv_start, cv_count)
    ks = tab.cv_ids[flat]
    terms = np.repeat(weights, cv_count) * tab.cv_vals[flat]
    # bincount adds in input order, i.e. ascending (i, j) per component
    dense = np.bincount(ks, weights=terms, minlength=tab.size)
    keep = np.flatnonzero(dense >= EPSILON)
    out = SimVector(keep, dense[keep]).pruned(grammar.config.top_k)
    if grammar.config.normalize and len(out):
        out = out.scaled(1.0 / out.total())
    return out


def evaluate_tree(grammar: Grammar, tree: ParseTree, memo: dict | None = None) -> SimVector:
    if memo is None:
        memo = {}
    if tree in memo:
        return memo[tree]
    if isinstance(tree, Leaf):
        vec = leaf_vector(grammar, tree.entry)
    else:
        vec = compose(grammar, evaluate_tree(grammar, tree.left, memo),
                      evaluate_tree(grammar, tree.right, memo))
    memo[tree] = vec
    return vec
