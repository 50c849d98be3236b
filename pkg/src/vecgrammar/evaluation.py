"""Synthetic evaluation: sample a toy PCFG, train, parse, score brackets.

Grammar files hold one production per line::

    S -> NP VP [0.9]
    NP -> Det N
    Det -> 'the' [0.5] | 'a' [0.5]

Quoted symbols are terminals, the first left-hand side is the start symbol,
``#`` starts a comment and a missing weight means 1. Weights are
normalised per left-hand side.
"""

from __future__ import annotations

import random
import re
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence, Union

from .composer import Leaf, Node, ParseTree, left_branching, right_branching, tree_spans
from .corpus import Corpus

GoldTree = Union[str, tuple]

_ALT_RE = re.compile(r"^(?P<rhs>.*?)\s*(?:\[\s*(?P<w>[0-9.eE+-]+)\s*\])?\s*$")
_SYM_RE = re.compile(r"'[^']*'|\"[^\"]*\"|[^\s'\"]+")


class GrammarFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Terminal:
    word: str


@dataclass
class PCFG:
    start: str
    rules: dict[str, list[tuple[tuple, float]]]

    @classmethod
    def parse(cls, text: str) -> "PCFG":
        rules: dict[str, list[tuple[tuple, float]]] = {}
        start = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "->" not in line:
                raise GrammarFormatError(f"line {lineno}: expected 'LHS -> RHS'")
            lhs, rhs = (part.strip() for part in line.split("->", 1))
            if not re.fullmatch(r"[A-Za-z_][\w-]*", lhs):
                raise GrammarFormatError(f"line {lineno}: bad nonterminal {lhs!r}")
            start = start or lhs
            for alt in rhs.split("|"):
                m = _ALT_RE.match(alt.strip())
                syms = []
                for sym in _SYM_RE.findall(m.group("rhs")):
                    if sym[0] in "'\"":
                        word = sym[1:-1]
                        if not word or any(ch.isspace() for ch in word):
                            raise GrammarFormatError(f"line {lineno}: bad terminal {sym}")
                        syms.append(Terminal(word))
                    else:
                        syms.append(sym)
                if not syms:
                    raise GrammarFormatError(f"line {lineno}: empty right-hand side")
                try:
                    weight = float(m.group("w")) if m.group("w") else 1.0
                except ValueError:
                    raise GrammarFormatError(f"line {lineno}: bad weight") from None
                if weight <= 0:
                    raise GrammarFormatError(f"line {lineno}: weights must be positive")
                rules.setdefault(lhs, []).append((tuple(syms), weight))
        if start is None:
            raise GrammarFormatError("grammar has no productions")
        for lhs, prods in rules.items():
            for syms, _ in prods:
                for s in syms:
                    if isinstance(s, str) and s not in rules:
                        raise GrammarFormatError(f"nonterminal {s!r} (used by {lhs}) has no productions")
        return cls(start, rules)

    @classmethod
    def load(cls, path) -> "PCFG":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def sample(self, rng: random.Random, max_depth: int = 40) -> GoldTree:
        def expand(symbol, depth):
            if isinstance(symbol, Terminal):
                return symbol.word
            if depth > max_depth:
                raise RecursionError("derivation exceeded max_depth")
            prods = self.rules[symbol]
            syms = rng.choices([p for p, _ in prods], weights=[w for _, w in prods])[0]
            children = tuple(expand(s, depth + 1) for s in syms)
            # unary chains add no bracket
            return children[0] if len(children) == 1 else children

        return expand(self.start, 0)


def default_grammar_path():
    return resources.files("vecgrammar") / "data" / "toy.pcfg"


def gold_words(tree: GoldTree) -> list[str]:
    if isinstance(tree, str):
        return [tree]
    return [w for child in tree for w in gold_words(child)]


def gold_spans(tree: GoldTree, start: int = 0) -> set[tuple[int, int]]:
    if isinstance(tree, str):
        return set()
    spans = set()
    pos = start
    for child in tree:
        spans |= gold_spans(child, pos)
        pos += len(gold_words(child))
    spans.add((start, pos))
    return spans


def generate_corpus(grammar: PCFG, sentence_count: int, seed: int,
                    max_attempts: int = 100) -> tuple[Corpus, list[GoldTree]]:
    """Sample ``sentence_count`` derivations; same seed, same corpus."""
    rng = random.Random(seed)
    trees = []
    for _ in range(sentence_count):
        for _ in range(max_attempts):
            try:
                trees.append(grammar.sample(rng))
                break
            except RecursionError:
                continue
        else:
            raise GrammarFormatError("grammar does not terminate within max_depth")
    return Corpus.from_token_lists(gold_words(t) for t in trees), trees


@dataclass(frozen=True)
class BracketScore:
    precision: float
    recall: float
    f1: float
    sentence_count: int

    def __str__(self):
        return f"P={self.precision:.4f} R={self.recall:.4f} F1={self.f1:.4f} n={self.sentence_count}"


def _spans_and_length(tree) -> tuple[set, int]:
    if isinstance(tree, (Leaf, Node)):
        return tree_spans(tree), tree.n_leaves
    return gold_spans(tree), len(gold_words(tree))


def bracket_f1(predicted: Sequence, gold: Sequence) -> BracketScore:
    """Corpus-level unlabeled bracket precision, recall and F1.

    Only spans of two or more tokens count, and the whole-sentence span is
    left out since every tree has it.
    """
    if len(predicted) != len(gold):
        raise ValueError(f"length mismatch: {len(predicted)} predicted vs {len(gold)} gold")
    matched = n_pred = n_gold = 0
    for p, g in zip(predicted, gold):
        p_spans, p_len = _spans_and_length(p)
        g_spans, g_len = _spans_and_length(g)
        if p_len != g_len:
            raise ValueError(f"sentence length mismatch: {p_len} vs {g_len}")
        p_spans.discard((0, p_len))
        g_spans.discard((0, g_len))
        matched += len(p_spans & g_spans)
        n_pred += len(p_spans)
        n_gold += len(g_spans)
    precision = matched / n_pred if n_pred else 0.0
    recall = matched / n_gold if n_gold else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision > 0 and recall > 0 else 0.0
    return BracketScore(precision, recall, f1, len(gold))


@dataclass(frozen=True)
class EvalReport:
    parser: BracketScore
    left_baseline: BracketScore
    right_baseline: BracketScore
    elapsed: float = 0.0

    def summary(self) -> str:
        p = self.parser
        return (f"precision={p.precision:.4f} recall={p.recall:.4f} f1={p.f1:.4f} "
                f"left_f1={self.left_baseline.f1:.4f} right_f1={self.right_baseline.f1:.4f} "
                f"sentences={p.sentence_count}")


def baseline_trees(gold: Sequence[GoldTree]) -> tuple[list[ParseTree], list[ParseTree]]:
    lefts, rights = [], []
    for g in gold:
        leaves = [Leaf(0, w) for w in gold_words(g)]
        lefts.append(left_branching(leaves))
        rights.append(right_branching(leaves))
    return lefts, rights


def run_evaluation(grammar: PCFG, train_sentences: int = 1000, test_sentences: int = 200,
                   seed: int = 42, **params):
    """Train on the first ``train_sentences`` samples, parse the next ``test_sentences``.

    Returns ``(report, estimator, results)``.
    """
    from .estimator import VectorGrammarParser

    start = time.perf_counter()
    _, trees = generate_corpus(grammar, train_sentences + test_sentences, seed)
    train, test = trees[:train_sentences], trees[train_sentences:]
    est = VectorGrammarParser(**params).fit([gold_words(t) for t in train])
    results = est.parse([gold_words(t) for t in test])
    lefts, rights = baseline_trees(test)
    report = EvalReport(
        bracket_f1([r.tree for r in results], test),
        bracket_f1(lefts, test),
        bracket_f1(rights, test),
        time.perf_counter() - start,
    )
    return report, est, results
