"""Unsupervised bracketing with word-association vectors.

Words and word sequences are represented by sparse vectors of contextual
(Lin) similarity. Vectors compose over binary trees by substituting observed
adjacent pairs, and a sentence's parse is the bracketing whose root vector
has the largest total.
"""

from .composer import Leaf, Node, compose, evaluate_tree, leaf_vector, parse_bracketed
from .corpus import Corpus, TokenizerConfig, Vocabulary, build_vocabulary, tokenize
from .estimator import VectorGrammarParser
from .evaluation import PCFG, BracketScore, bracket_f1, generate_corpus
from .model import Grammar, GrammarConfig, train
from .parser import ParseOptions, ParseResult, parse_beam, parse_exact, parse_sentence
from .persistence import load, save
from .similarity import SimVector

__all__ = [
    "BracketScore", "Corpus", "Grammar", "GrammarConfig", "Leaf", "Node", "PCFG",
    "ParseOptions", "ParseResult", "SimVector", "TokenizerConfig", "VectorGrammarParser",
    "Vocabulary", "bracket_f1", "build_vocabulary", "compose", "evaluate_tree",
    "generate_corpus", "leaf_vector", "load", "parse_beam", "parse_bracketed",
    "parse_exact", "parse_sentence", "save", "tokenize", "train",
]
__version__ = "0.1.0"
