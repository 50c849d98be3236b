"""Command line: train, similar, compose, parse, eval."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import persistence
from .composer import compose, evaluate_tree, leaf_vector, parse_bracketed
from .corpus import Corpus, TokenizerConfig, split_sentences
from .evaluation import PCFG, default_grammar_path, run_evaluation
from .model import GrammarConfig, train
from .pairs import lookup
from .parser import DEFAULT_BEAM, DEFAULT_MAX_EXACT_LEN, SCORE_MODES, ParseOptions, parse_sentence, score
from .similarity import DEFAULT_THRESHOLD, DEFAULT_TOP_K, format_vector

log = logging.getLogger("vecgrammar")


def _add_training_flags(p):
    p.add_argument("--ngram-max", type=int, default=3)
    p.add_argument("--min-count", type=int, default=2)
    p.add_argument("--threshold-c", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--top-k", type=int, default=DEFAULT_TOP_K)


def _add_parse_flags(p):
    p.add_argument("--beam", type=int, default=DEFAULT_BEAM, help="candidates kept per chart span")
    p.add_argument("--max-exact-len", type=int, default=DEFAULT_MAX_EXACT_LEN,
                   help="sentences up to this length are searched exhaustively")
    p.add_argument("--score-mode", choices=SCORE_MODES, default="sum")


def _grammar_config(args):
    return GrammarConfig(args.ngram_max, args.min_count, args.threshold_c, args.top_k)


def cmd_train(args):
    tok = TokenizerConfig(ngram_max=args.ngram_max, min_count=args.min_count)
    sentences = []
    for path in args.files:
        sentences.extend(split_sentences(Path(path).read_text(encoding="utf-8"), tok))
    grammar = train(Corpus.from_token_lists(sentences), _grammar_config(args))
    persistence.save(grammar, args.model)
    log.info("trained on %d sentences: %d entries, %d pairs", len(sentences),
             len(grammar.vocab), len(grammar.pairs))


def cmd_similar(args):
    grammar = persistence.load(args.model)
    entry = grammar.vocab.lookup(args.word.lower())
    if not entry or entry not in grammar.class_vectors:
        raise SystemExit(f"{args.word!r} is not in the model vocabulary")
    vec = grammar.class_vectors[entry]
    print(f"{args.word.lower()} {{{format_vector(vec, grammar.vocab, args.head)}}}")


def cmd_compose(args):
    grammar = persistence.load(args.model)
    if len(args.expr) == 2 and not any("(" in e or ")" in e for e in args.expr):
        w1, w2 = (e.lower() for e in args.expr)
        i, j = grammar.vocab.lookup(w1), grammar.vocab.lookup(w2)
        for w, e in ((w1, i), (w2, j)):
            if not e:
                raise SystemExit(f"{w!r} is not in the model vocabulary")
        k, weight = lookup(grammar.pairs, i, j)
        print(f"pair\t{grammar.entry_name(k) if k else '-'}\t{weight!r}")
        vec = compose(grammar, leaf_vector(grammar, i), leaf_vector(grammar, j))
    else:
        tree = parse_bracketed(" ".join(args.expr).lower(), grammar)
        vec = evaluate_tree(grammar, tree)
    print(f"score\t{score(vec)!r}")
    print(f"vector\t{{{format_vector(vec, grammar.vocab, args.head)}}}")


def cmd_parse(args):
    grammar = persistence.load(args.model)
    options = ParseOptions(args.beam, args.max_exact_len, args.score_mode)
    stream = open(args.input, encoding="utf-8") if args.input and args.input != "-" else sys.stdin
    with stream:
        for line in stream:
            if not line.strip():
                continue
            result = parse_sentence(grammar, line, options)
            print(f"{result.bracketed()}\t{result.score!r}")


def cmd_eval(args):
    grammar = PCFG.load(args.grammar or default_grammar_path())
    report, est, _ = run_evaluation(
        grammar, args.train_sentences, args.test_sentences, args.seed,
        ngram_max=args.ngram_max, min_count=args.min_count, threshold_c=args.threshold_c,
        top_k=args.top_k, beam_width=args.beam, max_exact_len=args.max_exact_len,
        score_mode=args.score_mode)
    if args.model:
        persistence.save(est.grammar_, args.model)
    print(report.summary())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vecgrammar", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a model from UTF-8 text files")
    p.add_argument("files", nargs="+")
    p.add_argument("--model", required=True, help="output model file")
    _add_training_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("similar", help="print the class vector of a word or word sequence")
    p.add_argument("word", help="a word, or a sequence joined with '&'")
    p.add_argument("--model", required=True)
    p.add_argument("--head", type=int, default=None, help="print only the first N components")
    p.set_defaults(func=cmd_similar)

    p = sub.add_parser("compose", help="compose two words or evaluate a bracketed tree")
    p.add_argument("expr", nargs="+", help="'w1 w2' or a tree such as '((the cat) sat)'")
    p.add_argument("--model", required=True)
    p.add_argument("--head", type=int, default=None)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("parse", help="parse sentences, one per line")
    p.add_argument("input", nargs="?", default="-", help="input file (default: stdin)")
    p.add_argument("--model", required=True)
    _add_parse_flags(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("eval", help="bracket F1 on a synthetic PCFG corpus")
    p.add_argument("--grammar", default=None, help="PCFG file (default: bundled toy grammar)")
    p.add_argument("--train-sentences", type=int, default=1000)
    p.add_argument("--test-sentences", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--model", default=None, help="also write the trained model here")
    _add_training_flags(p)
    _add_parse_flags(p)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    args.func(args)


if __name__ == "__main__":
    main()
