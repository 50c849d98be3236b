import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import reference_compose
from vecgrammar.composer import (
    Leaf,
    Node,
    compose,
    evaluate_tree,
    leaf_vector,
    left_branching,
    parse_bracketed,
    tree_spans,
)
from vecgrammar.corpus import Corpus
from vecgrammar.model import GrammarConfig, OutOfVocabularyError, train
from vecgrammar.similarity import SimVector


def as_dicts(grammar):
    cvs = {k: v.to_dict() for k, v in grammar.class_vectors.items()}
    return grammar.pairs.delta, grammar.pairs.mi, cvs


def random_vector(rng, ids, max_len=50):
    chosen = rng.sample(ids, rng.randint(0, min(max_len, len(ids))))
    return {i: rng.uniform(0.001, 1.0) for i in chosen}


def test_leaf_vector(micro_corpus):
    grammar = train(micro_corpus, GrammarConfig(ngram_max=1, min_count=1, threshold_c=0.5))
    cat, dog = grammar.vocab.lookup("cat"), grammar.vocab.lookup("dog")
    assert leaf_vector(grammar, cat).to_dict() == {cat: 1.0, dog: 1.0}
    the = grammar.vocab.lookup("the")
    assert leaf_vector(grammar, the).to_dict() == {the: 1.0}
    with pytest.raises(OutOfVocabularyError):
        leaf_vector(grammar, 0)
    unk = grammar.unk_id
    assert leaf_vector(grammar, unk).to_dict() == {unk: 1.0}


def test_empty_operands(toy_grammar):
    v = leaf_vector(toy_grammar, toy_grammar.vocab.lookup("the"))
    assert len(compose(toy_grammar, SimVector(), v)) == 0
    assert len(compose(toy_grammar, v, SimVector())) == 0


def test_no_observed_pair_gives_empty(toy_grammar):
    the = toy_grammar.vocab.lookup("the")
    v = SimVector([the], [1.0])
    assert len(compose(toy_grammar, v, v)) == 0  # "the the" never occurs


def test_single_pair(toy_grammar):
    a, b = toy_grammar.vocab.lookup("the"), toy_grammar.vocab.lookup("cat")
    d = toy_grammar.vocab.lookup("the&cat")
    m = toy_grammar.pairs.mi[(a, b)]
    got = compose(toy_grammar, SimVector([a], [1.0]), SimVector([b], [1.0]))
    expected = {k: m * v for k, v in toy_grammar.class_vectors[d].items()}
    assert got.to_dict() == expected


def test_matches_reference(toy_grammar):
    delta, mi, cvs = as_dicts(toy_grammar)
    lefts = sorted({i for i, _ in delta})
    rights = sorted({j for _, j in delta})
    everything = list(range(1, len(toy_grammar.vocab) + 1))
    rng = random.Random(11)
    for _ in range(200):
        v1 = random_vector(rng, rng.choice([lefts, everything]))
        v2 = random_vector(rng, rng.choice([rights, everything]))
        got = compose(toy_grammar, SimVector.from_dict(v1), SimVector.from_dict(v2))
        assert got.to_dict() == reference_compose(delta, mi, cvs, v1, v2, toy_grammar.config.top_k)


def test_closure(toy_grammar):
    rng = random.Random(2)
    n = len(toy_grammar.vocab)
    ids = list(range(1, n + 1))
    for _ in range(50):
        v1 = SimVector.from_dict(random_vector(rng, ids))
        v2 = SimVector.from_dict(random_vector(rng, ids))
        out = compose(toy_grammar, v1, v2)
        assert all(1 <= k <= n for k in out)
        assert len(out) <= toy_grammar.config.top_k


@pytest.fixture(scope="module")
def uncapped_grammar(toy_corpus):
    return train(toy_corpus, GrammarConfig(top_k=100_000))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.125, 8.0), st.integers(0, 10_000), st.booleans())
def test_bilinear(uncapped_grammar, alpha, seed, scale_left):
    g = uncapped_grammar
    rng = random.Random(seed)
    delta, _, _ = as_dicts(g)
    v1 = SimVector.from_dict(random_vector(rng, sorted({i for i, _ in delta}), 20))
    v2 = SimVector.from_dict(random_vector(rng, sorted({j for _, j in delta}), 20))
    base = compose(g, v1, v2).to_dict()
    if scale_left:
        scaled = compose(g, v1.scaled(alpha), v2).to_dict()
    else:
        scaled = compose(g, v1, v2.scaled(alpha)).to_dict()
    assert set(scaled) == set(base)
    for k in base:
        assert scaled[k] == pytest.approx(alpha * base[k], rel=1e-9)


def test_non_associative(crafted_grammar):
    g = crafted_grammar
    assert "a&b" in g.vocab and "b&c" not in g.vocab
    left = evaluate_tree(g, parse_bracketed("((a b) c)", g))
    right = evaluate_tree(g, parse_bracketed("(a (b c))", g))
    assert left != right
    assert len(left) > 0 and len(right) == 0

    # the same two numbers from the reference loop, one node at a time
    delta, mi, cvs = as_dicts(g)
    top_k = g.config.top_k
    leaf = {w: cvs[g.vocab.lookup(w)] for w in "abc"}
    ab = reference_compose(delta, mi, cvs, leaf["a"], leaf["b"], top_k)
    assert left.to_dict() == reference_compose(delta, mi, cvs, ab, leaf["c"], top_k)
    bc = reference_compose(delta, mi, cvs, leaf["b"], leaf["c"], top_k)
    assert bc == {}


def test_empty_pair_table_gives_empty_trees(micro_corpus):
    g = train(micro_corpus, GrammarConfig(ngram_max=1, min_count=1))
    assert len(evaluate_tree(g, parse_bracketed("((the cat) sat)", g))) == 0


def test_single_leaf_evaluates_to_class_vector(toy_grammar):
    cat = toy_grammar.vocab.lookup("cat")
    assert evaluate_tree(toy_grammar, Leaf(cat, "cat")) == toy_grammar.class_vectors[cat]


def test_evaluate_memoizes(toy_grammar):
    tree = parse_bracketed("((the cat) (saw (the dog)))", toy_grammar)
    memo = {}
    root = evaluate_tree(toy_grammar, tree, memo)
    assert memo[tree] is root
    assert tree.left in memo and tree.right.right in memo


def test_oov_leaf_propagates(toy_grammar):
    with pytest.raises(OutOfVocabularyError):
        evaluate_tree(toy_grammar, Node(Leaf(0, "?"), Leaf(1, "x")))


def test_bracketed_reader():
    tree = parse_bracketed("((the cat) (sat .))")
    assert tree.bracketed() == "((the cat) (sat .))"
    assert tree_spans(tree) == {(0, 4), (0, 2), (2, 4)}
    assert parse_bracketed("(a b c)") == left_branching([Leaf(0, w) for w in "abc"])
    assert parse_bracketed("word") == Leaf(0, "word")
    for bad in ("((a b)", "(a b))", "()", ""):
        with pytest.raises(ValueError):
            parse_bracketed(bad)


def test_normalize_switch(toy_corpus):
    g = train(toy_corpus, GrammarConfig(normalize=True))
    tree = parse_bracketed("(the cat)", g)
    assert evaluate_tree(g, tree).total() == pytest.approx(1.0, rel=1e-12)


def test_crafted_corpus_is_what_the_fixture_says():
    from conftest import CRAFTED

    g = train(Corpus.from_token_lists(CRAFTED), GrammarConfig())
    x, ab = g.vocab.lookup("x"), g.vocab.lookup("a&b")
    assert x in g.class_vectors[ab]
