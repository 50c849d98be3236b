import numpy as np
import pytest
import scipy.sparse as sp
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from vecgrammar.estimator import VectorGrammarParser, check_documents, check_sentences
from vecgrammar.evaluation import gold_words
from vecgrammar.parser import parse_tokens


@pytest.fixture(scope="module")
def fitted(toy_trees):
    return VectorGrammarParser().fit([gold_words(t) for t in toy_trees])


def test_params_round_trip():
    est = VectorGrammarParser(min_count=3, beam_width=2)
    params = est.get_params()
    assert params["min_count"] == 3 and params["beam_width"] == 2
    twin = clone(est)
    assert twin.get_params() == params
    est.set_params(score_mode="concentration")
    assert est.score_mode == "concentration"


def test_not_fitted():
    with pytest.raises(NotFittedError):
        VectorGrammarParser().predict([["a", "b"]])


def test_fit_matches_functional_api(fitted, toy_grammar):
    assert fitted.grammar_ == toy_grammar
    assert fitted.n_entries_ == len(toy_grammar.vocab)


def test_predict_and_parse(fitted, toy_grammar):
    sents = ["the cat slept", ["mary", "saw", "a", "dog"]]
    trees = fitted.predict(sents)
    assert [t.n_leaves for t in trees] == [3, 4]
    assert trees[1] == parse_tokens(toy_grammar, ["mary", "saw", "a", "dog"]).tree


def test_transform_rows_are_root_vectors(fitted):
    sents = ["the cat slept", "mary saw a dog", "cat"]
    X = fitted.transform(sents)
    assert sp.issparse(X) and X.shape == (3, fitted.grammar_.unk_id + 1)
    for row, res in zip(X, fitted.parse(sents)):
        dense = row.toarray().ravel()
        assert np.array_equal(np.flatnonzero(dense), res.vector.ids)
        assert np.array_equal(dense[res.vector.ids], res.vector.values)


def test_score_is_bracket_f1(fitted, toy_trees):
    gold = toy_trees[:20]
    f1 = fitted.score([gold_words(t) for t in gold], gold)
    assert 0.0 <= f1 <= 1.0


def test_fit_raw_text():
    est = VectorGrammarParser(min_count=1).fit("The cat sat. The dog sat.")
    assert "sat&." in est.grammar_.vocab


def test_input_helpers():
    assert check_documents("A b. C d.") == [["a", "b", "."], ["c", "d", "."]]
    assert check_documents([["x", "y"], [], "Z."]) == [["x", "y"], ["z", "."]]
    assert check_sentences(["A b", ("c", "d")]) == [["a", "b"], ["c", "d"]]
    with pytest.raises(TypeError):
        check_sentences("a single string")
    with pytest.raises(ValueError):
        check_sentences(["ok", "  "])
