import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vecgrammar.corpus import Corpus  # noqa: E402
from vecgrammar.evaluation import PCFG, default_grammar_path, generate_corpus, gold_words  # noqa: E402
from vecgrammar.model import GrammarConfig, train  # noqa: E402

MICRO = [["the", "cat", "sat"], ["the", "dog", "sat"]]

# ((a b) c) composes through x, a stand-in for "a b"; (b c) has no observed pair
CRAFTED = [["a", "b", "d"]] * 2 + [["x", "d"]] * 2 + [["x", "c", "f"]] * 2


@pytest.fixture
def micro_corpus():
    return Corpus.from_token_lists(MICRO)


@pytest.fixture(scope="session")
def crafted_grammar():
    return train(Corpus.from_token_lists(CRAFTED), GrammarConfig(ngram_max=3, min_count=2))


@pytest.fixture(scope="session")
def toy_pcfg():
    return PCFG.load(default_grammar_path())


@pytest.fixture(scope="session")
def toy_trees(toy_pcfg):
    return generate_corpus(toy_pcfg, 1000, 7)[1]


@pytest.fixture(scope="session")
def toy_corpus(toy_trees):
    return Corpus.from_token_lists(gold_words(t) for t in toy_trees)


@pytest.fixture(scope="session")
def toy_grammar(toy_corpus):
    return train(toy_corpus, GrammarConfig())


@pytest.fixture(scope="session")
def short_sentences(toy_pcfg):
    """Held-out sentences of 2..8 tokens."""
    _, trees = generate_corpus(toy_pcfg, 600, 1234)
    sents = [gold_words(t) for t in trees]
    return [s for s in sents if 2 <= len(s) <= 8]


_CRITERION_RE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error", "skipped"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = _CRITERION_RE.search(getattr(rep, "nodeid", ""))
            if m and rep.when in ("call", "setup"):
                if outcome == "passed" and rep.when != "call":
                    continue
                lines.append((int(m.group(1)), m.group(2), "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for num, name, status in sorted(set(lines)):
            terminalreporter.write_line(f"criterion {num} {name.replace('_', ' ')}: {status}")
