"""Tokenization, corpus framing and the vocabulary of words and word sequences."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

BOS = 0
EOS = 1
SENTINELS = ("<s>", "</s>")

_TOKEN_RE = re.compile(r"\w+|[^\w\s]")
_BLANK_LINE_RE = re.compile(r"\n[ \t]*\n")


@dataclass(frozen=True)
class TokenizerConfig:
    terminators: tuple[str, ...] = (".", "?", "!")
    lowercase: bool = True
    ngram_max: int = 3
    min_count: int = 2


def word_tokens(text: str, lowercase: bool = True) -> list[str]:
    """Split one stretch of text into word and punctuation tokens."""
    if lowercase:
        text = text.lower()
    return _TOKEN_RE.findall(text)


@dataclass
class Corpus:
    """Sentences of token ids, each framed as ``[BOS, ..., EOS]``.

    Token ids 0 and 1 are the sentinels; ``token_strings[i]`` is the surface
    form of token id ``i``.
    """

    sentences: list[tuple[int, ...]] = field(default_factory=list)
    token_strings: list[str] = field(default_factory=lambda: list(SENTINELS))

    def __post_init__(self):
        self._token_index = {s: i for i, s in enumerate(self.token_strings)}

    @classmethod
    def from_token_lists(cls, token_lists: Iterable[Sequence[str]]) -> "Corpus":
        corpus = cls()
        for tokens in token_lists:
            corpus.add_sentence(tokens)
        return corpus

    def token_id(self, token: str) -> int | None:
        return self._token_index.get(token)

    def add_sentence(self, tokens: Sequence[str]) -> None:
        if not tokens:
            return
        ids = [BOS]
        for tok in tokens:
            if tok in SENTINELS:
                raise ValueError(f"sentinel string {tok!r} may not appear inside a sentence")
            tid = self._token_index.get(tok)
            if tid is None:
                tid = len(self.token_strings)
                self.token_strings.append(tok)
                self._token_index[tok] = tid
            ids.append(tid)
        ids.append(EOS)
        self.sentences.append(tuple(ids))

    def words(self, sentence: Sequence[int]) -> list[str]:
        return [self.token_strings[t] for t in sentence[1:-1]]

    @property
    def n_tokens(self) -> int:
        """Number of real (non-sentinel) tokens."""
        return sum(len(s) - 2 for s in self.sentences)

    def __len__(self) -> int:
        return len(self.sentences)


def split_sentences(text: str, config: TokenizerConfig | None = None) -> list[list[str]]:
    config = config or TokenizerConfig()
    terminators = set(config.terminators)
    sentences = []
    for block in _BLANK_LINE_RE.split(text):
        current: list[str] = []
        after_terminator = False
        for tok in word_tokens(block, config.lowercase):
            # a run of terminators ("?!", "...") stays with its sentence
            if after_terminator and tok not in terminators:
                sentences.append(current)
                current = []
            current.append(tok)
            after_terminator = tok in terminators
        if current:
            sentences.append(current)
    return sentences


def tokenize(text: str, config: TokenizerConfig | None = None) -> Corpus:
    return Corpus.from_token_lists(split_sentences(text, config))


@dataclass(frozen=True)
class Entry:
    id: int
    tokens: tuple[int, ...]
    count: int


class Vocabulary:
    """Vocabulary entries with dense ids ``1..N``; id 0 means "no entry".

    Multi-token entries are the word sequences that occurred at least
    ``min_count`` times; their canonical string joins the tokens with ``&``.
    """

    def __init__(self, token_strings: Sequence[str], entries: Sequence[Entry] = ()):
        self.token_strings = list(token_strings)
        self.entries = list(entries)
        for pos, entry in enumerate(self.entries, start=1):
            if entry.id != pos:
                raise ValueError(f"entry ids must be dense from 1, got {entry.id} at position {pos}")
            if not entry.tokens or any(t in (BOS, EOS) for t in entry.tokens):
                raise ValueError(f"entry {entry.id} has empty or sentinel tokens")
        self.by_tokens = {e.tokens: e.id for e in self.entries}
        self.index = {self.canonical(e.id): e.id for e in self.entries}
        if len(self.index) != len(self.entries) or len(self.by_tokens) != len(self.entries):
            raise ValueError("duplicate vocabulary entries")
        self._token_index = {s: i for i, s in enumerate(self.token_strings) if i > EOS}
        self._unigrams = {e.tokens[0]: e.id for e in self.entries if len(e.tokens) == 1}

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, entry_id: int) -> Entry:
        if entry_id < 1:
            raise KeyError(entry_id)
        return self.entries[entry_id - 1]

    def __contains__(self, canonical: str) -> bool:
        return canonical in self.index

    def canonical(self, entry_id: int) -> str:
        return "&".join(self.token_strings[t] for t in self[entry_id].tokens)

    def lookup(self, canonical: str) -> int:
        """Entry id for a canonical string such as ``"a&lot"``, 0 when absent."""
        return self.index.get(canonical, 0)

    def word_id(self, word: str) -> int:
        """Unigram entry id for a surface word, 0 when out of vocabulary."""
        tid = self._token_index.get(word)
        return 0 if tid is None else self._unigrams.get(tid, 0)

    @property
    def ngram_max(self) -> int:
        return max((len(e.tokens) for e in self.entries), default=0)


def _ngram_counts(corpus: Corpus, ngram_max: int) -> Counter:
    counts: Counter = Counter()
    for sent in corpus.sentences:
        body = sent[1:-1]
        for n in range(1, ngram_max + 1):
            for i in range(len(body) - n + 1):
                counts[body[i:i + n]] += 1
    return counts


def build_vocabulary(corpus: Corpus, ngram_max: int = 3, min_count: int = 2) -> Vocabulary:
    if ngram_max < 1:
        raise ValueError("ngram_max must be >= 1")
    if min_count < 1:
        raise ValueError("min_count must be >= 1")
    counts = _ngram_counts(corpus, ngram_max)
    kept = [g for g, c in counts.items() if len(g) == 1 or c >= min_count]
    # token ids follow first appearance, so this order is reproducible
    kept.sort(key=lambda g: (len(g), g))
    entries = [Entry(i, g, counts[g]) for i, g in enumerate(kept, start=1)]
    return Vocabulary(corpus.token_strings, entries)
