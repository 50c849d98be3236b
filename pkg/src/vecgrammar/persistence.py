"""Versioned JSON model files (layout in docs/model-format.md)."""

from __future__ import annotations

import json
import math
from pathlib import Path

from .corpus import Entry, Vocabulary
from .model import Grammar, GrammarConfig
from .pairs import PairTable
from .similarity import SimVector

FORMAT_VERSION = 1


class ModelFormatError(ValueError):
    pass


class ModelVersionError(ModelFormatError):
    pass


class ModelSchemaError(ModelFormatError):
    pass


class ModelNumericError(ModelFormatError):
    pass


def to_json_dict(grammar: Grammar) -> dict:
    vocab = grammar.vocab
    return {
        "format_version": FORMAT_VERSION,
        "config": grammar.config.to_dict(),
        "tokens": vocab.token_strings,
        "entries": [[list(e.tokens), e.count] for e in vocab.entries],
        "class_vectors": [[k, v.ids.tolist(), v.values.tolist()]
                          for k, v in sorted(grammar.class_vectors.items())],
        "pairs": [[i, j, grammar.pairs.delta[(i, j)], grammar.pairs.mi[(i, j)]]
                  for i, j in sorted(grammar.pairs.delta)],
        "context_summary": grammar.context_summary,
    }


def dumps(grammar: Grammar) -> str:
    # repr-based float output round-trips every double exactly
    return json.dumps(to_json_dict(grammar), sort_keys=True, ensure_ascii=False,
                      allow_nan=False, separators=(",", ":")) + "\n"


def save(grammar: Grammar, path) -> None:
    path = Path(path)
    text = dumps(grammar)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write model file {path}: {exc}") from exc


def _reject_constant(name):
    raise ModelNumericError(f"non-finite number {name} in model file")


def _require(cond, message, exc=ModelSchemaError):
    if not cond:
        raise exc(message)


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _is_num(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def from_json_dict(data) -> Grammar:
    _require(isinstance(data, dict), "model file must hold a JSON object")
    _require("format_version" in data, "missing format_version")
    version = data["format_version"]
    if version != FORMAT_VERSION:
        raise ModelVersionError(f"unsupported model format_version {version!r}, expected {FORMAT_VERSION}")
    for key, kind in (("config", dict), ("tokens", list), ("entries", list),
                      ("class_vectors", list), ("pairs", list), ("context_summary", dict)):
        _require(isinstance(data.get(key), kind), f"missing or malformed {key!r}")

    try:
        config = GrammarConfig(**data["config"])
    except (TypeError, ValueError) as exc:
        raise ModelSchemaError(f"bad config: {exc}") from None

    tokens = data["tokens"]
    _require(all(isinstance(t, str) for t in tokens) and len(tokens) >= 2, "bad token table")
    entries = []
    for pos, item in enumerate(data["entries"], start=1):
        _require(isinstance(item, list) and len(item) == 2, f"bad entry #{pos}")
        toks, count = item
        _require(isinstance(toks, list) and toks and all(_is_int(t) and 0 <= t < len(tokens) for t in toks),
                 f"bad tokens for entry {pos}")
        _require(_is_int(count) and count >= 1, f"bad count for entry {pos}")
        if len(toks) > 1:
            _require(count >= config.min_count, f"entry {pos} below min_count")
        entries.append(Entry(pos, tuple(toks), count))
    try:
        vocab = Vocabulary(tokens, entries)
    except ValueError as exc:
        raise ModelSchemaError(str(exc)) from None
    n = len(vocab)

    vectors = {}
    for item in data["class_vectors"]:
        _require(isinstance(item, list) and len(item) == 3, "bad class vector record")
        k, ids, vals = item
        _require(_is_int(k) and 1 <= k <= n and k not in vectors, f"bad class vector id {k!r}")
        _require(isinstance(ids, list) and isinstance(vals, list) and len(ids) == len(vals),
                 f"bad class vector {k}")
        _require(all(_is_int(i) and 1 <= i <= n for i in ids), f"class vector {k} leaves the vocabulary")
        _require(all(a < b for a, b in zip(ids, ids[1:])), f"class vector {k} ids not sorted")
        _require(len(ids) <= config.top_k, f"class vector {k} exceeds top_k")
        _require(all(_is_num(v) for v in vals), f"class vector {k} has non-numeric scores")
        _require(all(math.isfinite(v) and v > 0 for v in vals),
                 f"class vector {k} has invalid scores", ModelNumericError)
        vectors[k] = SimVector(ids, [float(v) for v in vals])

    delta, mi = {}, {}
    for item in data["pairs"]:
        _require(isinstance(item, list) and len(item) == 4, "bad pair record")
        i, j, k, w = item
        _require(all(_is_int(x) and 1 <= x <= n for x in (i, j, k)), f"pair {item!r} leaves the vocabulary")
        _require(vocab[k].tokens == vocab[i].tokens + vocab[j].tokens,
                 f"pair ({i}, {j}) -> {k} is not a concatenation")
        _require((i, j) not in delta, f"duplicate pair ({i}, {j})")
        _require(_is_num(w), f"non-numeric weight for pair ({i}, {j})")
        _require(math.isfinite(w) and w >= 0, f"invalid weight for pair ({i}, {j})", ModelNumericError)
        delta[(i, j)] = k
        mi[(i, j)] = float(w)
    return Grammar(config, vocab, vectors, PairTable(delta, mi), data["context_summary"])


def loads(text: str) -> Grammar:
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ModelSchemaError(f"model file is not valid JSON: {exc}") from None
    return from_json_dict(data)


def load(path) -> Grammar:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read model file {path}: {exc}") from exc
    return loads(text)
