"""Slow, obviously-correct reference implementations used as test oracles.

None of these share code with the library paths they check.
"""

import math
from collections import Counter

from vecgrammar.composer import Leaf, Node


def brute_contexts(sentences, max_n):
    """Count (left, right) flanks of every n-gram, on plain string sentences.

    Returns {ngram tuple of strings: Counter{(left, right): count}}.
    """
    out = {}
    for sent in sentences:
        framed = ["<s>"] + list(sent) + ["</s>"]
        for n in range(1, max_n + 1):
            for i in range(1, len(framed) - n):
                gram = tuple(framed[i:i + n])
                out.setdefault(gram, Counter())[(framed[i - 1], framed[i + n])] += 1
    return out


def brute_information(feature_counts, features):
    total = sum(feature_counts.values())
    return sum(-math.log2(feature_counts[f] / total) for f in features)


def reference_compose(delta, mi, class_vectors, v1, v2, top_k, epsilon=1e-12):
    """Naive double loop over every (i, j) with dicts; same arithmetic order."""
    out = {}
    for i in sorted(v1):
        for j in sorted(v2):
            d = delta.get((i, j), 0)
            if d == 0:
                continue
            for k in sorted(class_vectors[d]):
                out[k] = out.get(k, 0.0) + mi[(i, j)] * v1[i] * v2[j] * class_vectors[d][k]
    kept = {k: v for k, v in out.items() if v >= epsilon}
    if len(kept) > top_k:
        ranked = sorted(kept.items(), key=lambda kv: (-kv[1], kv[0]))[:top_k]
        kept = dict(ranked)
    return dict(sorted(kept.items()))


def all_bracketings(leaves):
    """Every binary tree over ``leaves`` (Catalan(n-1) of them)."""
    if len(leaves) == 1:
        return [leaves[0]]
    trees = []
    for cut in range(1, len(leaves)):
        for left in all_bracketings(leaves[:cut]):
            for right in all_bracketings(leaves[cut:]):
                trees.append(Node(left, right))
    return trees


def leaves_for(grammar, words):
    return [Leaf(grammar.leaf_id(w), w) for w in words]
