"""Independent brute-force oracles.

Nothing here touches the permutation tables of ``WeylGroup`` except to
translate results back into element indices for comparison. Used by the
verification suites and the test-suite.
"""

from itertools import combinations

import numpy as np


def reflection_matrices(matrix):
    """Integer matrices of the simple reflections on the root lattice (column = image of alpha_j)."""
    a = np.array(matrix, dtype=np.int64)
    n = len(a)
    gens = []
    for i in range(n):
        s = np.eye(n, dtype=np.int64)
        for j in range(n):
            s[i, j] -= a[i, j]
        gens.append(s)
    return gens


def enumerate_by_words(matrix, limit=100000):
    """BFS over words in the simple reflections, dedup by matrix.

    Returns ``(order, max_length)``; the BFS depth at which an element first
    appears is its length.
    """
    gens = reflection_matrices(matrix)
    n = len(gens)
    ident = np.eye(n, dtype=np.int64)
    seen = {ident.tobytes()}
    frontier = [ident]
    depth = 0
    while frontier:
        nxt = []
        for m in frontier:
            for s in gens:
                p = s @ m
                key = p.tobytes()
                if key not in seen:
                    seen.add(key)
                    nxt.append(p)
        if len(seen) > limit:
            raise RuntimeError("word enumeration did not close")
        if nxt:
            depth += 1
        frontier = nxt
    return len(seen), depth


def word_matrix(matrix, word):
    gens = reflection_matrices(matrix)
    m = np.eye(len(gens), dtype=np.int64)
    for i in word:
        m = m @ gens[i]
    return m


def root_image(matrix, word, i):
    """Coefficient vector of w(alpha_i) for w given by ``word``."""
    return tuple(int(x) for x in word_matrix(matrix, word)[:, i])


def subword_lower_set(W, w):
    """Indices u with u <= w, by deleting letters from a fixed reduced word of w.

    Only subwords that are themselves reduced count.
    """
    word = W.words[w]
    out = set()
    for k in range(len(word) + 1):
        for pos in combinations(range(len(word)), k):
            sub = [word[p] for p in pos]
            u = W.word_to_index(sub)
            if W.length[u] == k:
                out.add(u)
    return out


def bruhat_subword(W, u, w):
    return u in subword_lower_set(W, w)


def min_double_by_scan(W, w, K, J):
    best = None
    for a in W.parabolic(K):
        aw = W.mul(a, w)
        for b in W.parabolic(J):
            x = W.mul(aw, b)
            if best is None or W.length[x] < W.length[best]:
                best = x
    return best
