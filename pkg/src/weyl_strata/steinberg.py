"""Signed subset sums behind the Steinberg restriction identity.

For ``w`` in ``W^{J_delta} cap W^delta`` write ``X(K) = w^{-1}K cap J_delta``
(simple roots of J_delta that w sends into K) and ``J'`` for the left ascent
set of w. The identities checked here are:

* the per-w sum over delta-stable K' with ``w in ^{K'}W`` and ``X(K') = K`` of
  ``(-1)^|K'|`` equals ``(-1)^|K|`` when ``J' = w X(I)`` and 0 otherwise;
* membership conditions (1) and (2) of that sum agree;
* summing over all K, the multiplicity of each delta-stable target T inside
  J_delta is ``(-1)^|T|``.

Signs count delta-orbits: ``|K|`` means the number of delta-orbits in K (the
rank of the twisted Levi). For delta = id this is the number of nodes. The
node count is available as ``count="nodes"``; with a nontrivial delta it
breaks the identities (an interval of delta-stable subsets over an even orbit
no longer cancels).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import subsets as sb
from .errors import ConsistencyError, PreconditionFailure
from .parabolic import j_delta


@dataclass(frozen=True)
class SteinbergCell:
    J: int
    T: int
    multiplicity: int
    expected: int

    @property
    def passed(self):
        return self.multiplicity == self.expected


def delta_rank(K, delta):
    """Number of delta-orbits in a delta-stable K."""
    seen = 0
    count = 0
    for i in sb.bits(K):
        if seen >> i & 1:
            continue
        count += 1
        j = i
        while not seen >> j & 1:
            seen |= 1 << j
            j = delta.perm[j]
    return count


def sign(K, delta, count="orbits"):
    if count == "nodes":
        return (-1) ** sb.size(K)
    if count != "orbits":
        raise ValueError(f"unknown count {count!r}")
    return (-1) ** delta_rank(K, delta)


def _fixed(W, delta, w):
    return W.aut_table(delta)[w] == w


def _check_w(W, J, w, delta):
    Jd = j_delta(J, delta)
    if W.right_desc[w] & Jd or not _fixed(W, delta, w):
        raise PreconditionFailure(f"w={W.fmt_word(w)} is not in W^(J_delta) cap W^delta")
    return Jd


def _i(W, Jd, K, w):
    return W.simple_image(W.inv[w], K) & Jd


def i_of(W, J, K, w, delta):
    """w^{-1}K cap J_delta, as the nodes j in J_delta with w(alpha_j) simple in K."""
    w = getattr(w, "index", w)
    if delta(K) != K:
        raise PreconditionFailure(f"K={sb.fmt(K)} is not delta-stable")
    Jd = _check_w(W, J, w, delta)
    return _i(W, Jd, K, w)


def j_prime(W, w):
    """Largest K with w in ^K W: the left ascents of w."""
    w = getattr(w, "index", w)
    return W.full & ~W.left_desc[w]


def _stable_subsets(W, delta):
    return [K for K in range(1 << W.n) if delta(K) == K]


def _frame(W, J, w, K, delta):
    Jd = _check_w(W, J, w, delta)
    X = _i(W, Jd, W.full, w)
    if K & ~X:
        raise PreconditionFailure(f"K={sb.fmt(K)} is not inside I(J, I, w, delta)={sb.fmt(X)}")
    return Jd, X


def signed_sum_brute(W, J, w, K, delta, count="orbits"):
    Jd, _ = _frame(W, J, w, K, delta)
    total = 0
    for Kp in _stable_subsets(W, delta):
        if W.left_desc[w] & Kp == 0 and _i(W, Jd, Kp, w) == K:
            total += sign(Kp, delta, count)
    return total


def signed_sum_closed(W, J, w, K, delta, count="orbits"):
    """(-1)^|K| if delta(K) = K and J' - w I(J, I, w, delta) is empty, else 0."""
    _, X = _frame(W, J, w, K, delta)
    free = j_prime(W, w) & ~W.simple_image(w, X)
    if delta(K) == K and free == 0:
        return sign(K, delta, count)
    return 0


def signed_sum(W, J, w, K, delta):
    """Brute-force signed sum, cross-checked against its closed form."""
    w = getattr(w, "index", w)
    brute = signed_sum_brute(W, J, w, K, delta)
    closed = signed_sum_closed(W, J, w, K, delta)
    if brute != closed:
        raise ConsistencyError(
            "signed sum differs from its closed form",
            {"J": sb.fmt(J), "w": W.fmt_word(w), "K": sb.fmt(K), "brute": brute, "closed": closed},
        )
    return brute


def condition_equiv(W, J, w, K, Kp, delta):
    """Evaluate the two membership conditions independently; returns (cond1, cond2)."""
    w = getattr(w, "index", w)
    Jd, X = _frame(W, J, w, K, delta)
    if delta(Kp) != Kp:
        raise PreconditionFailure(f"K'={sb.fmt(Kp)} is not delta-stable")
    cond1 = W.left_desc[w] & Kp == 0 and _i(W, Jd, Kp, w) == K
    wK = W.simple_image(w, K)
    free = j_prime(W, w) & ~W.simple_image(w, X)
    cond2 = delta(K) == K and sb.is_subset(wK, Kp) and sb.is_subset(Kp, wK | free)
    return cond1, cond2


def multiplicity_raw(W, J, T, delta, count="orbits"):
    """Sum over delta-stable K of (-1)^|K| * #{w in ^K W^{J_delta} cap W^delta : X(K) = T}."""
    Jd = j_delta(J, delta)
    tab = W.aut_table(delta)
    total = 0
    for K in _stable_subsets(W, delta):
        n_hits = 0
        for w in W.reps_double(K, Jd):
            if tab[w] == w and _i(W, Jd, K, w) == T:
                n_hits += 1
        total += sign(K, delta, count) * n_hits
    return total


def expected_multiplicity(T, delta, count="orbits"):
    return sign(T, delta, count) if delta(T) == T else 0


def steinberg_multiplicity(W, J, T, delta):
    if delta(T) != T or T & ~j_delta(J, delta):
        raise PreconditionFailure(f"T={sb.fmt(T)} must be delta-stable inside J_delta")
    return multiplicity_raw(W, J, T, delta)


def steinberg_table(W, delta, count="orbits", stable_only=True):
    """One cell per (J, T inside J_delta); T ranges over delta-stable subsets unless ``stable_only`` is off."""
    cells = []
    for J in range(1 << W.n):
        Jd = j_delta(J, delta)
        for T in sb.subsets(Jd):
            if stable_only and delta(T) != T:
                continue
            m = multiplicity_raw(W, J, T, delta, count)
            cells.append(SteinbergCell(J, T, m, expected_multiplicity(T, delta, count)))
    return cells


def degenerate_case_holds(W, J, w, delta):
    """If J' = w I(J, I, w, delta) then w = w0 w0^{J_delta}."""
    w = getattr(w, "index", w)
    Jd = _check_w(W, J, w, delta)
    X = _i(W, Jd, W.full, w)
    if j_prime(W, w) != W.simple_image(w, X):
        return True
    return w == W.mul(W.order - 1, W.longest_index(Jd))
