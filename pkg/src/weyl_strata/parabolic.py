"""Closure of a parabolic in the semi-stable locus, at the level of piece indices.

Three routes to the same piece set are provided so they can be compared:
the coset-condition description (``parabolic_closure_index``), the epsilon
map ``w -> min(w W_J)`` (``epsilon``), and the three unions of
``pp_index_sets``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import subsets as sb
from .compactification import make_piece
from .errors import BijectionFailure, KNotDeltaStable


def j_delta(J, delta):
    """Largest delta-stable subset of J."""
    out = J
    while delta(out) & out != out:
        out &= delta(out)
    return out


def _require_stable(K, delta):
    if delta(K) != K:
        raise KNotDeltaStable(f"K={sb.fmt(K)} is not delta-stable")


def delta_fixed(W, delta):
    tab = W.aut_table(delta)
    return [t for t in range(W.order) if tab[t] == t]


def coset_meets_fixed(W, x, J, delta):
    """Whether x W_J contains a delta-fixed element (scan of the coset)."""
    tab = W.aut_table(delta)
    return any(tab[W.mul(x, b)] == W.mul(x, b) for b in W.parabolic(J))


def bp_targets(W, J, K, delta):
    """{x in ^K W^J : x W_J meets W^delta}."""
    return [x for x in W.reps_double(K, J) if coset_meets_fixed(W, x, J, delta)]


def parabolic_closure_index(W, K, delta):
    """Pieces [J, delta(w), w]_{K, delta} with w in ^K W^J and w W_J meeting W^delta."""
    _require_stable(K, delta)
    tab = W.aut_table(delta)
    out = set()
    for J in range(1 << W.n):
        for x in bp_targets(W, J, K, delta):
            out.add(make_piece(W, J, tab[x], x, K, delta))
    return out


@dataclass(frozen=True)
class EpsilonMap:
    J: int
    K: int
    delta: object
    pairs: tuple  # (w, epsilon(w)) as element indices


def k_cap_w_jdelta(W, K, w, Jd):
    """K cap w(J_delta): nodes i in K with w^{-1}(alpha_i) a simple root in J_delta."""
    winv = W.inv[w]
    return sb.from_nodes(i for i in sb.bits(K) if (W.maps_simples(winv, 1 << i) or 0) & Jd)


def epsilon(W, J, K, delta):
    """w -> min(w W_J) on ^K W^{J_delta} cap W^delta, checked to be a bijection onto bp_targets.

    Also checks that the largest delta-stable K' in K with
    epsilon(w)^{-1}(K') in J equals K cap w(J_delta).
    """
    _require_stable(K, delta)
    Jd = j_delta(J, delta)
    tab = W.aut_table(delta)
    domain = [w for w in W.reps_double(K, Jd) if tab[w] == w]
    pairs = tuple((w, W.min_double(w, 0, J)) for w in domain)
    images = [x for _, x in pairs]
    target = bp_targets(W, J, K, delta)
    witness = {"J": sb.fmt(J), "K": sb.fmt(K), "delta": list(delta.perm)}
    if len(set(images)) != len(images):
        dup = next(x for x in images if images.count(x) > 1)
        raise BijectionFailure(
            "epsilon is not injective",
            witness | {"image": W.fmt_word(dup), "preimages": [W.fmt_word(w) for w, x in pairs if x == dup]},
        )
    if set(images) != set(target):
        raise BijectionFailure(
            "epsilon image differs from target",
            witness
            | {
                "missing": [W.fmt_word(x) for x in sorted(set(target) - set(images))],
                "extra": [W.fmt_word(x) for x in sorted(set(images) - set(target))],
            },
        )
    for w, x in pairs:
        xinv = W.inv[x]
        best = 0
        for Kp in sb.subsets(K):
            if delta(Kp) != Kp:
                continue
            img = W.maps_simples(xinv, Kp)
            if img is not None and not img & ~J:
                best |= Kp
        expected = k_cap_w_jdelta(W, K, w, Jd)
        if best != expected:
            raise BijectionFailure(
                "max K' formula fails",
                witness | {"w": W.fmt_word(w), "max": sb.fmt(best), "K cap w(J_delta)": sb.fmt(expected)},
            )
    return EpsilonMap(J, K, delta, pairs)


def pp_index_sets(W, K, delta):
    """The three unions describing the closure, each collapsed to a set of pieces."""
    _require_stable(K, delta)
    tab = W.aut_table(delta)
    fixed_K = [w for w in W.reps_left(K) if tab[w] == w]

    def piece(J, w):
        x = W.min_double(w, 0, J)
        return make_piece(W, J, tab[x], x, K, delta)

    first = set()
    for J in range(1 << W.n):
        Jd = j_delta(J, delta)
        for w in W.reps_double(K, Jd):
            if tab[w] == w:
                first.add(piece(J, w))
    second = set()
    for J in range(1 << W.n):
        for w in fixed_K:
            second.add(piece(J, w))
    third = set()
    for w in fixed_K:
        third |= {piece(J, w) for J in range(1 << W.n)}
    return first, second, third


def isolated_boundary_index(W, K, delta):
    """(J, w) with w in ^K W^{J_delta} cap W^delta and w^{-1}(K) inside J_delta."""
    _require_stable(K, delta)
    tab = W.aut_table(delta)
    out = []
    for J in range(1 << W.n):
        Jd = j_delta(J, delta)
        for w in W.reps_double(K, Jd):
            if tab[w] != w:
                continue
            img = W.maps_simples(W.inv[w], K)
            if img is not None and not img & ~Jd:
                out.append((J, W.elements[w]))
    return out
