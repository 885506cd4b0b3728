import pytest

from conftest import flip, ident
from weyl_strata.compactification import K1_of, make_piece, semistable_g_pieces
from weyl_strata.errors import KNotDeltaStable
from weyl_strata.parabolic import (
    bp_targets,
    epsilon,
    isolated_boundary_index,
    j_delta,
    k_cap_w_jdelta,
    parabolic_closure_index,
    pp_index_sets,
)
from weyl_strata.weyl import diagram_automorphisms

REFERENCE = ["A1", "A2", "B2", "G2", "A3", "B3"]


def test_j_delta(G):
    W = G("A2")
    assert all(j_delta(J, ident(W)) == J for J in range(4))
    assert j_delta(0b01, flip(W)) == 0
    assert j_delta(0b11, flip(W)) == 0b11
    V = G("A3")
    assert j_delta(0b011, flip(V)) == 0b010
    assert j_delta(0b101, flip(V)) == 0b101


def test_bp_examples(G):
    W = G("A1")
    pieces = parabolic_closure_index(W, 0, ident(W))
    assert sorted(map(repr, pieces)) == ["[{0},e,e]_{K={}}", "[{},e,e]_{K={}}", "[{},s0,s0]_{K={}}"]
    A2 = G("A2")
    d = flip(A2)
    J0 = {p for p in parabolic_closure_index(A2, 0, d) if p.J == 0b01}
    assert {p.v.index for p in J0} == {0, A2.word_to_index([0, 1])}
    for V in (G("A2"), G("B3")):
        for delta in diagram_automorphisms(V.ct):
            full = parabolic_closure_index(V, V.full, delta)
            assert full == {z.as_piece() for z in semistable_g_pieces(V, delta)}


def test_not_delta_stable(G):
    W = G("A2")
    for fn in (parabolic_closure_index, pp_index_sets, isolated_boundary_index):
        with pytest.raises(KNotDeltaStable):
            fn(W, 0b01, flip(W))
    with pytest.raises(KNotDeltaStable):
        epsilon(W, 0, 0b01, flip(W))


def test_epsilon_examples(G):
    W = G("A2")
    d = flip(W)
    eps = epsilon(W, 0b01, 0, d)
    assert dict(eps.pairs) == {0: 0, W.order - 1: W.word_to_index([0, 1])}
    for K in (0, 0b11):
        eps = epsilon(W, 0, K, d)
        assert all(w == x for w, x in eps.pairs)


@pytest.mark.parametrize("name", REFERENCE)
def test_epsilon_bijection_everywhere(G, name):
    W = G(name)
    for d in diagram_automorphisms(W.ct):
        tab = W.aut_table(d)
        for K in range(1 << W.n):
            if d(K) != K:
                continue
            for J in range(1 << W.n):
                eps = epsilon(W, J, K, d)
                assert sorted(x for _, x in eps.pairs) == sorted(bp_targets(W, J, K, d))
                Jd = j_delta(J, d)
                for w, x in eps.pairs:
                    assert K1_of(make_piece(W, J, tab[x], x, K, d)) == k_cap_w_jdelta(W, K, w, Jd)


@pytest.mark.parametrize("name", REFERENCE)
def test_three_descriptions_agree(G, name):
    W = G(name)
    for d in diagram_automorphisms(W.ct):
        for K in range(1 << W.n):
            if d(K) == K:
                bp = parabolic_closure_index(W, K, d)
                assert all(s == bp for s in pp_index_sets(W, K, d))


def test_pp_examples(G):
    W = G("A1")
    first, second, third = pp_index_sets(W, 0, ident(W))
    assert first == second == third == parabolic_closure_index(W, 0, ident(W))
    A2 = G("A2")
    d = flip(A2)
    count = sum(
        sum(1 for x in A2.reps_right(J) if any(A2.aut_table(d)[A2.mul(x, b)] == A2.mul(x, b) for b in A2.parabolic(J)))
        for J in range(4)
    )
    assert len(pp_index_sets(A2, 0, d)[0]) == count


def test_isolated_boundary_examples(G):
    W = G("A1")
    assert [(J, w.index) for J, w in isolated_boundary_index(W, 1, ident(W))] == [(1, 0)]
    A2 = G("A2")
    assert [(J, w.index) for J, w in isolated_boundary_index(A2, 0b11, flip(A2))] == [(0b11, 0)]
    pairs = isolated_boundary_index(A2, 0, ident(A2))
    assert len(pairs) == sum(len(A2.reps_right(J)) for J in range(4))


def test_literal_K1_differs_on_a3_flip(G):
    """With a nontrivial delta, testing w^{-1}(K') against J rather than delta(J) breaks the cross-check."""
    W = G("A3")
    d = flip(W)
    tab = W.aut_table(d)
    misses = 0
    for K in range(8):
        if d(K) != K:
            continue
        for J in range(8):
            Jd = j_delta(J, d)
            for w, x in epsilon(W, J, K, d).pairs:
                p = make_piece(W, J, tab[x], x, K, d)
                misses += K1_of(p, literal=True) != k_cap_w_jdelta(W, K, w, Jd)
    assert misses == 2
