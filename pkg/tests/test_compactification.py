import itertools

import numpy as np
import pytest

from conftest import flip, ident
from weyl_strata.compactification import (
    ClosurePoset,
    GPieceIndex,
    K1_of,
    boundary_profile,
    closure_leq,
    enumerate_pieces,
    make_piece,
    piece_dimension,
    saturate,
    semistable_g_pieces,
)
from weyl_strata.errors import IndexMismatch, InvalidIndex, NoNormalization
from weyl_strata.weyl import diagram_automorphisms


@pytest.fixture
def A1(G):
    W = G("A1")
    return W, ident(W)


def test_dimension_examples(A1, G):
    W, d = A1
    assert piece_dimension(make_piece(W, 1, 0, 0, 1, d)) == 3
    assert piece_dimension(make_piece(W, 0, 0, 0, 0, d)) == 1
    for name in ("A2", "B3"):
        V = G(name)
        assert piece_dimension(make_piece(V, V.full, 0, 0, 0, ident(V))) == V.w0.length + V.n


def test_invalid_index(A1):
    W, d = A1
    with pytest.raises(InvalidIndex):
        make_piece(W, 1, 1, 0, 0, d)  # s not in W^{0}
    with pytest.raises(InvalidIndex):
        make_piece(W, 0, 0, 1, 1, d)  # s not in ^{0}W


def test_enumerate_counts(A1, G):
    W, d = A1
    assert len(enumerate_pieces(W, 0, d)) == 6
    assert len(enumerate_pieces(W, 1, d)) == 3
    for name in ("A2", "B2", "A3"):
        V = G(name)
        for delta in diagram_automorphisms(V.ct):
            for K in range(1 << V.n):
                want = sum(len(V.reps_right(delta(J))) for J in range(1 << V.n)) * len(V.reps_left(K))
                pieces = enumerate_pieces(V, K, delta)
                assert len(pieces) == want == len(set(pieces))
                assert pieces == sorted(pieces)
        top = [p for p in enumerate_pieces(V, V.full, ident(V)) if p.J == V.full]
        assert len(top) == 1


def test_closure_examples(A1):
    W, d = A1
    top = make_piece(W, 1, 0, 0, 0, d)
    assert closure_leq(top, top)
    assert closure_leq(make_piece(W, 0, 0, 0, 0, d), top)
    assert not closure_leq(make_piece(W, 0, 0, 1, 0, d), top)
    with pytest.raises(IndexMismatch):
        closure_leq(make_piece(W, 0, 0, 0, 1, d), top)


def test_downsets_a1(A1):
    W, d = A1
    P = ClosurePoset(W, 0, d)
    top = P.index(make_piece(W, 1, 0, 0, 0, d))
    below = {repr(p) for p in P.downset(top)}
    assert below == {"[{0},e,e]_{K={}}", "[{},e,e]_{K={}}", "[{},s0,s0]_{K={}}", "[{},s0,e]_{K={}}"}
    low = P.index(make_piece(W, 0, 0, 0, 0, d))
    assert {repr(p) for p in P.downset(low)} == {"[{},e,e]_{K={}}", "[{},s0,e]_{K={}}"}


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
def test_matrix_relation_equals_brute_force(G, name):
    W = G(name)
    for d in diagram_automorphisms(W.ct):
        for K in range(1 << W.n):
            P = ClosurePoset(W, K, d)
            brute = np.array([[closure_leq(q, p) for q in P.pieces] for p in P.pieces])
            assert (brute == P.rel).all()


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "A3", "G2"])
def test_partial_order(G, name):
    W = G(name)
    for d in diagram_automorphisms(W.ct):
        for K in range(1 << W.n):
            assert ClosurePoset(W, K, d).check_partial_order() is None


def test_partial_order_check_finds_cycle(A1):
    W, d = A1
    P = ClosurePoset(W, 0, d)
    P.rel[0, 1] = P.rel[1, 0] = True
    assert P.check_partial_order()["axiom"] == "antisymmetric"


def test_boundary_profile_examples(A1):
    W, d = A1
    assert boundary_profile(make_piece(W, 1, 0, 0, 0, d)) == {0: 1, 1: 2}
    assert boundary_profile(make_piece(W, 1, 0, 0, 1, d)) == {0: 2, 1: 3}


@pytest.mark.parametrize("name", ["A2", "B2", "A3"])
def test_boundary_profile_formula(G, name):
    W = G(name)
    for d in diagram_automorphisms(W.ct):
        for K in (0, W.full, 0b1):
            P = ClosurePoset(W, K, d)
            for i, p in enumerate(P.pieces):
                prof = P.boundary_profile(i)
                for Jp, best in prof.items():
                    assert best == P.dims[i] - bin(p.J).count("1") + bin(Jp).count("1")


def test_matrix_profile_matches_scan(G):
    W = G("A2")
    d = flip(W)
    P = ClosurePoset(W, 0b11, d)
    for i, p in enumerate(P.pieces):
        assert P.boundary_profile(i) == boundary_profile(p)


def test_dimension_monotone(G):
    W = G("B2")
    P = ClosurePoset(W, 0, ident(W))
    for i, j in zip(*np.nonzero(P.rel)):
        assert P.dims[j] <= P.dims[i]


def test_K1_examples(A1, G):
    W, d = A1
    assert K1_of(make_piece(W, 1, 0, 0, 0, d)) == 0
    assert K1_of(make_piece(W, 1, 0, 0, 1, d)) == 1
    assert K1_of(make_piece(W, 0, 0, 0, 1, d)) == 0
    V = G("A3")
    fl = flip(V)
    p = make_piece(V, 0b011, V.word_to_index([2, 1, 0]), V.word_to_index([0, 1, 2]), 0b010, fl)
    # delta(J) = {1,2} contains w^{-1}(1) = 2, while J itself does not
    assert K1_of(p) == 0b010
    assert K1_of(p, literal=True) == 0


def test_semistable(G):
    for name, n in (("A1", 2), ("A2", 4), ("A3", 8)):
        W = G(name)
        for d in diagram_automorphisms(W.ct):
            ss = semistable_g_pieces(W, d)
            assert len(ss) == n
            assert all(isinstance(z, GPieceIndex) and z.w.is_identity() for z in ss)


def test_semistable_order_is_inclusion(G):
    W = G("A3")
    for d in diagram_automorphisms(W.ct):
        P = ClosurePoset(W, W.full, d)
        idx = [P.index(z.as_piece()) for z in semistable_g_pieces(W, d)]
        for (J, i), (Jp, j) in itertools.product(enumerate(idx), repeat=2):
            assert P.rel[j, i] == (J & ~Jp == 0)


def test_saturate_examples(A1):
    W, d = A1
    e, s = W.identity, W.s(0)
    assert saturate(W, 0, s, e, 0, d) == make_piece(W, 0, 1, 0, 0, d)
    assert saturate(W, 0, e, s, 0, d) == make_piece(W, 0, 0, 1, 0, d)
    assert saturate(W, 1, e, e, 1, d) == make_piece(W, 1, 0, 0, 1, d)
    # l(y) - l(x) = 1 while every (w, v) with v = e has l(v) - l(w) = -1
    with pytest.raises(NoNormalization):
        saturate(W, 0, e, s, 1, d)
    assert saturate(W, 0, e, s, 1, d, mode="closure") == [make_piece(W, 0, 0, 0, 1, d), make_piece(W, 0, 1, 0, 1, d)]
    with pytest.raises(InvalidIndex):
        saturate(W, 1, s, e, 1, d)


def test_saturate_identity_when_K_empty(G):
    W = G("A2")
    d = ident(W)
    for J in range(4):
        for x in W.reps_right(J):
            for y in range(W.order):
                try:
                    p = saturate(W, J, x, y, 0, d)
                except NoNormalization:
                    continue
                assert p.w.index == x


def test_piece_label(A1):
    W, d = A1
    assert make_piece(W, 1, 0, 0, 0, d).label() == "J=1;w=[];v=[];dim=2"
