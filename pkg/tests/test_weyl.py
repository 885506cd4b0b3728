import itertools

import pytest

from conftest import flip, ident
from weyl_strata import oracles
from weyl_strata.cartan import CartanType
from weyl_strata.errors import AutMismatch, ConfigError, GroupMismatch, NotFiniteType, RankCapExceeded
from weyl_strata.weyl import DiagramAut, build_group, diagram_automorphisms

ORDERS = {"A1": (2, 1), "A2": (6, 3), "B2": (8, 4), "G2": (12, 6), "A3": (24, 6), "B3": (48, 9), "C3": (48, 9)}


@pytest.mark.parametrize("name", sorted(ORDERS))
def test_order_and_longest_length(G, name):
    W = G(name)
    assert (W.order, W.w0.length) == ORDERS[name]
    assert oracles.enumerate_by_words(W.ct.matrix) == ORDERS[name]


def test_d4_order():
    assert build_group("D4").order == 192


def test_multiply_examples(G):
    W = G("A2")
    s0, s1 = W.s(0), W.s(1)
    assert all(W.identity * w == w for w in W)
    assert (s0 * s0).is_identity()
    w = s0 * s1 * s0
    assert w == W.w0 and w.length == 3
    assert repr(w) == "s0s1s0" and repr(W.identity) == "e"


def test_inverse_and_words(G):
    for name in ("A2", "B3", "G2"):
        W = G(name)
        for w in W:
            assert (w * w.inverse()).is_identity()
            assert W.from_word(w.word) == w
            assert len(w.word) == w.length


def test_bruhat_examples(G):
    W = G("A2")
    assert all(W.bruhat_leq(W.identity, w) for w in W)
    assert not W.bruhat_leq(W.s(0), W.s(1))
    assert W.bruhat_leq(W.s(0), W.w0)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_bruhat_matches_subword_oracle(G, name):
    W = G(name)
    for w in range(W.order):
        low = oracles.subword_lower_set(W, w)
        assert {u for u in range(W.order) if W.leq(u, w)} == low


def test_longest_element(G):
    W = G("A2")
    assert W.longest_element(0).is_identity()
    assert W.longest_element(0b11) == W.w0
    assert W.longest_element(0b01) == W.s(0)


def test_min_coset_rep_examples(G):
    W = G("A2")
    for w in W:
        assert W.min_coset_rep(w, 0, 0) == w
    assert W.min_coset_rep(W.w0, 0, 0b10) == W.from_word([1, 0])
    # the double coset W_{0} w0 W_{1} is {w0, s1 s0}; its unique short element is s1 s0
    assert W.min_coset_rep(W.w0, 0b01, 0b10) == W.from_word([1, 0])


@pytest.mark.parametrize("name", ["A2", "B2", "A3"])
def test_min_coset_rep_is_minimal(G, name):
    W = G(name)
    for K, J in itertools.product(range(1 << W.n), repeat=2):
        for t in range(W.order):
            m = W.min_double(t, K, J)
            assert m == oracles.min_double_by_scan(W, t, K, J)
            if K == 0:
                assert not W.right_desc[m] & J


def test_maps_into_simples(G):
    W = G("A2")
    assert W.maps_into_simples(W.identity, 0b11) == 0b11
    assert W.maps_into_simples(W.s(0), 0b10) is None
    assert W.maps_into_simples(W.from_word([0, 1]), 0b01) == 0b10


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_root_action_matches_matrices(G, name):
    W = G(name)
    for w in W:
        for i in range(W.n):
            img = W.maps_into_simples(w, 1 << i)
            coefs = oracles.root_image(W.ct.matrix, w.word, i)
            if img is None:
                assert sum(1 for c in coefs if c) > 1 or min(coefs) < 0
            else:
                assert coefs == tuple(1 if j == img.bit_length() - 1 else 0 for j in range(W.n))


def test_automorphisms(G):
    W = G("A2")
    d = flip(W)
    assert all(W.is_delta_fixed(ident(W), w) for w in W)
    assert {w for w in W if W.is_delta_fixed(d, w)} == {W.identity, W.w0}
    assert W.apply_aut(d, W.s(0)) == W.s(1)
    assert [a.perm for a in diagram_automorphisms(W.ct)] == [(0, 1), (1, 0)]
    assert len(diagram_automorphisms(G("B2").ct)) == 1
    assert len(diagram_automorphisms(build_group("D4").ct)) == 6


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_automorphism_preserves_length_and_order(G, name):
    W = G(name)
    for d in diagram_automorphisms(W.ct):
        tab = W.aut_table(d)
        for u in range(W.order):
            assert W.length[tab[u]] == W.length[u]
            for w in range(W.order):
                assert W.leq(u, w) == W.leq(tab[u], tab[w])


def test_support(G):
    W = G("A2")
    assert W.support(W.identity) == 0
    assert W.support(W.w0) == 0b11
    assert W.support(W.s(1)) == 0b10
    for name in ("B3", "A3"):
        W = G(name)
        assert all(W.support(w) == W.support(w.inverse()) for w in W)


def test_length_subadditive(G):
    W = G("A3")
    for u in range(W.order):
        for v in range(W.order):
            uv = W.mul(u, v)
            assert W.length[uv] <= W.length[u] + W.length[v]
            if W.length[uv] == W.length[u] + W.length[v]:
                assert W.word_to_index(W.words[u] + W.words[v]) == uv


def test_config_errors():
    with pytest.raises(NotFiniteType):
        CartanType.from_matrix([[2, -2], [-2, 2]])  # affine A1
    with pytest.raises(NotFiniteType):
        CartanType.from_matrix([[2, 1], [1, 2]])
    with pytest.raises(NotFiniteType):
        CartanType.from_matrix([[2, -1], [0, 2]])
    with pytest.raises(RankCapExceeded):
        build_group("A4", rank_cap=3)
    with pytest.raises(ConfigError):
        build_group("Q2")
    with pytest.raises(ConfigError):
        DiagramAut.validated((1, 0), build_group("B2").ct)


def test_custom_matrix_equals_named():
    W = build_group([[2, -1], [-3, 2]])
    assert W.order == 12 and W.ct.label == "custom"


def test_group_and_aut_mismatch(G):
    with pytest.raises(GroupMismatch):
        G("A2").s(0) * G("B2").s(0)
    with pytest.raises(AutMismatch):
        G("A2").aut_table(DiagramAut((0, 1, 2)))


def test_elements_sorted_shortlex(G):
    W = G("B3")
    keys = [(w.length, w.word) for w in W]
    assert keys == sorted(keys)
    assert len({w.perm for w in W}) == W.order
