import json

import pytest

from conftest import flip, ident
from weyl_strata import export
from weyl_strata.compactification import ClosurePoset, closure_leq, enumerate_pieces, make_piece
from weyl_strata.errors import InvalidIndex, NotAPoset
from weyl_strata.verify import run_verification


def test_dot_empty_and_single(G):
    assert export.to_dot([], []) == "digraph closure {\n}\n"
    W = G("A1")
    p = make_piece(W, 0, 0, 0, 0, ident(W))
    text = export.to_dot([p], [])
    assert text.count("[label=") == 1 and "->" not in text


def test_dot_a1_poset(G):
    W = G("A1")
    d = ident(W)
    P = ClosurePoset(W, 0, d)
    edges = P.covering_pairs()
    text = export.to_dot(P.pieces, edges)
    labels = export.dot_labels(text)
    assert len(labels) == 6
    back = [export.parse_label(W, lab, 0, d) for lab in labels]
    assert back == sorted(P.pieces)
    for lo, hi in edges:
        assert closure_leq(P.pieces[lo], P.pieces[hi])


def test_dot_cycle(G):
    W = G("A1")
    d = ident(W)
    ps = enumerate_pieces(W, 0, d)[:2]
    with pytest.raises(NotAPoset):
        export.to_dot(ps, [(0, 1), (1, 0)])
    with pytest.raises(NotAPoset):
        export.to_dot(ps, [(0, 0)])


def test_words(G):
    W = G("A2")
    assert export.word_text(W.identity.word) == "[]"
    assert export.word_text(W.w0.word) == "[0,1,0]"
    assert export.parse_word(W, "[1,0,1]") == W.order - 1
    assert export.parse_word(W, [0, 1]) == W.word_to_index([0, 1])
    with pytest.raises(InvalidIndex):
        export.parse_word(W, "[0,0]")
    with pytest.raises(InvalidIndex):
        export.parse_word(W, "0,1")
    with pytest.raises(InvalidIndex):
        export.parse_word(W, "[5]")


def test_csv_header_only():
    assert export.pieces_to_csv([]) == "J,w_word,v_word,K,dim\n"


@pytest.mark.parametrize("name", ["A2", "B2", "A3"])
def test_json_and_csv_round_trip(G, name):
    W = G(name)
    d = flip(W) if name != "B2" else ident(W)
    pieces = enumerate_pieces(W, 0b01 if d.is_identity else 0, d)
    text = export.pieces_to_json(W.ct.label, d, pieces)
    doc = json.loads(text)
    assert list(doc) == ["type", "delta", "pieces"]
    assert list(doc["pieces"][0]) == ["J", "w", "v", "K", "dim"]
    assert export.pieces_from_json(W, text) == sorted(pieces)
    assert export.pieces_from_csv(W, export.pieces_to_csv(pieces), d) == sorted(pieces)
    assert export.pieces_to_json(W.ct.label, d, list(reversed(pieces))) == text


def test_label_parse_accepts_any_reduced_word(G):
    W = G("A2")
    d = ident(W)
    p = export.parse_label(W, "J=0;w=[1,0,1];v=[]", 0, d)
    assert p.w == W.w0
    with pytest.raises(InvalidIndex):
        export.parse_label(W, "J=0;w=[];v=[];dim=9", 0, d)
    with pytest.raises(InvalidIndex):
        export.parse_label(W, "nonsense", 0, d)


def test_report_serialization_is_deterministic():
    a = export.reports_to_json(run_verification(("A1", "A2"), "all"))
    b = export.reports_to_json(run_verification(("A1", "A2"), "all"))
    assert a == b
    assert "wall_time" not in a


def test_report_pass_flag():
    r = export.Report("x", "A1", "0")
    assert r.passed
    r.fail({"why": "test"})
    assert not r.passed and r.record()["pass"] is False


def test_steinberg_csv(G):
    from weyl_strata.steinberg import steinberg_table

    W = G("A1")
    text = export.steinberg_to_csv("A1", ident(W), steinberg_table(W, ident(W)))
    assert text.splitlines()[0] == "type,delta,J,T,multiplicity,expected,pass"
    assert text.splitlines()[-1] == "A1,0,1,1,-1,-1,true"
