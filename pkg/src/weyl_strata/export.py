"""Deterministic JSON, CSV and DOT serialization.

Words are ShortLex-minimal reduced words written as ``[0,1,0]``. Parsers accept
any reduced word and renormalize it.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter

from .compactification import make_piece, piece_dimension
from .errors import InvalidIndex, NotAPoset
from .weyl import DiagramAut

PIECE_COLUMNS = ("J", "w_word", "v_word", "K", "dim")


def dumps(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def word_text(word):
    return "[" + ",".join(str(i) for i in word) + "]"


def parse_word(W, text):
    """Element index of a reduced word given as ``[i,j,...]`` or a list."""
    if isinstance(text, str):
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise InvalidIndex(f"word {text!r} must look like [i,j,...]")
        body = body[1:-1].strip()
        word = [int(t) for t in body.split(",")] if body else []
    else:
        word = [int(t) for t in text]
    if any(i < 0 or i >= W.n for i in word):
        raise InvalidIndex(f"word {word} uses a node outside 0..{W.n - 1}")
    t = W.word_to_index(word)
    if W.length[t] != len(word):
        raise InvalidIndex(f"word {word} is not reduced")
    return t


# ---- pieces -----------------------------------------------------------------

def piece_record(p):
    W = p.group
    return {
        "J": p.J,
        "w": list(W.words[p.w.index]),
        "v": list(W.words[p.v.index]),
        "K": p.K,
        "dim": piece_dimension(p),
    }


def piece_from_record(W, rec, delta):
    p = make_piece(W, int(rec["J"]), parse_word(W, rec["w"]), parse_word(W, rec["v"]), int(rec["K"]), delta)
    if "dim" in rec and int(rec["dim"]) != piece_dimension(p):
        raise InvalidIndex(f"record dim {rec['dim']} disagrees with {piece_dimension(p)}")
    return p


def pieces_to_json(type_label, delta, pieces, **extra):
    doc = {"type": type_label, "delta": list(delta.perm)}
    doc.update(extra)
    doc["pieces"] = [piece_record(p) for p in sorted(pieces)]
    return dumps(doc)


def pieces_from_json(W, text):
    doc = json.loads(text)
    delta = DiagramAut.validated(doc["delta"], W.ct)
    return [piece_from_record(W, rec, delta) for rec in doc["pieces"]]


def _csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def pieces_to_csv(pieces):
    rows = []
    for p in sorted(pieces):
        rec = piece_record(p)
        rows.append([rec["J"], word_text(rec["w"]), word_text(rec["v"]), rec["K"], rec["dim"]])
    return _csv(PIECE_COLUMNS, rows)


def pieces_from_csv(W, text, delta):
    reader = csv.DictReader(io.StringIO(text))
    return [
        piece_from_record(W, {"J": r["J"], "w": r["w_word"], "v": r["v_word"], "K": r["K"], "dim": r["dim"]}, delta)
        for r in reader
    ]


def rows_to_csv(header, rows):
    return _csv(header, rows)


# ---- DOT --------------------------------------------------------------------

_LABEL = re.compile(r"^J=(\d+);w=(\[[\d,\s]*\]);v=(\[[\d,\s]*\])(?:;dim=(\d+))?$")
_NODE = re.compile(r'^\s*(n\d+) \[label="([^"]*)"\];$')


def to_dot(pieces, edges, name="closure"):
    """DOT text for nodes ``pieces`` and covering edges ``(lower, upper)`` given as positions.

    Nodes are written in canonical piece order; a cycle raises NotAPoset.
    """
    order = sorted(range(len(pieces)), key=lambda i: pieces[i].key())
    pos = {old: new for new, old in enumerate(order)}
    ts = TopologicalSorter({i: set() for i in range(len(pieces))})
    for lo, hi in edges:
        if lo == hi:
            raise NotAPoset(f"self-loop at {pieces[lo]!r}")
        ts.add(hi, lo)
    try:
        ts.prepare()
    except CycleError as exc:
        raise NotAPoset(f"cycle among {[repr(pieces[i]) for i in exc.args[1]]}") from None
    lines = [f"digraph {name} {{"]
    for new, old in enumerate(order):
        lines.append(f'  n{new} [label="{pieces[old].label()}"];')
    for lo, hi in sorted((pos[a], pos[b]) for a, b in edges):
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_labels(text):
    """Node labels of a DOT document written by ``to_dot``, in node order."""
    return [m.group(2) for m in map(_NODE.match, text.splitlines()) if m]


def parse_label(W, label, K, delta):
    """Piece from ``J=<bitmask>;w=[..];v=[..]`` with an optional ``;dim=<n>``."""
    m = _LABEL.match(label.strip())
    if not m:
        raise InvalidIndex(f"unparseable piece label {label!r}")
    J, w, v, dim = m.groups()
    rec = {"J": J, "w": w, "v": v, "K": K}
    if dim is not None:
        rec["dim"] = dim
    return piece_from_record(W, rec, delta)


def poset_to_json(type_label, delta, K, pieces, edges):
    order = sorted(range(len(pieces)), key=lambda i: pieces[i].key())
    pos = {old: new for new, old in enumerate(order)}
    doc = {
        "type": type_label,
        "delta": list(delta.perm),
        "K": K,
        "pieces": [piece_record(pieces[i]) for i in order],
        "edges": [list(e) for e in sorted((pos[a], pos[b]) for a, b in edges)],
    }
    return dumps(doc)


# ---- reports ----------------------------------------------------------------

@dataclass
class Report:
    """Outcome of one verification suite on one (type, delta)."""

    suite: str
    type_label: str
    delta_label: str
    cases: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    wall_time: float = 0.0
    # "suite" for implementation checks, "consistency" for identities
    kind: str = "consistency"

    @property
    def passed(self):
        return not self.failures

    def fail(self, witness):
        self.failures.append(witness)

    def record(self, include_time=False):
        out = {
            "suite": self.suite,
            "type": self.type_label,
            "delta": self.delta_label,
            "cases": self.cases,
            "pass": self.passed,
            "failures": self.failures,
            "notes": self.notes,
        }
        if include_time:
            out["wall_time"] = round(self.wall_time, 3)
        return out


def reports_to_json(reports, include_time=False):
    return dumps({"reports": [r.record(include_time) for r in reports], "pass": all(r.passed for r in reports)})


def reports_to_csv(reports):
    rows = [
        [r.suite, r.type_label, r.delta_label, r.cases, len(r.failures), "pass" if r.passed else "FAIL"]
        for r in reports
    ]
    return _csv(("suite", "type", "delta", "cases", "failures", "result"), rows)


def steinberg_to_csv(type_label, delta, cells):
    rows = [
        [type_label, delta.label(), c.J, c.T, c.multiplicity, c.expected, "true" if c.passed else "false"]
        for c in cells
    ]
    return _csv(("type", "delta", "J", "T", "multiplicity", "expected", "pass"), rows)
