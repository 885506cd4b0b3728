"""Index combinatorics of P_K-stable pieces [J, w, v]_{K, delta}.

A piece is named by ``J`` (a boundary orbit), ``w`` in ``W^{delta(J)}``,
``v`` in ``^K W`` and the pair ``(K, delta)``. Everything here is a statement
about these indices; no varieties are built.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import subsets as sb
from .errors import (
    ConsistencyError,
    IndexMismatch,
    InvalidIndex,
    NoNormalization,
)
from .weyl import DiagramAut, WeylElement


@dataclass(frozen=True)
class PieceIndex:
    J: int
    w: WeylElement
    v: WeylElement
    K: int
    delta: DiagramAut

    def __post_init__(self):
        W = self.w.group
        if self.v.group is not W:
            raise InvalidIndex("w and v come from different groups")
        if W.right_desc[self.w.index] & self.delta(self.J):
            raise InvalidIndex(f"w={self.w!r} is not in W^delta(J) for J={sb.fmt(self.J)}")
        if W.left_desc[self.v.index] & self.K:
            raise InvalidIndex(f"v={self.v!r} is not in ^K W for K={sb.fmt(self.K)}")

    @property
    def group(self):
        return self.w.group

    def key(self):
        return (self.J, self.w.index, self.v.index)

    def __lt__(self, other):
        return self.key() < other.key()

    def label(self):
        W = self.group
        return (
            f"J={self.J};w={W.fmt_word(self.w.index)};v={W.fmt_word(self.v.index)};"
            f"dim={piece_dimension(self)}"
        )

    def __repr__(self):
        return f"[{sb.fmt(self.J)},{self.w!r},{self.v!r}]_{{K={sb.fmt(self.K)}}}"


@dataclass(frozen=True)
class GPieceIndex:
    """Z_{J, w; delta} = [J, w, 1]_{I, delta}."""

    J: int
    w: WeylElement
    delta: DiagramAut

    def as_piece(self):
        W = self.w.group
        return PieceIndex(self.J, self.w, W.identity, W.full, self.delta)


def make_piece(W, J, w, v, K, delta):
    """Build a PieceIndex from indices or elements."""
    w = w if isinstance(w, WeylElement) else W.elements[w]
    v = v if isinstance(v, WeylElement) else W.elements[v]
    return PieceIndex(J, w, v, K, delta)


def piece_dimension(p):
    W = p.group
    d = (
        W.length[-1]
        + sb.size(p.J)
        + p.v.length
        - p.w.length
        + W.length[W.longest_index(p.K)]
    )
    if d < 0:
        raise InvalidIndex(f"negative dimension for {p!r}")
    return d


def enumerate_pieces(W, K, delta):
    """All normalized pieces for (K, delta), in canonical order."""
    vs = W.reps_left(K)
    out = []
    for J in range(1 << W.n):
        for w in W.reps_right(delta(J)):
            for v in vs:
                out.append(PieceIndex(J, W.elements[w], W.elements[v], K, delta))
    return out


def _same_frame(p, q):
    if p.K != q.K or p.delta != q.delta or p.group is not q.group:
        raise IndexMismatch("pieces must share K, delta and group")


def closure_leq(pp, p):
    """Whether [J', w', v'] lies in the closure of [J, w, v] (same K, delta)."""
    _same_frame(pp, p)
    if pp.J & ~p.J:
        return False
    W = p.group
    dtab = W.aut_table(p.delta)
    xs, ys = W.parabolic(p.K), W.parabolic(p.J)
    w, v, w1, v1 = p.w.index, p.v.index, pp.w.index, pp.v.index
    pairs = ((x, y) for x in xs for y in ys) if len(xs) <= len(ys) else ((x, y) for y in ys for x in xs)
    for x, y in pairs:
        if W.leq(W.mul(w, dtab[y]), W.mul(x, w1)) and W.leq(W.mul(x, v1), W.mul(v, y)):
            return True
    return False


class ClosurePoset:
    """All pieces for (K, delta) with the full closure relation as a boolean matrix.

    ``rel[i, j]`` is True when piece j lies in the closure of piece i.
    """

    def __init__(self, W, K, delta):
        self.W, self.K, self.delta = W, K, delta
        self.pieces = enumerate_pieces(W, K, delta)
        self.dims = np.array([piece_dimension(p) for p in self.pieces], dtype=np.int64)
        self.rel = self._relation()

    def _relation(self):
        W = self.W
        N = W.order
        bru = W.bruhat_matrix()
        up = bru.astype(np.float32)  # up[a] = row: elements >= a
        down = bru.T.astype(np.float32)  # down[b] = row: elements <= b
        table = np.array([[W.mul(x, u) for u in range(N)] for x in W.parabolic(self.K)], dtype=np.int64)
        dtab = W.aut_table(self.delta)
        Js = np.array([p.J for p in self.pieces], dtype=np.int64)
        ws = np.array([p.w.index for p in self.pieces], dtype=np.int64)
        vs = np.array([p.v.index for p in self.pieces], dtype=np.int64)
        rel = np.zeros((len(self.pieces), len(self.pieces)), dtype=bool)
        for i, p in enumerate(self.pieces):
            ys = W.parabolic(p.J)
            a = [W.mul(p.w.index, dtab[y]) for y in ys]
            b = [W.mul(p.v.index, y) for y in ys]
            # reach[u1, u2]: some y has u1 >= w delta(y) and u2 <= v y
            reach = (up[a].T @ down[b]) > 0
            moved = reach[table[:, :, None], table[:, None, :]].any(axis=0)
            rel[i] = moved[ws, vs] & ((Js & ~p.J) == 0)
        return rel

    def index(self, p):
        return self.pieces.index(p)

    def downset(self, i):
        return [self.pieces[j] for j in np.flatnonzero(self.rel[i])]

    def check_partial_order(self):
        """Return None or a witness dict for the first failing axiom."""
        rel = self.rel
        n = len(self.pieces)
        diag = np.flatnonzero(~np.diagonal(rel))
        if diag.size:
            return {"axiom": "reflexive", "p": repr(self.pieces[diag[0]])}
        both = rel & rel.T
        np.fill_diagonal(both, False)
        if both.any():
            i, j = np.argwhere(both)[0]
            return {"axiom": "antisymmetric", "p": repr(self.pieces[i]), "q": repr(self.pieces[j])}
        width = -(-n // 64) * 64
        padded = np.zeros((n, width), dtype=bool)
        padded[:, :n] = rel
        packed = np.packbits(padded, axis=1).view(np.uint64)
        for i in range(n):
            members = np.flatnonzero(rel[i])
            acc = np.bitwise_or.reduce(packed[members], axis=0)
            if (acc & ~packed[i]).any():
                extra = np.flatnonzero(np.unpackbits(acc.view(np.uint8))[:n] & ~rel[i])[0]
                mid = next(j for j in members if rel[j, extra])
                return {
                    "axiom": "transitive",
                    "p": repr(self.pieces[i]),
                    "q": repr(self.pieces[mid]),
                    "r": repr(self.pieces[extra]),
                }
        return None

    def boundary_profile(self, i):
        """J' -> max dimension of pieces with that J' below piece i."""
        p = self.pieces[i]
        below = self.rel[i]
        out = {}
        for Jp in sb.subsets(p.J):
            mask = below & np.array([q.J == Jp for q in self.pieces])
            out[Jp] = int(self.dims[mask].max()) if mask.any() else None
        return out

    def covering_pairs(self):
        """Covering relation (lower, upper) as index pairs, by transitive reduction."""
        rel = self.rel.copy()
        np.fill_diagonal(rel, False)
        relf = rel.astype(np.float32)
        two_step = (relf @ relf) > 0
        cover = rel & ~two_step
        return [(int(j), int(i)) for i, j in np.argwhere(cover)]


def boundary_profile(p):
    """J' -> max dimension over pieces with that J' in the closure of p."""
    W = p.group
    out = {}
    for Jp in sb.subsets(p.J):
        best = None
        for w in W.reps_right(p.delta(Jp)):
            for v in W.reps_left(p.K):
                q = PieceIndex(Jp, W.elements[w], W.elements[v], p.K, p.delta)
                if closure_leq(q, p):
                    d = piece_dimension(q)
                    best = d if best is None or d > best else best
        out[Jp] = best
    return out


def K1_of(p, literal=False):
    """Largest K' in K with w^{-1}(K') in delta(J) and w^{-1}(K') = delta(v^{-1}(K')).

    ``literal=True`` tests ``w^{-1}(K')`` against J instead of delta(J); the two
    agree when delta is the identity.
    """
    W = p.group
    winv, vinv = W.inv[p.w.index], W.inv[p.v.index]
    box = p.J if literal else p.delta(p.J)

    def ok(Kp):
        a = W.maps_simples(winv, Kp)
        if a is None or a & ~box:
            return False
        b = W.maps_simples(vinv, Kp)
        return b is not None and p.delta(b) == a

    union = 0
    for Kp in sb.subsets(p.K):
        if ok(Kp):
            union |= Kp
    if not ok(union):
        raise ConsistencyError("K1 candidates are not closed under union", {"piece": repr(p)})
    return union


def semistable_g_pieces(W, delta):
    return [GPieceIndex(J, W.identity, delta) for J in range(1 << W.n)]


def saturate(W, J, x, y, K, delta, mode="piece"):
    """Normalize a B x B-orbit index (J, x, y) against (P_K)_Delta.

    ``mode="piece"`` returns the single piece [J, w, v]_{K, delta} equal to the
    saturation, found from x = a w delta(b), y = a v b with a in W_K, b in W_J
    and l(y) - l(x) = l(v) - l(w). ``mode="closure"`` returns every normalized
    (w, v) whose piece meets the closure of the saturation inside Z_{J, delta}.
    """
    x = x.index if isinstance(x, WeylElement) else x
    y = y.index if isinstance(y, WeylElement) else y
    dJ = delta(J)
    if W.right_desc[x] & dJ:
        raise InvalidIndex("x must lie in W^delta(J)")
    dtab = W.aut_table(delta)
    L = W.length
    xs, ys = W.parabolic(K), W.parabolic(J)
    if mode == "piece":
        found = set()
        for a in xs:
            ainv = W.inv[a]
            for b in ys:
                binv = W.inv[b]
                w = W.mul(W.mul(ainv, x), dtab[binv])
                v = W.mul(W.mul(ainv, y), binv)
                if W.right_desc[w] & dJ or W.left_desc[v] & K:
                    continue
                if L[y] - L[x] == L[v] - L[w]:
                    found.add((w, v))
        if not found:
            raise NoNormalization(f"no normalization for (J={sb.fmt(J)}, x={W.fmt_word(x)}, y={W.fmt_word(y)})")
        if len(found) > 1:
            raise ConsistencyError(
                "saturation is not a single piece",
                {"J": J, "x": W.fmt_word(x), "y": W.fmt_word(y), "found": sorted(found)},
            )
        w, v = found.pop()
        return make_piece(W, J, w, v, K, delta)
    if mode != "closure":
        raise ValueError(f"unknown mode {mode!r}")
    tail = W.mul(W.longest_index(dJ), W.longest_index(W.full))
    target = W.mul(x, tail)
    out = []
    for w in W.reps_right(dJ):
        base = L[W.mul(w, tail)]
        for v in W.reps_left(K):
            hit = False
            for a in xs:
                aw = W.mul(a, w)
                av = W.mul(a, v)
                for b in ys:
                    left = W.mul(W.mul(aw, dtab[b]), tail)
                    right = W.mul(av, b)
                    if (
                        W.leq(left, target)
                        and W.leq(right, y)
                        and L[left] + L[right] == base + L[v]
                    ):
                        hit = True
                        break
                if hit:
                    break
            if hit:
                out.append(make_piece(W, J, w, v, K, delta))
    return out
