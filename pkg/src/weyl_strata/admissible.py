"""Admissible triples of W x W and the stable-piece combinatorics built on them.

A triple ``c = (J1, J2, d)`` carries a Cartan-preserving bijection ``d: J1 -> J2``
which extends to an isomorphism ``W_J1 -> W_J2``; ``W_c = {(x, d(x))}``.
Pairs in ``W x W`` are encoded as ``a * |W| + b`` inside member sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from . import subsets as sb
from .errors import (
    ConsistencyError,
    DomainMismatch,
    NotDistinguished,
    RepNotMinimal,
)


@dataclass(frozen=True)
class AdmissibleTriple:
    J1: int
    J2: int
    # (i, d(i)) for i in J1, ascending in i
    pairs: tuple

    @classmethod
    def diagonal(cls, J):
        return cls(J, J, tuple((i, i) for i in sb.bits(J)))

    @classmethod
    def from_map(cls, mapping):
        pairs = tuple(sorted(mapping.items()))
        return cls(sb.from_nodes(mapping), sb.from_nodes(mapping.values()), pairs)

    @property
    def mapping(self):
        return dict(self.pairs)

    def image(self, mask):
        m = self.mapping
        out = 0
        for i in sb.bits(mask):
            out |= 1 << m[i]
        return out

    def preimage(self, mask):
        inv = {b: a for a, b in self.pairs}
        out = 0
        for i in sb.bits(mask):
            out |= 1 << inv[i]
        return out

    def label(self):
        arrows = ",".join(f"{a}>{b}" for a, b in self.pairs)
        return f"({sb.fmt(self.J1)},{sb.fmt(self.J2)},[{arrows}])"


def is_admissible(ct, c):
    m = c.mapping
    if sb.from_nodes(m) != c.J1 or sb.from_nodes(m.values()) != c.J2 or len(set(m.values())) != len(m):
        return False
    return all(ct.a(m[i], m[j]) == ct.a(i, j) for i in m for j in m)


def admissible_triples(ct):
    """Every admissible triple, ordered by (J1, J2, mapping)."""
    n = ct.rank
    out = []
    for J1 in range(1 << n):
        src = sb.bits(J1)
        for J2 in range(1 << n):
            if sb.size(J2) != len(src):
                continue
            for tgt in permutations(sb.bits(J2)):
                c = AdmissibleTriple(J1, J2, tuple(zip(src, tgt)))
                if is_admissible(ct, c):
                    out.append(c)
    return out


# ---- I(w1, w2, c, c') -------------------------------------------------------

def _conditions(W, w1, w2, c, cp, K):
    img = W.maps_simples(w1, K)
    if img is None or img & ~cp.J1:
        return False
    rhs = W.maps_simples(w2, c.image(K))
    return rhs is not None and cp.image(img) == rhs


def _I(W, w1, w2, c, cp):
    union = 0
    for K in sb.subsets(c.J1):
        if _conditions(W, w1, w2, c, cp, K):
            union |= K
    if not _conditions(W, w1, w2, c, cp, union):
        raise ConsistencyError(
            "satisfying subsets are not closed under union",
            {"w1": W.fmt_word(w1), "w2": W.fmt_word(w2), "c": c.label(), "c'": cp.label()},
        )
    return union


def compute_I(W, w1, w2, c, cp):
    """Largest K in J1 with w1(K) in J'1 and d'(w1(K)) = w2(d(K))."""
    a, b = w1.index, w2.index
    if W.right_desc[a] & c.J1 or W.left_desc[b] & cp.J2:
        raise RepNotMinimal("need w1 in W^{J1} and w2 in ^{J'2}W")
    return _I(W, a, b, c, cp)


# ---- double cosets -----------------------------------------------------------

class CosetPartition:
    """The (W_{c'}, W_c)-double cosets of W x W."""

    def __init__(self, W, c, cp):
        self.W, self.c, self.cp = W, c, cp
        N = W.order
        mc, mcp = c.mapping, cp.mapping
        left = [(W.lgen[i], W.lgen[mcp[i]]) for i in sb.bits(cp.J1)]
        right = [(W.rgen[j], W.rgen[mc[j]]) for j in sb.bits(c.J1)]
        cid = [-1] * (N * N)
        cosets = []
        for start in range(N * N):
            if cid[start] >= 0:
                continue
            k = len(cosets)
            cid[start] = k
            stack = [start]
            members = [start]
            while stack:
                code = stack.pop()
                a, b = divmod(code, N)
                for ga, gb in left + right:
                    nxt = ga[a] * N + gb[b]
                    if cid[nxt] < 0:
                        cid[nxt] = k
                        stack.append(nxt)
                        members.append(nxt)
            cosets.append(frozenset(members))
        self.coset_id = cid
        self.cosets = cosets

    def id_of(self, a, b):
        return self.coset_id[a * self.W.order + b]


_partitions = {}


def coset_partition(W, c, cp):
    key = (id(W), c, cp)
    hit = _partitions.get(key)
    if hit is None or hit.W is not W:
        hit = CosetPartition(W, c, cp)
        _partitions[key] = hit
    return hit


def piece_members(W, w1, w2, c, cp, part=None):
    """[w1, w2, c, c'] as a set of pair codes, plus I(w1, w2, c, c')."""
    part = part or coset_partition(W, c, cp)
    I = _I(W, w1, w2, c, cp)
    ids = {part.id_of(W.mul(w1, u), w2) for u in W.parabolic(I)}
    members = set()
    for k in ids:
        members |= part.cosets[k]
    return I, frozenset(members), ids


def partition_WxW(W, c, cp):
    """Map (w1, w2) in W^{J1} x ^{J'2}W to its piece, as a frozenset of pair codes."""
    part = coset_partition(W, c, cp)
    out = {}
    for w1 in W.reps_right(c.J1):
        for w2 in W.reps_left(cp.J2):
            out[(w1, w2)] = piece_members(W, w1, w2, c, cp, part)[1]
    return out


def piece_records(W, c, cp):
    part = coset_partition(W, c, cp)
    rows = []
    for w1 in W.reps_right(c.J1):
        for w2 in W.reps_left(cp.J2):
            I, members, _ = piece_members(W, w1, w2, c, cp, part)
            rows.append({"w1": list(W.words[w1]), "w2": list(W.words[w2]), "I": I, "size": len(members)})
    return rows


@dataclass(frozen=True)
class DoubleCosetO:
    c: AdmissibleTriple
    cp: AdmissibleTriple
    members: frozenset  # of (a, b) index pairs
    rep: tuple | None
    minimal: tuple  # minimal-length members, sorted


def _coset_object(W, c, cp, members_codes):
    N = W.order
    pairs = sorted(divmod(code, N) for code in members_codes)
    hits = [(a, b) for a, b in pairs if not W.right_desc[a] & c.J1 and not W.left_desc[b] & cp.J2]
    if len(hits) > 1:
        raise ConsistencyError(
            "double coset meets W^{J1} x ^{J'2}W more than once",
            {"c": c.label(), "c'": cp.label(), "hits": [(W.fmt_word(a), W.fmt_word(b)) for a, b in hits]},
        )
    lmin = min(W.length[a] + W.length[b] for a, b in pairs)
    minimal = tuple(p for p in pairs if W.length[p[0]] + W.length[p[1]] == lmin)
    return DoubleCosetO(c, cp, frozenset(pairs), hits[0] if hits else None, minimal)


def all_cosets(W, c, cp):
    part = coset_partition(W, c, cp)
    return [_coset_object(W, c, cp, m) for m in part.cosets]


def distinguished_cosets(W, c, cp):
    """Distinguished double cosets, ordered by their representative."""
    out = [o for o in all_cosets(W, c, cp) if o.rep is not None]
    out.sort(key=lambda o: o.rep)
    return out


def coset_leq(W, O, Op):
    """O <= O' iff some minimal element of O lies below a minimal element of O'.

    The answer must not depend on which minimal element of O' is used; a
    dependence raises ConsistencyError with the offending pair.
    """
    if O.rep is None or Op.rep is None:
        raise NotDistinguished("coset_leq needs distinguished cosets")
    answers = []
    for a2, b2 in Op.minimal:
        answers.append(any(W.leq(a1, a2) and W.leq(b1, b2) for a1, b1 in O.minimal))
    if len(set(answers)) > 1:
        raise ConsistencyError(
            "order on distinguished cosets depends on the chosen minimal element",
            {
                "O": (W.fmt_word(O.rep[0]), W.fmt_word(O.rep[1])),
                "O'": (W.fmt_word(Op.rep[0]), W.fmt_word(Op.rep[1])),
                "answers": answers,
            },
        )
    return answers[0]


# ---- twisted conjugacy --------------------------------------------------------

@dataclass(frozen=True)
class TwistAut:
    """An automorphism of W_K given by a permutation of K."""

    domain: int
    pairs: tuple  # (i, sigma(i)) for i in K

    @classmethod
    def from_map(cls, mapping):
        return cls(sb.from_nodes(mapping), tuple(sorted(mapping.items())))

    @classmethod
    def identity(cls, K):
        return cls(K, tuple((i, i) for i in sb.bits(K)))

    @property
    def mapping(self):
        return dict(self.pairs)


def sigma_for(W, w1, w2, c, cp, I=None):
    """sigma(x) = d^{-1}(w2^{-1} d'(w1 x w1^{-1}) w2) on W_I, as a node permutation of I."""
    if I is None:
        I = _I(W, w1, w2, c, cp)
    inv_c = {b: a for a, b in c.pairs}
    w2inv = W.inv[w2]
    mp = cp.mapping
    sig = {}
    for i in sb.bits(I):
        a = sb.bits(W.maps_simples(w1, 1 << i))[0]
        t = sb.bits(W.maps_simples(w2inv, 1 << mp[a]))[0]
        sig[i] = inv_c[t]
    return TwistAut(I, tuple(sorted(sig.items())))


def twisted_classes(W, K, sigma, ct=None):
    """Orbits of W_K under x . w = x w sigma(x)^{-1}; each orbit sorted, orbits ordered by min."""
    if sigma.domain != K:
        raise DomainMismatch("sigma is not defined on K")
    m = sigma.mapping
    if sorted(m.values()) != sb.bits(K):
        raise DomainMismatch("sigma does not permute K")
    ct = ct or W.ct
    for i in m:
        for j in m:
            if ct.a(m[i], m[j]) != ct.a(i, j):
                raise DomainMismatch("sigma does not preserve the Cartan matrix")
    seen = {}
    orbits = []
    for start in W.parabolic(K):
        if start in seen:
            continue
        orbit = [start]
        seen[start] = len(orbits)
        stack = [start]
        while stack:
            w = stack.pop()
            for i in sb.bits(K):
                x = W.rgen[m[i]][W.lgen[i][w]]
                if x not in seen:
                    seen[x] = len(orbits)
                    orbit.append(x)
                    stack.append(x)
        orbits.append(sorted(orbit))
    return orbits


def check_twisted_bijection(W, w1, w2, c, cp):
    """Compare sigma-twisted classes on W_I with the double cosets inside [w1, w2, c, c'].

    Returns ``(n_classes, n_cosets, ok)``; ``ok`` also requires that
    w -> (w1 w, w2) sends classes injectively onto those cosets.
    """
    part = coset_partition(W, c, cp)
    I, _, ids = piece_members(W, w1, w2, c, cp, part)
    sigma = sigma_for(W, w1, w2, c, cp, I)
    classes = twisted_classes(W, I, sigma)
    images = []
    for cls in classes:
        hit = {part.id_of(W.mul(w1, w), w2) for w in cls}
        images.append(hit)
    ok = all(len(h) == 1 for h in images)
    if ok:
        flat = [next(iter(h)) for h in images]
        ok = len(set(flat)) == len(flat) and set(flat) == ids
    return len(classes), len(ids), ok
