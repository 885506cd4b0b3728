"""Finite Weyl groups built from Cartan data.

Elements are stored by the permutation they induce on the full root set. The
group is enumerated once, sorted canonically by ``(length, ShortLex-minimal
reduced word)`` and every table is indexed by position in that order, so an
element's index doubles as its canonical sort key.

Conventions: ``s_i(alpha_j) = alpha_j - a[i][j] alpha_i``; products act on roots
from the right, i.e. ``(uv)(beta) = u(v(beta))``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import subsets as sb
from .cartan import DEFAULT_RANK_CAP, CartanType
from .errors import AutMismatch, ConfigError, GroupMismatch, NotFiniteType

# above this order the multiplication and Bruhat tables are filled lazily
FULL_TABLE_LIMIT = 1200
_MAX_ROOTS = 2000


class WeylElement:
    """A group element: a handle ``(group, index)``. Compare with ``==``."""

    __slots__ = ("group", "index")

    def __init__(self, group, index):
        self.group = group
        self.index = index

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.group is other.group and self.index == other.index

    def __hash__(self):
        return hash((id(self.group), self.index))

    def __lt__(self, other):
        _check_same(self, other)
        return self.index < other.index

    def __mul__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        _check_same(self, other)
        g = self.group
        return g.elements[g.mul(self.index, other.index)]

    def inverse(self):
        g = self.group
        return g.elements[g.inv[self.index]]

    @property
    def length(self):
        return self.group.length[self.index]

    @property
    def word(self):
        """ShortLex-minimal reduced word."""
        return self.group.words[self.index]

    @property
    def perm(self):
        """Canonical form: images of the roots, by root index."""
        return self.group.perms[self.index]

    def is_identity(self):
        return self.index == 0

    def __repr__(self):
        if self.index == 0:
            return "e"
        return "".join(f"s{i}" for i in self.word)


def _check_same(a, b):
    if a.group is not b.group:
        raise GroupMismatch("elements belong to different groups")


@dataclass(frozen=True)
class DiagramAut:
    """A permutation of the nodes preserving the Cartan matrix."""

    perm: tuple

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def validated(cls, perm, ct: CartanType):
        perm = tuple(int(p) for p in perm)
        n = ct.rank
        if sorted(perm) != list(range(n)):
            raise ConfigError(f"delta {list(perm)} is not a permutation of 0..{n - 1}")
        for i in range(n):
            for j in range(n):
                if ct.a(perm[i], perm[j]) != ct.a(i, j):
                    raise ConfigError(f"delta {list(perm)} does not preserve the Cartan matrix")
        return cls(perm)

    @property
    def is_identity(self):
        return all(i == p for i, p in enumerate(self.perm))

    @cached_property
    def inverse(self):
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return DiagramAut(tuple(inv))

    def __call__(self, mask):
        """Image of a node subset."""
        out = 0
        for i in sb.bits(mask):
            out |= 1 << self.perm[i]
        return out

    def is_stable(self, mask):
        return self(mask) == mask

    def label(self):
        return ",".join(str(p) for p in self.perm)


def diagram_automorphisms(ct: CartanType):
    """All Cartan-preserving node permutations, identity first."""
    from itertools import permutations

    out = []
    for p in permutations(range(ct.rank)):
        if all(ct.a(p[i], p[j]) == ct.a(i, j) for i in range(ct.rank) for j in range(ct.rank)):
            out.append(DiagramAut(p))
    return out


class WeylGroup:
    def __init__(self, ct: CartanType):
        self.ct = ct
        self.n = ct.rank
        self._build_roots()
        self._build_elements()
        self._lock = threading.Lock()
        self._parabolic = {}
        self._aut_tables = {}
        self._bruhat_memo = {}
        self._mul = self._full_mul_table() if self.order <= FULL_TABLE_LIMIT else None
        self._down = self._bruhat_down_sets() if self.order <= FULL_TABLE_LIMIT else None

    # ---- construction -------------------------------------------------
    def _reflect(self, i, beta):
        c = sum(beta[j] * self.ct.a(i, j) for j in range(self.n))
        out = list(beta)
        out[i] -= c
        return tuple(out)

    def _build_roots(self):
        n = self.n
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(n):
                    gamma = self._reflect(i, beta)
                    if gamma not in seen and all(c >= 0 for c in gamma):
                        seen.add(gamma)
                        nxt.append(gamma)
            if len(seen) > _MAX_ROOTS:
                raise NotFiniteType("root system does not close")
            frontier = nxt
        pos = sorted(seen, key=lambda r: (sum(r), tuple(-c for c in r)))
        self.n_pos = len(pos)
        self.roots = pos + [tuple(-c for c in r) for r in pos]
        self.root_index = {r: k for k, r in enumerate(self.roots)}
        self.gen_perms = [
            tuple(self.root_index[self._reflect(i, r)] for r in self.roots) for i in range(n)
        ]

    def _build_elements(self):
        n, npos = self.n, self.n_pos
        ident = tuple(range(2 * npos))
        perms = [ident]
        index = {ident: 0}
        lgen = [[] for _ in range(n)]
        k = 0
        while k < len(perms):
            p = perms[k]
            for i in range(n):
                g = self.gen_perms[i]
                q = tuple(g[x] for x in p)
                j = index.get(q)
                if j is None:
                    j = len(perms)
                    index[q] = j
                    perms.append(q)
                lgen[i].append(j)
            k += 1
        length = [sum(1 for r in range(npos) if p[r] >= npos) for p in perms]
        order = sorted(range(len(perms)), key=lambda t: length[t])
        words = [None] * len(perms)
        for t in order:
            if length[t] == 0:
                words[t] = ()
                continue
            i = next(i for i in range(n) if length[lgen[i][t]] < length[t])
            words[t] = (i,) + words[lgen[i][t]]
        canon = sorted(range(len(perms)), key=lambda t: (length[t], words[t]))
        relabel = [0] * len(perms)
        for new, old in enumerate(canon):
            relabel[old] = new

        self.perms = [perms[t] for t in canon]
        self.index_of = {p: i for i, p in enumerate(self.perms)}
        self.length = [length[t] for t in canon]
        self.words = [words[t] for t in canon]
        self.lgen = [[relabel[lgen[i][t]] for t in canon] for i in range(n)]
        self.rgen = [
            [self.index_of[tuple(p[x] for x in self.gen_perms[i])] for p in self.perms]
            for i in range(n)
        ]
        self.inv = []
        for p in self.perms:
            q = [0] * len(p)
            for a, b in enumerate(p):
                q[b] = a
            self.inv.append(self.index_of[tuple(q)])
        self.order = len(self.perms)
        self.right_desc = [
            sb.from_nodes(i for i in range(n) if p[i] >= npos) for p in self.perms
        ]
        self.left_desc = [self.right_desc[self.inv[t]] for t in range(self.order)]
        self.supp = [sb.from_nodes(w) for w in self.words]
        self.elements = [WeylElement(self, t) for t in range(self.order)]

    def _full_mul_table(self):
        table = []
        for a in range(self.order):
            row = [0] * self.order
            row[0] = a
            for b in range(1, self.order):
                j = self.words[b][-1]
                row[b] = self.rgen[j][row[self.rgen[j][b]]]
            table.append(row)
        return table

    def _bruhat_down_sets(self):
        # down[w] = bitset of u <= w, by the lifting property on a left descent of w
        down = [0] * self.order
        down[0] = 1
        for w in range(1, self.order):
            s = self.words[w][0]
            sw = self.lgen[s][w]
            prev = down[sw]
            ls = self.lgen[s]
            bitset = 0
            for u in range(self.order):
                su = ls[u]
                probe = su if self.length[su] < self.length[u] else u
                if (prev >> probe) & 1:
                    bitset |= 1 << u
            down[w] = bitset
        return down

    # ---- basic operations (index level) -------------------------------
    def mul(self, a, b):
        if self._mul is not None:
            return self._mul[a][b]
        for j in self.words[b]:
            a = self.rgen[j][a]
        return a

    def leq(self, u, w):
        """Bruhat order on indices."""
        if self._down is not None:
            return bool((self._down[w] >> u) & 1)
        key = (u, w)
        hit = self._bruhat_memo.get(key)
        if hit is not None:
            return hit
        if w == 0:
            res = u == 0
        elif self.length[u] > self.length[w]:
            res = False
        else:
            s = self.words[w][0]
            sw = self.lgen[s][w]
            su = self.lgen[s][u]
            res = self.leq(su, sw) if self.length[su] < self.length[u] else self.leq(u, sw)
        with self._lock:
            self._bruhat_memo[key] = res
        return res

    def bruhat_matrix(self):
        """Boolean array ``M[u, w] = (u <= w)``."""
        m = np.zeros((self.order, self.order), dtype=bool)
        for w in range(self.order):
            for u in range(self.order):
                m[u, w] = self.leq(u, w)
        return m

    def word_to_index(self, word):
        a = 0
        for i in word:
            if not 0 <= i < self.n:
                raise ConfigError(f"letter {i} out of range")
            a = self.rgen[i][a]
        return a

    def aut_table(self, delta: DiagramAut):
        """``table[w] = delta(w)`` for every element index."""
        if len(delta.perm) != self.n:
            raise AutMismatch("automorphism has wrong number of nodes")
        tab = self._aut_tables.get(delta.perm)
        if tab is None:
            for i in range(self.n):
                for j in range(self.n):
                    if self.ct.a(delta.perm[i], delta.perm[j]) != self.ct.a(i, j):
                        raise AutMismatch(f"{list(delta.perm)} does not preserve the Cartan matrix")
            # delta acts on root coordinates by relabelling
            rp = []
            for r in self.roots:
                img = [0] * self.n
                for i, c in enumerate(r):
                    img[delta.perm[i]] = c
                rp.append(self.root_index[tuple(img)])
            rinv = [0] * len(rp)
            for a, b in enumerate(rp):
                rinv[b] = a
            tab = []
            for p in self.perms:
                tab.append(self.index_of[tuple(rp[p[rinv[k]]] for k in range(len(p)))])
            self._aut_tables[delta.perm] = tab
        return tab

    # ---- parabolic data (index level) ---------------------------------
    def parabolic(self, J):
        """Indices of W_J, canonical order."""
        hit = self._parabolic.get(J)
        if hit is None:
            hit = [t for t in range(self.order) if self.supp[t] & ~J == 0]
            self._parabolic[J] = hit
        return hit

    def reps_right(self, J):
        """W^J: minimal representatives of the cosets w W_J."""
        return [t for t in range(self.order) if self.right_desc[t] & J == 0]

    def reps_left(self, K):
        """^K W: minimal representatives of the cosets W_K w."""
        return [t for t in range(self.order) if self.left_desc[t] & K == 0]

    def reps_double(self, K, J):
        """^K W^J."""
        return [
            t for t in range(self.order) if self.left_desc[t] & K == 0 and self.right_desc[t] & J == 0
        ]

    def longest_index(self, J):
        return self.parabolic(J)[-1]

    def min_double(self, w, K, J):
        """min(W_K w W_J) by peeling descents."""
        changed = True
        while changed:
            changed = False
            d = self.left_desc[w] & K
            if d:
                w = self.lgen[sb.bits(d)[0]][w]
                changed = True
            d = self.right_desc[w] & J
            if d:
                w = self.rgen[sb.bits(d)[0]][w]
                changed = True
        return w

    def simple_image(self, w, S):
        """``{j : w(alpha_i) = alpha_j for some i in S}``: the simple part of w(S)."""
        p = self.perms[w]
        out = 0
        for i in sb.bits(S):
            k = p[i]
            if k < self.n:
                out |= 1 << k
        return out

    def maps_simples(self, w, S):
        p = self.perms[w]
        out = 0
        for i in sb.bits(S):
            k = p[i]
            if k >= self.n:
                return None
            out |= 1 << k
        return out

    # ---- element-level API --------------------------------------------
    @property
    def identity(self):
        return self.elements[0]

    @property
    def w0(self):
        return self.elements[-1]

    @property
    def full(self):
        return sb.full(self.n)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def s(self, i):
        return self.elements[self.lgen[i][0]]

    def from_word(self, word):
        return self.elements[self.word_to_index(word)]

    def _own(self, *els):
        for x in els:
            if x.group is not self:
                raise GroupMismatch("element from another group")

    def multiply(self, a, b):
        return a * b

    def inverse(self, a):
        self._own(a)
        return a.inverse()

    def bruhat_leq(self, u, w):
        self._own(u, w)
        return self.leq(u.index, w.index)

    def longest_element(self, J=None):
        return self.elements[self.longest_index(self.full if J is None else J)]

    def min_coset_rep(self, w, K, J):
        self._own(w)
        return self.elements[self.min_double(w.index, K, J)]

    def maps_into_simples(self, w, S):
        self._own(w)
        return self.maps_simples(w.index, S)

    def apply_aut(self, delta, w):
        self._own(w)
        return self.elements[self.aut_table(delta)[w.index]]

    def is_delta_fixed(self, delta, w):
        return self.apply_aut(delta, w) == w

    def support(self, w):
        self._own(w)
        return self.supp[w.index]

    def positive_roots_in(self, J):
        return sum(
            1 for r in self.roots[: self.n_pos] if all(c == 0 or (J >> i) & 1 for i, c in enumerate(r))
        )

    def fmt_word(self, t):
        return "[" + ",".join(str(i) for i in self.words[t]) + "]"

    def __repr__(self):
        return f"WeylGroup({self.ct.label}, order={self.order})"


def build_group(ct, rank_cap=DEFAULT_RANK_CAP):
    """Accepts a CartanType, a type name like ``"B3"`` or an integer matrix."""
    if isinstance(ct, str):
        ct = CartanType.from_name(ct, rank_cap=rank_cap)
    elif not isinstance(ct, CartanType):
        ct = CartanType.from_matrix(ct, rank_cap=rank_cap)
    return WeylGroup(ct)
