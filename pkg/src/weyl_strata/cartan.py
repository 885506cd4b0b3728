"""Named finite-type Cartan matrices and validation."""

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NotFiniteType, RankCapExceeded

DEFAULT_RANK_CAP = 6


def _chain(n):
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def named_matrix(name):
    """Cartan matrix for ``"A3"``, ``"B2"``, ``"G2"`` etc. Node order is Bourbaki's, 0-based."""
    m = re.fullmatch(r"([A-G])(\d+)", name.strip())
    if not m:
        raise ConfigError(f"unrecognised Cartan type {name!r}")
    letter, n = m.group(1), int(m.group(2))
    if n < 1:
        raise ConfigError(f"bad rank in {name!r}")
    if letter == "A":
        return _chain(n)
    if letter in "BC" and n >= 2:
        a = _chain(n)
        # B_n: last node short
        if letter == "B":
            a[n - 1][n - 2] = -2
        else:
            a[n - 2][n - 1] = -2
        return a
    if letter == "D" and n >= 4:
        a = _chain(n)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    if letter == "E" and n in (6, 7, 8):
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
        # Bourbaki 1-3-4-5-6-7-8 with 2 attached to 4
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
        return a
    if letter == "F" and n == 4:
        a = _chain(4)
        a[1][2] = -2
        return a
    if letter == "G" and n == 2:
        return [[2, -1], [-3, 2]]
    raise ConfigError(f"unrecognised Cartan type {name!r}")


@dataclass(frozen=True)
class CartanType:
    """A validated finite-type Cartan matrix on nodes ``0..n-1``."""

    matrix: tuple
    label: str = ""

    @property
    def rank(self):
        return len(self.matrix)

    @property
    def nodes(self):
        return tuple(range(self.rank))

    def a(self, i, j):
        return self.matrix[i][j]

    @classmethod
    def from_name(cls, name, rank_cap=DEFAULT_RANK_CAP):
        return cls.from_matrix(named_matrix(name), label=name.strip(), rank_cap=rank_cap)

    @classmethod
    def from_matrix(cls, matrix, label="", rank_cap=DEFAULT_RANK_CAP):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        validate_cartan(rows, rank_cap)
        return cls(rows, label or "custom")


def validate_cartan(rows, rank_cap=DEFAULT_RANK_CAP):
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ConfigError("Cartan matrix must be square and non-empty")
    if n > rank_cap:
        raise RankCapExceeded(f"rank {n} exceeds cap {rank_cap}")
    for i in range(n):
        if rows[i][i] != 2:
            raise NotFiniteType(f"diagonal entry a[{i}][{i}] = {rows[i][i]} != 2")
        for j in range(n):
            if i != j:
                if rows[i][j] > 0:
                    raise NotFiniteType(f"positive off-diagonal entry a[{i}][{j}]")
                if (rows[i][j] == 0) != (rows[j][i] == 0):
                    raise NotFiniteType(f"a[{i}][{j}] and a[{j}][{i}] disagree on zero")
    # finite type iff every principal minor is positive
    a = np.array(rows, dtype=float)
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            if np.linalg.det(a[np.ix_(idx, idx)]) <= 0.5:
                raise NotFiniteType(f"principal minor on nodes {idx} is not positive")
