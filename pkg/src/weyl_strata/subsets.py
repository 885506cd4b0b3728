"""Subsets of the node set, stored as int bitmasks."""

from itertools import combinations


def bits(mask):
    """Node indices in ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def from_nodes(nodes):
    mask = 0
    for i in nodes:
        mask |= 1 << i
    return mask


def size(mask):
    return bin(mask).count("1")


def full(n):
    return (1 << n) - 1


def subsets(mask):
    """All submasks of ``mask`` in increasing numeric order."""
    return [m for m in range(mask + 1) if m & ~mask == 0]


def subsets_by_size(mask):
    nodes = bits(mask)
    for k in range(len(nodes) + 1):
        for combo in combinations(nodes, k):
            yield from_nodes(combo)


def is_subset(a, b):
    return a & ~b == 0


def fmt(mask):
    """``{0,2}`` style rendering."""
    return "{" + ",".join(str(i) for i in bits(mask)) + "}"
