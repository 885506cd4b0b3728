"""Export closure posets as DOT and summarize their shape.

For each small reference type, delta and K, writes the Hasse diagram of
the closure order on pieces to results/posets/<type>_d<delta>_K<K>.dot and
prints piece, relation and covering-edge counts together with the number
of covering edges along which the dimension drops by exactly one.
"""

import pathlib
import sys

import numpy as np

from weyl_strata.compactification import ClosurePoset
from weyl_strata.export import to_dot
from weyl_strata.weyl import build_group, diagram_automorphisms


def main(out_dir="results/posets", types="A1,A2,B2"):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name in types.split(","):
        W = build_group(name)
        for d in diagram_automorphisms(W.ct):
            for K in range(1 << W.n):
                P = ClosurePoset(W, K, d)
                if P.check_partial_order():
                    print(f"{name} delta={d.label()} K={K}: not a partial order")
                    return 3
                edges = P.covering_pairs()
                unit = sum(1 for lo, hi in edges if P.dims[hi] - P.dims[lo] == 1)
                path = out / f"{name}_d{''.join(map(str, d.perm))}_K{K}.dot"
                path.write_text(to_dot(P.pieces, edges))
                print(f"{name:3s} delta={d.label():4s} K={K}: pieces={len(P.pieces):4d} "
                      f"relations={int(np.count_nonzero(P.rel)):6d} covers={len(edges):5d} "
                      f"unit-drop covers={unit}")
    return 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:]))
