"""Tabulate Steinberg multiplicities for every reference type and diagram automorphism.

Each cell (J, T) is the signed count over delta-stable K; the expected value
is (-1)^(number of delta-orbits in T) for delta-stable T and 0 otherwise.
Also reports how many cells break if signs count nodes instead of orbits.
"""

import pathlib
import sys

from weyl_strata.export import steinberg_to_csv
from weyl_strata.steinberg import steinberg_table
from weyl_strata.verify import REFERENCE_TYPES
from weyl_strata.weyl import build_group, diagram_automorphisms


def main(out_dir="results"):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    chunks = []
    bad = 0
    for name in REFERENCE_TYPES:
        W = build_group(name)
        for d in diagram_automorphisms(W.ct):
            cells = steinberg_table(W, d, stable_only=False)
            node_cells = steinberg_table(W, d, count="nodes")
            text = steinberg_to_csv(name, d, cells)
            chunks.append(text if not chunks else text.split("\n", 1)[1])
            fails = sum(not c.passed for c in cells)
            node_fails = sum(not c.passed for c in node_cells)
            bad += fails
            print(f"{name:3s} delta={d.label():6s} cells={len(cells):3d} failures={fails} "
                  f"node-count failures={node_fails}")
    (out / "steinberg.csv").write_text("".join(chunks))
    print(f"written {out / 'steinberg.csv'}")
    return 3 if bad else 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:]))
