"""Command-line entry point.

Exit codes: 0 success, 1 an implementation suite failed, 2 usage or
configuration error, 3 a checked identity failed (witness on stderr).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import export
from . import subsets as sb
from .admissible import TwistAut, twisted_classes
from .cartan import DEFAULT_RANK_CAP, CartanType
from .compactification import ClosurePoset, enumerate_pieces, semistable_g_pieces
from .errors import ConfigError, ConsistencyError, WeylStrataError
from .parabolic import isolated_boundary_index, parabolic_closure_index
from .steinberg import steinberg_table
from .verify import REFERENCE_TYPES, SUITES, exit_code, run_verification
from .weyl import DiagramAut, build_group

RANK_CAP_ENV = "WEYL_STRATA_RANK_CAP"


class UsageError(WeylStrataError):
    pass


@dataclass
class RunConfig:
    command: str
    cartan: CartanType | None
    delta: tuple | str | None = None  # permutation, "all", or None for the default
    K: str | None = None
    J: str | None = None
    fmt: str | None = None
    out: str | None = None
    rank_cap: int = DEFAULT_RANK_CAP
    jobs: int = 1
    options: dict = field(default_factory=dict)


def parse_nodes(text, n, what="subset"):
    """Bitmask from "" (empty), "all", or comma-separated node indices."""
    text = (text or "").strip()
    if text == "":
        return 0
    if text.lower() == "all":
        return sb.full(n)
    try:
        nodes = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} {text!r} must be '', 'all' or comma-separated node indices") from None
    if any(i < 0 or i >= n for i in nodes):
        raise UsageError(f"{what} {text!r} uses a node outside 0..{n - 1}")
    return sb.from_nodes(nodes)


def parse_perm(text):
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"permutation {text!r} must be comma-separated integers") from None


def _rank_cap(args):
    if args.rank_cap is not None:
        return args.rank_cap
    env = os.environ.get(RANK_CAP_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"{RANK_CAP_ENV}={env!r} is not an integer") from None
    return DEFAULT_RANK_CAP


def _cartan(args, cap):
    if args.type and args.config:
        raise UsageError("give --type or --config, not both")
    if args.config:
        try:
            with open(args.config) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        matrix, label = (doc.get("matrix"), doc.get("label", "")) if isinstance(doc, dict) else (doc, "")
        if not isinstance(matrix, list):
            raise ConfigError("config must be a matrix or an object with a 'matrix' field")
        return CartanType.from_matrix(matrix, label=label, rank_cap=cap)
    if args.type:
        return CartanType.from_name(args.type, rank_cap=cap)
    return None


def build_config(args):
    cap = _rank_cap(args)
    delta = args.delta
    if delta not in (None, "all"):
        delta = parse_perm(delta)
    return RunConfig(
        command=args.command,
        cartan=_cartan(args, cap),
        delta=delta,
        K=getattr(args, "K", None),
        J=getattr(args, "J", None),
        fmt=args.format,
        out=args.out,
        rank_cap=cap,
        jobs=args.jobs,
        options={k: v for k, v in vars(args).items() if k not in {"type", "config", "delta", "K", "J", "format", "out", "rank_cap", "jobs", "command"}},
    )


def _group_and_delta(cfg):
    if cfg.cartan is None:
        raise UsageError(f"{cfg.command} needs --type or --config")
    W = build_group(cfg.cartan)
    if cfg.delta is None:
        delta = DiagramAut.identity(W.n)
    elif cfg.delta == "all":
        raise UsageError("--delta all is only accepted by verify")
    else:
        delta = DiagramAut.validated(cfg.delta, W.ct)
    return W, delta


def _emit(cfg, text):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---- commands -------------------------------------------------------------------

def cmd_enumerate(cfg):
    W, delta = _group_and_delta(cfg)
    opts = cfg.options
    fmt = cfg.fmt or "json"
    K = parse_nodes(cfg.K, W.n, "K")
    label = W.ct.label
    if opts.get("isolated_boundary"):
        pairs = isolated_boundary_index(W, K, delta)
        if fmt == "csv":
            text = export.rows_to_csv(("J", "w_word"), [[J, export.word_text(w.word)] for J, w in pairs])
        else:
            text = export.dumps({"type": label, "delta": list(delta.perm), "K": K,
                                 "pairs": [{"J": J, "w": list(w.word)} for J, w in pairs]})
        _emit(cfg, text)
        return 0
    if opts.get("semistable"):
        pieces = [z.as_piece() for z in semistable_g_pieces(W, delta)]
        K = W.full
    elif opts.get("parabolic_closure"):
        pieces = sorted(parabolic_closure_index(W, K, delta))
    else:
        pieces = enumerate_pieces(W, K, delta)
    if fmt == "csv":
        text = export.pieces_to_csv(pieces)
    elif fmt == "json":
        text = export.pieces_to_json(label, delta, pieces, K=K)
    else:
        raise UsageError(f"enumerate does not write {fmt}")
    _emit(cfg, text)
    return 0


def cmd_closure(cfg):
    W, delta = _group_and_delta(cfg)
    K = parse_nodes(cfg.K, W.n, "K")
    piece = export.parse_label(W, cfg.options["piece"], K, delta)
    P = ClosurePoset(W, K, delta)
    i = P.index(piece)
    below = [int(j) for j in np.flatnonzero(P.rel[i])]
    nodes = [P.pieces[j] for j in below]
    pos = {j: k for k, j in enumerate(below)}
    edges = [(pos[a], pos[b]) for a, b in P.covering_pairs() if a in pos and b in pos]
    fmt = cfg.fmt or "dot"
    if fmt == "dot":
        text = export.to_dot(nodes, edges)
    elif fmt == "json":
        text = export.poset_to_json(W.ct.label, delta, K, nodes, edges)
    elif fmt == "csv":
        text = export.pieces_to_csv(nodes)
    else:
        raise UsageError(f"closure does not write {fmt}")
    _emit(cfg, text)
    return 0


def cmd_verify(cfg):
    suites = cfg.options.get("suite") or ["all"]
    names = []
    for s in suites:
        for part in s.split(","):
            part = part.strip()
            if part == "all":
                names.extend(SUITES)
            elif part in SUITES:
                names.append(part)
            else:
                raise UsageError(f"unknown suite {part!r}; choose from {', '.join(SUITES)} or all")
    names = [s for s in SUITES if s in set(names)]
    if cfg.cartan is None:
        types = REFERENCE_TYPES
        delta_mode = "all" if cfg.delta is None else cfg.delta
        if delta_mode != "all":
            raise UsageError("--delta needs --type unless it is 'all'")
    else:
        types = (cfg.cartan,)
        delta_mode = "id" if cfg.delta is None else cfg.delta
    reports = run_verification(types, delta_mode, names, jobs=cfg.jobs, rank_cap=cfg.rank_cap)
    fmt = cfg.fmt or "json"
    if fmt == "csv":
        text = export.reports_to_csv(reports)
    elif fmt == "json":
        text = export.reports_to_json(reports, include_time=cfg.options.get("timing", False))
    else:
        raise UsageError(f"verify does not write {fmt}")
    _emit(cfg, text)
    for r in reports:
        for f in r.failures:
            print(f"FAIL {r.suite} {r.type_label} delta={r.delta_label}: {json.dumps(f)}", file=sys.stderr)
    return exit_code(reports)


def cmd_twisted(cfg):
    W, _ = _group_and_delta(cfg)
    K = parse_nodes(cfg.K, W.n, "K")
    sigma_text = cfg.options.get("sigma")
    nodes = sb.bits(K)
    if sigma_text:
        images = parse_perm(sigma_text)
        if len(images) != len(nodes):
            raise UsageError("--sigma must list one image per node of K, in increasing node order")
        sigma = TwistAut.from_map(dict(zip(nodes, images)))
        if not nodes:
            sigma = TwistAut.identity(K)
    else:
        sigma = TwistAut.identity(K)
    orbits = twisted_classes(W, K, sigma)
    fmt = cfg.fmt or "json"
    if fmt == "json":
        text = export.dumps({"type": W.ct.label, "K": K, "sigma": [b for _, b in sigma.pairs],
                             "classes": [[list(W.words[t]) for t in orb] for orb in orbits]})
    elif fmt == "csv":
        rows = [[k, export.word_text(W.words[t])] for k, orb in enumerate(orbits) for t in orb]
        text = export.rows_to_csv(("class", "w_word"), rows)
    else:
        raise UsageError(f"twisted-classes does not write {fmt}")
    _emit(cfg, text)
    return 0


def cmd_steinberg(cfg):
    W, delta = _group_and_delta(cfg)
    cells = steinberg_table(W, delta, stable_only=False)
    if cfg.J is not None:
        J = parse_nodes(cfg.J, W.n, "J")
        cells = [c for c in cells if c.J == J]
    fmt = cfg.fmt or "csv"
    if fmt == "csv":
        text = export.steinberg_to_csv(W.ct.label, delta, cells)
    elif fmt == "json":
        text = export.dumps({"type": W.ct.label, "delta": list(delta.perm), "cells": [
            {"J": c.J, "T": c.T, "multiplicity": c.multiplicity, "expected": c.expected, "pass": c.passed}
            for c in cells]})
    else:
        raise UsageError(f"steinberg-table does not write {fmt}")
    _emit(cfg, text)
    bad = [c for c in cells if not c.passed]
    for c in bad:
        print(f"FAIL steinberg {W.ct.label} delta={delta.label()}: J={sb.fmt(c.J)} T={sb.fmt(c.T)} "
              f"multiplicity={c.multiplicity} expected={c.expected}", file=sys.stderr)
    return 3 if bad else 0


COMMANDS = {
    "enumerate": cmd_enumerate,
    "closure": cmd_closure,
    "verify": cmd_verify,
    "twisted-classes": cmd_twisted,
    "steinberg-table": cmd_steinberg,
}


def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", help="Cartan type name such as A2, B3, G2")
    common.add_argument("--config", help="JSON file holding a Cartan matrix (or {'matrix': ..., 'label': ...})")
    common.add_argument("--delta", help="diagram automorphism as node images, e.g. 1,0 (verify also takes 'all')")
    common.add_argument("--format", choices=("json", "csv", "dot"))
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--rank-cap", type=int, default=None, help=f"rank cap (env {RANK_CAP_ENV}, default {DEFAULT_RANK_CAP})")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for verify")

    parser = argparse.ArgumentParser(prog="weyl-strata", description="Weyl group index combinatorics of stable pieces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list piece indices")
    what = p.add_mutually_exclusive_group()
    what.add_argument("--pieces", action="store_true", help="all pieces [J,w,v] for (K, delta) (default)")
    what.add_argument("--semistable", action="store_true", help="the semi-stable G-pieces")
    what.add_argument("--parabolic-closure", action="store_true", help="pieces in the closure of P_K")
    what.add_argument("--isolated-boundary", action="store_true", help="(J, w) boundary indices")
    p.add_argument("--K", default="", help="'' for the empty set, 'all', or comma-separated nodes")

    p = sub.add_parser("closure", parents=[common], help="downset of one piece")
    p.add_argument("--piece", required=True, help="J=<bitmask>;w=[..];v=[..]")
    p.add_argument("--K", default="")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} or all; repeatable")
    p.add_argument("--timing", action="store_true", help="include wall times in the JSON report")

    p = sub.add_parser("twisted-classes", parents=[common], help="sigma-twisted classes of W_K")
    p.add_argument("--K", default="")
    p.add_argument("--sigma", help="images of the nodes of K in increasing order (default identity)")

    p = sub.add_parser("steinberg-table", parents=[common], help="signed multiplicities per (J, T)")
    p.add_argument("--J", default=None, help="restrict to one J")
    return parser


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = build_config(args)
        return COMMANDS[cfg.command](cfg)
    except ConsistencyError as exc:
        print(f"consistency error: {exc}", file=sys.stderr)
        print(json.dumps(exc.witness, indent=2, default=str), file=sys.stderr)
        return 3
    except WeylStrataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
