"""Command-line driver: symmetrize / hierarchy / stats subcommands.

Results go to standard output (or ``-o``); summary statistics go to standard
error so stdout stays pipe-clean TSV.  Exit codes: 0 success, 1 validation
error, 2 I/O error, 3 parse error.
"""
from __future__ import annotations

import argparse
import math
import sys
import time
from collections import Counter

import numpy as np
import scipy.sparse as sp

from .accumulator import SimilarityAccumulator
from .closure import local_closure
from .graph import (DirectedGraph, ParseError, UndirectedWeightedGraph,
                    ValidationError, load_edge_list, write_undirected)
from .hierarchy import auto_hierarchy, load_hierarchy, pair_hierarchy_discount
from .oracle import dense_closure, dense_similarity
from .similarity import SymmetrizationConfig, sparsify_top_t, symmetrize


class _Parser(argparse.ArgumentParser):
    # Map argparse usage errors onto the validation exit code.
    def error(self, message):
        raise ValidationError(message)


def _parse_depth(text: str):
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        val = int(text)
    except ValueError:
        raise ValidationError(f"invalid depth {text!r}") from None
    if val < 1:
        raise ValidationError("depth must be ≥ 1")
    return val


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="reachsym",
                description="Symmetrize a directed graph into a weighted "
                            "undirected graph via bounded reachability.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def add_io(sp_, output=True):
        sp_.add_argument("-i", "--input", required=True, help="input edge-list TSV")
        if output:
            sp_.add_argument("-o", "--output", default=None,
                             help="output path (default: stdout)")

    s = sub.add_parser("symmetrize", help="compute the undirected similarity graph")
    add_io(s)
    s.add_argument("--method", default="reach",
                   choices=["reach", "degree-discounted", "bibliometric"])
    s.add_argument("--l", default=None, metavar="DEPTH",
                   help="reach depth bound: integer ≥ 1 or 'inf' (default 2)")
    s.add_argument("--alpha", type=float, default=0.5)
    s.add_argument("--beta", type=float, default=0.5)
    s.add_argument("--gamma", type=float, default=None,
                   help="pair-level hierarchy exponent (default 1)")
    s.add_argument("--delta", type=float, default=None,
                   help="common-neighbor hierarchy exponent (default 1)")
    s.add_argument("--hierarchy", default="none", metavar="none|auto|file:PATH")
    s.add_argument("--epsilon", type=float, default=0.0,
                   help="drop pair weights ≤ epsilon")
    s.add_argument("--top-t", type=int, default=None,
                   help="keep only each node's top-t edges (union semantics)")
    s.add_argument("--hub-cap", type=int, default=None,
                   help="skip common neighbors above this closure degree")
    s.add_argument("--weighted", action="store_true",
                   help="input has a third weight column")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--precision", type=int, default=6)
    s.add_argument("--oracle", action="store_true", help=argparse.SUPPRESS)

    h = sub.add_parser("hierarchy", help="emit auto-computed hierarchy scores")
    add_io(h)
    h.add_argument("--weighted", action="store_true")
    h.add_argument("--precision", type=int, default=6)

    t = sub.add_parser("stats", help="print node/edge counts and degree histograms")
    add_io(t, output=False)
    t.add_argument("--l", default=None, metavar="DEPTH",
                   help="also print closure-degree histograms at this depth")
    t.add_argument("--weighted", action="store_true")
    p.set_defaults(threads=1)
    return p


def _load_graph(args) -> DirectedGraph:
    with open(args.input, "r", encoding="utf-8") as f:
        return load_edge_list(f, weighted=getattr(args, "weighted", False))


def _resolve_hierarchy(args, g):
    choice = args.hierarchy
    if choice == "none":
        return "none", None
    if choice == "auto":
        return "auto", auto_hierarchy(g)
    if choice.startswith("file:"):
        path = choice[len("file:"):]
        with open(path, "r", encoding="utf-8") as f:
            return "file", load_hierarchy(f, g)
    raise ValidationError(f"invalid --hierarchy value {choice!r}")


def _oracle_symmetrize(g, cfg, h) -> UndirectedWeightedGraph:
    closure = dense_closure(g, cfg.l)
    hh = h if cfg.hierarchy_mode != "none" else None
    _, _, a_u = dense_similarity(closure, cfg.alpha, cfg.beta, h=hh,
                                 delta=cfg.delta)
    acc = SimilarityAccumulator.from_matrix(sp.csr_matrix(np.triu(a_u, 1)), g.n)
    if hh is not None:
        acc = pair_hierarchy_discount(acc, hh, cfg.gamma)
    keep = acc.w > cfg.epsilon
    out = UndirectedWeightedGraph(g.n, g.labels, acc.u[keep], acc.v[keep],
                                  acc.w[keep])
    if cfg.top_t is not None:
        out = sparsify_top_t(out, cfg.top_t)
    return out


def run_symmetrize(args) -> int:
    t0 = time.perf_counter()
    if args.l is not None and args.method != "reach":
        raise ValidationError("--l only applies to --method reach")
    if args.hierarchy == "none" and (args.gamma is not None or args.delta is not None):
        raise ValidationError("--gamma/--delta require --hierarchy auto or file:PATH")
    l = _parse_depth(args.l) if args.l is not None else 2
    g = _load_graph(args)
    mode, scores = _resolve_hierarchy(args, g)
    cfg = SymmetrizationConfig(
        method=args.method, l=l, alpha=args.alpha, beta=args.beta,
        gamma=args.gamma if args.gamma is not None else 1.0,
        delta=args.delta if args.delta is not None else 1.0,
        hierarchy_mode=mode, epsilon=args.epsilon, top_t=args.top_t,
        hub_cap=args.hub_cap, threads=args.threads)
    cfg.validate()
    if args.oracle:
        result = _oracle_symmetrize(g, cfg, scores)
    else:
        result = symmetrize(g, cfg, scores)
    _emit(args, lambda f: write_undirected(result, f, precision=args.precision))
    print(f"nodes={g.n} edges={g.edge_count} "
          f"undirected_edges={result.edge_count} "
          f"self_loops_dropped={g.self_loops_dropped} "
          f"seconds={time.perf_counter() - t0:.2f}", file=sys.stderr)
    return 0


def run_hierarchy(args) -> int:
    g = _load_graph(args)
    scores = auto_hierarchy(g)
    fmt = f"%.{args.precision}f"
    _emit(args, lambda f: f.writelines(
        f"{lab}\t{fmt % s}\n" for lab, s in zip(g.labels, scores.score.tolist())))
    return 0


def run_stats(args) -> int:
    g = _load_graph(args)
    out = sys.stdout
    out.write(f"nodes\t{g.n}\n")
    out.write(f"edges\t{g.edge_count}\n")
    out.write(f"self_loops_dropped\t{g.self_loops_dropped}\n")

    def hist(name, degrees):
        for d, c in sorted(Counter(degrees.tolist()).items()):
            out.write(f"{name}\t{d}\t{c}\n")

    hist("out_degree", np.diff(g.adj.indptr))
    hist("in_degree", np.diff(g.rev.indptr))
    if args.l is not None:
        c = local_closure(g, _parse_depth(args.l))
        hist("closure_out_degree", c.d_out_plus)
        hist("closure_in_degree", c.d_in_plus)
    return 0


def _emit(args, write_fn) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as f:
            write_fn(f)
    else:
        write_fn(sys.stdout)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        runner = {"symmetrize": run_symmetrize,
                  "hierarchy": run_hierarchy,
                  "stats": run_stats}[args.subcommand]
        return runner(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
