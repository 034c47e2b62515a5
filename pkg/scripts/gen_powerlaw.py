#!/usr/bin/env python3
"""Generate a synthetic directed power-law edge list for benchmarking.

Example:
    python3 scripts/gen_powerlaw.py --nodes 50000 --edges 100000 -o big.tsv
"""
import argparse
import sys

from reachsym.synthetic import powerlaw_digraph, write_edge_list


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nodes", type=int, default=50_000)
    ap.add_argument("--edges", type=int, default=100_000)
    ap.add_argument("--exponent", type=float, default=0.45,
                    help="attachment-weight exponent; larger = stronger hubs")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-o", "--output", default=None)
    args = ap.parse_args()

    g = powerlaw_digraph(args.nodes, args.edges, args.exponent, seed=args.seed)
    if args.output:
        with open(args.output, "w") as fh:
            write_edge_list(g, fh)
    else:
        write_edge_list(g, sys.stdout)
    print(f"nodes={g.n} edges={g.edge_count}", file=sys.stderr)


if __name__ == "__main__":
    main()
