"""Graded dimensions and Poincare polynomials of the shipped GKM graphs."""

import argparse

from equiloc.gkm import load_graph, poincare_rank_check
from equiloc.models import load_builtin_graph


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("graphs", nargs="*", default=["s2_t1", "s2_t2", "cp2"],
                    help="builtin names or JSON paths")
    ap.add_argument("-K", type=int, default=10)
    args = ap.parse_args()

    for name in args.graphs:
        g = load_graph(name) if name.endswith(".json") else load_builtin_graph(name)
        res = poincare_rank_check(g, args.K)
        print(f"{name}: dims {res.counts}")
        print(f"  P(q) coefficients {res.poly}, rank {res.rank}, |V| = {len(g.vertices)}, formal {res.formal}")


if __name__ == "__main__":
    main()
