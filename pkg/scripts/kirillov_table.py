"""Kirillov identity over a range of highest weights."""

import argparse
import itertools
import random

from equiloc import characters as ch
from equiloc.rootsys import build_root_system


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--type", default="A")
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--max-label", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rs = build_root_system(args.type, args.rank)
    rng = random.Random(args.seed)
    print(f"{rs.name}: labels, dim, structural, corollary, max numeric gap")
    for labels in itertools.product(range(args.max_label + 1), repeat=rs.rank):
        d = ch.DominantWeight.from_labels(rs, list(labels))
        rep = ch.kirillov_identity_check(d)
        lhs, rhs = ch.kirillov_sides(d)
        gap = 0.0
        for _ in range(10):
            X = ch.random_regular_point(rs, rng, scale=3.0, margin=1e-2)
            gap = max(gap, abs(lhs.exp_eval(X) - rhs.exp_eval(X)))
        print(f"{list(labels)!s:>12} {ch.weyl_dimension(d):5d} {rep.equal!s:>6} {rep.corollary_agrees!s:>6} {gap:9.1e}")


if __name__ == "__main__":
    main()
