"""How many sampled comparable pairs have no separating point of T_n for
n <= N, as the stage budget N grows."""

import argparse
import random

from treeorders.approx import branch_decomposition, breakpoint_count, check_density
from treeorders.randgen import random_segtree, sample_comparable_pairs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trees", type=int, default=100)
    ap.add_argument("--pairs", type=int, default=50)
    ap.add_argument("--seed", type=int, default=6)
    ap.add_argument("--extra", type=int, nargs="+", default=[3, 10, 30, 100, 300])
    args = ap.parse_args()

    rng = random.Random(args.seed)
    cases = []
    for _ in range(args.trees):
        X = random_segtree(rng, 12)
        cases.append((branch_decomposition(X), sample_comparable_pairs(rng, X, args.pairs)))
    total = sum(len(p) for _, p in cases)
    print("N = breakpoints + k   unwitnessed pairs")
    for k in args.extra:
        miss = 0
        for d, pairs in cases:
            miss += sum(h is None for h in check_density(d, breakpoint_count(d) + k, pairs))
        print(f"k = {k:<18d} {miss}/{total}")


if __name__ == "__main__":
    main()
