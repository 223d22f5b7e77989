"""Print the stage trace of a promise diagonalization on a random family."""

import argparse
import random

from treeorders.diag import check_state, diag_run
from treeorders.randgen import random_family
from treeorders.textio import serialize


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--k", type=int, default=8)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    fam = random_family(rng, max_k=args.k)
    print(serialize(fam), end="")
    st = diag_run(fam)
    for r in st.trace:
        print(f"stage {r.n}: f={r.word} promise={r.promise} {'fired' if r.fired else 'blocked'}")
    problems = check_state(st, fam)
    print("invariants:", "ok" if not problems else "; ".join(problems))


if __name__ == "__main__":
    main()
