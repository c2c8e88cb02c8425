"""Closed-form families vs. computed betweenness.

Prints, per k, the cycle C_{4k+1} score next to k**2 and k(2k-1), and the
path P_{4k+1} middle score next to 4k**2.

    python scripts/closed_forms.py --kmax 10
"""

import argparse

from betweenness import generators as gen
from betweenness.brandes import brandes_bc
from betweenness.oracle import oracle_bc


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kmax", type=int, default=10)
    args = ap.parse_args()
    print("k\tn\tcycle_bc\tk^2\tk(2k-1)\toracle\tpath_mid\t4k^2")
    for k in range(1, args.kmax + 1):
        n = 4 * k + 1
        c = brandes_bc(gen.cycle(n))[0]
        exact = oracle_bc(gen.cycle(n))[0][0]
        mid = brandes_bc(gen.path(n))[2 * k]
        print(f"{k}\t{n}\t{c:g}\t{k * k}\t{k * (2 * k - 1)}\t{exact}\t{mid:g}\t{4 * k * k}")


if __name__ == "__main__":
    main()
