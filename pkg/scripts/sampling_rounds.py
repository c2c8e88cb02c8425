"""How many sampling rounds the hop-limited forward pass needs as the
sample constant c shrinks.

    python scripts/sampling_rounds.py --seeds 20 --n 200 --p 0.05
"""

import argparse
from collections import Counter

from betweenness import generators as gen
from betweenness.errors import SamplingExhaustedError
from betweenness.parallel import SampleConfig, sampled_apsp
from betweenness.workers import WorkCounters


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--p", type=float, default=0.05)
    ap.add_argument("--c", default="0.25,0.5,1,2,3")
    args = ap.parse_args()
    graphs = [("gnp", lambda s: gen.gnp(args.n, args.p, s)),
              ("cycle", lambda s: gen.cycle(args.n + 1))]
    print("graph\tc\tsample\trounds_histogram\texhausted")
    for label, make in graphs:
        for c in (float(x) for x in args.c.split(",")):
            hist, exhausted = Counter(), 0
            for seed in range(args.seeds):
                cfg = SampleConfig(c=c, seed=seed)
                wc = WorkCounters()
                try:
                    sampled_apsp(make(seed), cfg, counters=wc)
                    hist[wc.rounds] += 1
                except SamplingExhaustedError:
                    exhausted += 1
            size = SampleConfig(c=c).sample_size(make(0).n)
            rounds = " ".join(f"{r}:{hist[r]}" for r in sorted(hist))
            print(f"{label}\t{c:g}\t{size}\t{rounds}\t{exhausted}")


if __name__ == "__main__":
    main()
