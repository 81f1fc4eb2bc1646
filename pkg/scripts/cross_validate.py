"""Compare every solver with the brute-force oracle on random instances.

Recognition (all four variants and multilayer) and oriented completion are
checked; any disagreement is printed with the instance in file format.
Exit status 1 if a mismatch was found.
"""
import argparse
import itertools
import random
import sys

from temporient.complete import solve_ttc_oriented
from temporient.core import MultiLabelTemporalGraph, Orientation, TemporalGraph, Variant, serialize_instance
from temporient.oracle import oracle_complete, oracle_multilayer, oracle_recognize_all
from temporient.recognize import recognize, solve_multilayer


def random_graph(rng, n, m, max_label):
    pairs = rng.sample(list(itertools.combinations(range(n), 2)), min(m, n * (n - 1) // 2))
    return TemporalGraph([(f"v{a}", f"v{b}", rng.randint(1, max_label)) for a, b in pairs],
                         vertices=[f"v{i}" for i in range(n)])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--max-m", type=int, default=12)
    ap.add_argument("--max-label", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    bad = 0

    def report(what, g):
        nonlocal bad
        bad += 1
        print(f"MISMATCH {what}\n{serialize_instance(g)}")

    for _ in range(args.count):
        g = random_graph(rng, rng.randint(2, args.max_n), rng.randint(0, args.max_m), args.max_label)
        truth = oracle_recognize_all(g)
        for v in Variant:
            if recognize(g, v).yes != (truth[v] is not None):
                report(f"recognize {v.value}", g)

        multi = MultiLabelTemporalGraph(
            [(g.names[u], g.names[w], tuple(sorted({t, rng.randint(1, args.max_label)}))) for u, w, t in g.edges],
            vertices=g.names)
        if solve_multilayer(multi).yes != (oracle_multilayer(multi) is not None):
            report("multilayer", multi)

        small = random_graph(rng, rng.randint(2, 5), rng.randint(0, 8), args.max_label)
        f = Orientation.of((u, w) if rng.random() < 0.5 else (w, u) for u, w in small.pairs)
        for v in Variant:
            best = oracle_complete(small, f, 3, v)
            res = solve_ttc_oriented(small, f, 3, v)
            if res.yes != (best is not None) or (res.yes and len(res.added) != best):
                report(f"complete {v.value}", small)

    print(f"{args.count} rounds, {bad} mismatches")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
