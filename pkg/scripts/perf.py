"""Timing runs for recognition and oriented completion.

Prints one row per instance: the family, n, m, answer and seconds.  The
completion rows double m at fixed edge density, so the ratio column shows
how runtime grows with m.
"""
import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from temporient.complete import solve_ttc_oriented  # noqa: E402
from temporient.core import TemporalGraph, Variant  # noqa: E402
from temporient.recognize import recognize_tto  # noqa: E402
from workloads import closed_graph, random_oriented  # noqa: E402


def random_graph(rng, n, m, max_label):
    pairs = set()
    while len(pairs) < m:
        pairs.add(tuple(sorted(rng.sample(range(n), 2))))
    return TemporalGraph([(str(a), str(b), rng.randint(1, max_label)) for a, b in sorted(pairs)],
                         vertices=[str(i) for i in range(n)])


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--sizes", type=int, nargs="+", default=[141, 200, 283, 400, 566])
    ap.add_argument("--density", type=float, default=0.05)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    print("family        n      m  answer  seconds")
    for _ in range(args.reps):
        g = random_graph(rng, 200, 2000, 5)
        res, sec = timed(lambda: recognize_tto(g))
        print(f"random      {g.n:4d} {g.m:6d}  {res.answer:6s}  {sec:.3f}")
    for _ in range(args.reps):
        g = closed_graph(rng, 200, 400)
        res, sec = timed(lambda: recognize_tto(g))
        print(f"closed      {g.n:4d} {g.m:6d}  {res.answer:6s}  {sec:.3f}")

    print("\ncompletion    n      m  seconds  ratio")
    prev = None
    for n in args.sizes:
        g, f = random_oriented(random.Random(args.seed), n, args.density)
        sec = min(timed(lambda: solve_ttc_oriented(g, f, g.n * g.n, Variant.TTO))[1]
                  for _ in range(args.reps))
        ratio = f"{sec / prev:.2f}" if prev else "-"
        print(f"oriented    {n:4d} {g.m:6d}  {sec:7.3f}  {ratio}")
        prev = sec


if __name__ == "__main__":
    main()
