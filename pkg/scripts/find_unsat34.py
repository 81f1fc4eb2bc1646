"""Search for small unsatisfiable (3,4)-SAT formulas by hill climbing.

The score is the number of satisfying assignments (from the truth table);
moves flip one literal sign or swap two occurrences between clauses.
Found formulas are written as DIMACS files.  With --repeats a clause may
mention a variable more than once; small unsatisfiable formulas seem not to
exist otherwise (the search bottoms out at a handful of models).
"""
import argparse
import random
from pathlib import Path

from temporient.reductions import CnfFormula, CnfKind, satisfied_counts, to_dimacs


def _valid(c, repeats):
    return repeats or len({abs(x) for x in c}) == 3


def random_formula(n, rng, repeats=False):
    while True:
        pool = [v for v in range(1, n + 1) for _ in range(4)]
        rng.shuffle(pool)
        cl = [pool[i:i + 3] for i in range(0, len(pool), 3)]
        if all(_valid(c, repeats) for c in cl):
            return [[x * rng.choice((1, -1)) for x in c] for c in cl]


def models(n, cl):
    f = CnfFormula(n, tuple(map(tuple, cl)), CnfKind.SAT34)
    return int((satisfied_counts(f) == f.m).sum())


def neighbour(cl, rng, repeats=False):
    new = [list(c) for c in cl]
    if rng.random() < 0.5:
        i, j = rng.randrange(len(new)), rng.randrange(3)
        new[i][j] = -new[i][j]
    else:
        i, k = rng.sample(range(len(new)), 2)
        j, l = rng.randrange(3), rng.randrange(3)
        new[i][j], new[k][l] = new[k][l], new[i][j]
        if not (_valid(new[i], repeats) and _valid(new[k], repeats)):
            return None
    return new


def search(n, rng, steps, repeats=False):
    cl = random_formula(n, rng, repeats)
    score = models(n, cl)
    for _ in range(steps):
        if score == 0:
            return cl
        cand = neighbour(cl, rng, repeats)
        if cand is None:
            continue
        s = models(n, cand)
        if s <= score or rng.random() < 0.02:
            cl, score = cand, s
    return cl if score == 0 else None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[6, 9, 12])
    ap.add_argument("--count", type=int, default=3)
    ap.add_argument("--steps", type=int, default=20000)
    ap.add_argument("--repeats", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=Path("tests/data/unsat34"))
    args = ap.parse_args()
    rng = random.Random(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    for n in args.n:
        found = 0
        for attempt in range(50):
            cl = search(n, rng, args.steps, args.repeats)
            if cl is None:
                continue
            f = CnfFormula(n, tuple(map(tuple, cl)), CnfKind.SAT34)
            path = args.out / f"n{n}_{found}.cnf"
            path.write_text(to_dimacs(f))
            print(f"n={n}: wrote {path} after {attempt + 1} restarts")
            found += 1
            if found == args.count:
                break
        if found < args.count:
            print(f"n={n}: only {found} unsatisfiable formulas found")


if __name__ == "__main__":
    main()
