"""Glued DT of local footballs against the closed product formula, with timings."""
import argparse
import time

from orbivertex.gluing import (DTOptions, dt_partition_function, football_closed_form,
                               to_football_variables)
from orbivertex.webdiagram import load_example, orient


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-D", type=int, default=10)
    ap.add_argument("--vdegree", type=int, default=2)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    for a, b in [(1, 1), (2, 1), (2, 2), (2, 3), (3, 2)]:
        name = "conifold" if (a, b) == (1, 1) else f"football_{a}_{b}"
        t = time.perf_counter()
        s = dt_partition_function(orient(load_example(name)),
                                  DTOptions(D=args.D, Dv=args.vdegree, jobs=args.jobs))
        dt = time.perf_counter() - t
        ok = to_football_variables(s, a, b).agrees(football_closed_form(a, b, args.D, args.vdegree))
        print(f"({a},{b})  {len(s.terms):6d} terms  {dt:7.2f}s  closed form {'agrees' if ok else 'DIFFERS'}")


if __name__ == "__main__":
    main()
