"""Which partition feeds the hook and O factors of the closed vertex formula?

Tries all four readings against the box-counting oracle on every leg triple
of size <= max-leg and reports the number of disagreements per n.
"""
import argparse
import itertools

from orbivertex.boxcount import enumerate_vertex
from orbivertex.partitions import partitions_up_to
from orbivertex.znvertex import FormulaConvention, vertex


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-D", type=int, default=5)
    ap.add_argument("--max-leg", type=int, default=2)
    args = ap.parse_args()
    triples = list(itertools.product(partitions_up_to(args.max_leg), repeat=3))
    oracle = {(n, t): enumerate_vertex(t, n, args.D) for n in (1, 2, 3) for t in triples}
    for hooks, o in itertools.product((False, True), repeat=2):
        conv = FormulaConvention(hooks_of_conjugate=hooks, o_of_conjugate=o)
        bad = {n: sum(not vertex(t, n, args.D, conv).agrees(oracle[n, t], args.D) for t in triples)
               for n in (1, 2, 3)}
        print(f"hooks of conjugate={hooks!s:5} O of conjugate={o!s:5} disagreements {bad}")


if __name__ == "__main__":
    main()
