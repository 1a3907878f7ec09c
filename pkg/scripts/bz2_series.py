"""Print the multi-regular BZ_2 gerbe series and compare it with the reference rational expansion."""
import argparse
import time

from orbivertex.acceptance import bz2_reference
from orbivertex.gluing import DTOptions, dt_multiregular
from orbivertex.webdiagram import load_example, orient


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-D", type=int, default=14, help="weighted q-degree")
    ap.add_argument("--terms", type=int, default=20)
    args = ap.parse_args()
    od = orient(load_example("bz2_gerbe"))
    t = time.perf_counter()
    s = dt_multiregular(od, DTOptions(D=args.D, Dv=2, signed=False))
    print(f"glued in {time.perf_counter() - t:.2f}s, {len(s.terms)} terms")
    print(s.to_text(args.terms))
    diff = s.window_diff(bz2_reference(s.reg, args.D))
    print("matches the reference expansion" if not diff else f"differs: {diff[:5]}")


if __name__ == "__main__":
    main()
