"""Exact shortest-sequence search for the C1beta1 matrix at increasing depth.

Memory grows about 8x per extra level.  Depth 11 needs roughly 3 GB and
depth 12 does not fit in 5 GB.
"""
import argparse
import time

from epp5 import NAMED_PATHS, DepthExceeded, Objective, codec, minimal_sequence, synthesize


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--designation", default="data/designation.txt")
    ap.add_argument("--name", default="C1beta1", choices=sorted(NAMED_PATHS))
    ap.add_argument("--objective", default="bxor", choices=("bxor", "total"))
    ap.add_argument("--from-depth", type=int, default=6)
    ap.add_argument("--to-depth", type=int, default=10)
    args = ap.parse_args()
    mv = codec.read_designation(args.designation)
    m_w = synthesize(mv, NAMED_PATHS[args.name]).m_w
    objective = Objective.parse(args.objective)

    for depth in range(args.from_depth, args.to_depth + 1):
        t0 = time.perf_counter()
        try:
            res = minimal_sequence(m_w, objective, max_depth=depth)
        except DepthExceeded:
            print(f"depth {depth}: nothing ({time.perf_counter() - t0:.1f} s)")
            continue
        bx, total = res.objective_value
        print(f"depth {depth}: {bx} BXOR + {total - bx} others, certified={res.certified} "
              f"({time.perf_counter() - t0:.1f} s)")
        print(res.best)
        break


if __name__ == "__main__":
    main()
