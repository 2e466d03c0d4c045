"""Enumerate every solution for the five column orders and check that the groups are disjoint.

Solutions are compared by their forward map M_w . I_x^-1.
"""
import argparse
import time

import numpy as np

from epp5 import codec
from epp5.fast import enumerate_fast


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--designation", default="data/designation.txt")
    ap.add_argument("--jobs", type=int, default=None)
    args = ap.parse_args()
    mv = codec.read_designation(args.designation)

    sets = []
    for f in range(1, 6):
        order = (f,) + tuple(g for g in range(1, 6) if g != f)
        t0 = time.perf_counter()
        batch = enumerate_fast(mv, order, jobs=args.jobs)
        maps = batch.forward_maps()
        keys = {row.tobytes() for row in np.ascontiguousarray(maps)}
        sets.append(keys)
        bx = np.bincount(batch.bxor_counts())
        print(f"order {','.join(map(str, order))}: {len(batch)} solutions, "
              f"{len(keys)} distinct forward maps, min BXOR {np.nonzero(bx)[0][0]}, "
              f"{time.perf_counter() - t0:.1f} s")
    for i in range(5):
        for j in range(i + 1, 5):
            print(f"groups {i + 1} and {j + 1}: {len(sets[i] & sets[j])} shared")


if __name__ == "__main__":
    main()
