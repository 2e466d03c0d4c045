"""Random-gate baseline: draw gates until a correcting M_w appears."""
import argparse
import time

from epp5 import codec, monte_carlo_search, verify_solution


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--designation", default="data/designation.txt")
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--max-len", type=int, default=10**6)
    args = ap.parse_args()
    mv = codec.read_designation(args.designation)

    for seed in range(args.seeds):
        t0 = time.perf_counter()
        rec = monte_carlo_search(mv, seed=seed, max_len=args.max_len)
        ok = verify_solution(rec.sequence, mv).passed
        print(f"seed {seed}: {len(rec.sequence)} draws ({rec.sequence.bxor_count} BXOR), "
              f"verify={ok}, {time.perf_counter() - t0:.2f} s")


if __name__ == "__main__":
    main()
