"""Print the syndrome table, the seven named (v, w') columns and the stage counts."""
import argparse

from epp5 import NAMED_PATHS, ChoicePath, StageChoice, codec, synthesize, verify_solution
from epp5.cli import table1_tsv
from epp5.synthesis import count_stage_options, enumerate_solutions


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--designation", default="data/designation.txt")
    args = ap.parse_args()
    mv = codec.read_designation(args.designation)

    print(table1_tsv(mv))

    names = list(NAMED_PATHS)
    reports = {n: verify_solution(synthesize(mv, NAMED_PATHS[n]).m_w, mv) for n in names}
    print("v\t" + "\t".join(names))
    first = reports[names[0]].correspondence()
    for k, (v, _) in enumerate(first):
        print(f"{v}\t" + "\t".join(reports[n].correspondence()[k][1] for n in names))
    print()

    s1, s2 = NAMED_PATHS["A1alpha1"].stages[:2]
    swapped = StageChoice(s1.pivot, s1.assignment, order=(4, 2))
    print("stage 1 options:", count_stage_options(mv, ChoicePath()))
    print("stage 2 options (auto order):", count_stage_options(mv, ChoicePath(stages=(s1,))))
    print("stage 2 options (order 4,2):", count_stage_options(mv, ChoicePath(stages=(swapped,))))
    leaves = list(enumerate_solutions(mv, prefix=ChoicePath(stages=(s1, s2))))
    print("stage 3 leaves under A1:", len(leaves))


if __name__ == "__main__":
    main()
