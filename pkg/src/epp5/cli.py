"""Command-line front end: synth, verify, optimize, render, tables.

Exit codes: 0 success, 1 verification failure (or no sequence within the
search bound), 2 usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import codec
from .bell import DesignationCollision, DesignationMatrix, table1, validate_designation
from .optimize import DepthExceeded, Objective, minimal_sequence, permute_and_reduce
from .render import render_sequence
from .synthesis import ChoicePath, SolutionRecord, SynthesisError, synthesize
from .verify import verify_solution

log = logging.getLogger("epp5")

SOLUTIONS_HEADER = ("index", "options", "bxor", "ops", "m_w", "i_x", "m_wx", "sequence")


class UsageError(Exception):
    pass


def _column_order(text: str) -> tuple[int, ...]:
    try:
        order = tuple(int(c) for c in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a column order: {text!r}") from None
    if len(order) == 1 and len(text.strip()) == 5:
        order = tuple(int(c) for c in text.strip())
    if sorted(order) != [1, 2, 3, 4, 5]:
        raise argparse.ArgumentTypeError(f"column order must permute 1..5: {text!r}")
    return order


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="epp5", description="Boolean functions for the 5-pair Bell-state code")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="synthesize M_w and its gate sequence")
    s.add_argument("--designation", required=True, type=Path)
    s.add_argument("--column-order", type=_column_order, default=None,
                   help="processing order of the column groups, e.g. 1,2,3,4,5")
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--enumerate-all", action="store_true")
    mode.add_argument("--choices", type=Path)
    s.add_argument("--limit", type=_positive, default=None)
    s.add_argument("--jobs", type=_positive, default=None, help="worker processes (default $EPP5_JOBS or 1)")
    s.add_argument("-o", "--out", type=Path, required=True)

    v = sub.add_parser("verify", help="replay the 16 syndromes")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--mw", type=Path, help="matrix file or record JSON")
    src.add_argument("--sequence", type=Path, help="sequence JSON or record JSON")
    v.add_argument("--designation", type=Path)
    v.add_argument("-o", "--out", type=Path, help="directory for report.tsv and summary.json")

    o = sub.add_parser("optimize", help="shorten a gate sequence")
    o.add_argument("--mw", type=Path, required=True, help="matrix file or record JSON")
    o.add_argument("--objective", choices=("bxor", "total"), default="bxor")
    o.add_argument("--max-depth", type=_positive, default=9)
    o.add_argument("--max-bxor", type=_positive, default=None)
    o.add_argument("--time-limit", type=float, default=None)
    o.add_argument("--permute-only", action="store_true")
    o.add_argument("-o", "--out", type=Path)

    r = sub.add_parser("render", help="draw a gate array")
    r.add_argument("--sequence", type=Path, required=True, help="sequence JSON or record JSON")

    t = sub.add_parser("tables", help="syndrome/measurement correspondence")
    t.add_argument("--designation", type=Path, required=True)
    return p


def _designation(path: Path) -> DesignationMatrix:
    mv = codec.read_designation(path)
    validate_designation(mv).raise_if_invalid()
    return mv


def _load_sequence_or_record(path: Path):
    d = codec.read_json(path)
    if isinstance(d, dict) and "m_w" in d:
        return codec.record_from_json(d)
    return codec.sequence_from_json(d)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


# -- synth --

def _synth_one(args, mv: DesignationMatrix) -> int:
    d = codec.read_json(args.choices)
    try:
        path = ChoicePath.from_json(d)
    except (TypeError, ValueError, AttributeError) as e:
        raise codec.ParseError(f"bad choice path: {e}", source=str(args.choices)) from None
    if args.column_order is not None:
        path = ChoicePath(args.column_order, path.stages)
    rec = synthesize(mv, path, label=d.get("label") if isinstance(d, dict) else None)
    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    _write(out / "record.json", codec.encode(rec))
    _write(out / "m_w.txt", codec.format_mat10(rec.m_w))
    _write(out / "sequence.json", codec.encode(rec.sequence))
    _write(out / "diagram.txt", render_sequence(rec.sequence))
    report = verify_solution(rec.m_w, mv)
    summary = {"label": rec.label, "column_order": list(path.column_order), "counts": list(rec.counts),
               "bxor_count": rec.sequence.bxor_count, "total_ops": len(rec.sequence),
               "verified": report.passed}
    _write(out / "summary.json", codec.dumps(summary))
    print(codec.format_mat10(rec.m_w), end="")
    return 0 if report.passed else 1


def write_solutions(batch, path: Path, limit: int | None = None) -> int:
    from .fast import tsv_body

    n = len(batch) if limit is None else min(limit, len(batch))
    with open(path, "wb") as fh:
        fh.write(("\t".join(SOLUTIONS_HEADER) + "\n").encode())
        fh.write(tsv_body(batch, n))
    return n


def read_solutions(path: Path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split("\t")
        return [dict(zip(header, line.rstrip("\n").split("\t"))) for line in fh]


def _synth_all(args, mv: DesignationMatrix) -> int:
    from .fast import enumerate_fast

    order = args.column_order or (1, 2, 3, 4, 5)
    t0 = time.monotonic()
    batch = enumerate_fast(mv, order, jobs=args.jobs)
    t1 = time.monotonic()
    args.out.mkdir(parents=True, exist_ok=True)
    n = write_solutions(batch, args.out / "solutions.tsv", args.limit)
    hist: dict[int, int] = {}
    for b in batch.bxor_counts().tolist():
        hist[b] = hist.get(b, 0) + 1
    summary = {
        "column_order": list(order),
        "solutions": len(batch),
        "written": n,
        "stage_options": batch.stage_options.tolist(),
        "stage_infeasible": batch.stage_infeasible.tolist(),
        "bxor_histogram": {str(k): hist[k] for k in sorted(hist)},
        "enumerate_seconds": round(t1 - t0, 3),
    }
    _write(args.out / "summary.json", codec.dumps(summary))
    print(f"{len(batch)} solutions for column order {','.join(map(str, order))}")
    return 0


def cmd_synth(args) -> int:
    mv = _designation(args.designation)
    if args.enumerate_all:
        return _synth_all(args, mv)
    if args.limit is not None:
        raise UsageError("--limit applies to --enumerate-all")
    return _synth_one(args, mv)


# -- verify --

def cmd_verify(args) -> int:
    mv = _designation(args.designation) if args.designation else None
    if args.mw is not None:
        text = args.mw.read_text(encoding="utf-8")
        if text.lstrip().startswith("{"):
            rec = codec.record_from_json(codec.loads(text, str(args.mw)))
            obj, mv = rec.m_w, mv or rec.designation
        else:
            obj = codec.parse_mat10(text, str(args.mw))
            mv = mv or DesignationMatrix.of(obj)
    else:
        loaded = _load_sequence_or_record(args.sequence)
        if isinstance(loaded, SolutionRecord):
            obj, mv = loaded.sequence, mv or loaded.designation
        else:
            if mv is None:
                raise UsageError("--sequence needs --designation")
            obj = loaded
    report = verify_solution(obj, mv)
    sys.stdout.write(report.to_tsv())
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        _write(args.out / "report.tsv", report.to_tsv())
        _write(args.out / "summary.json", report.to_json() + "\n")
    print(json.dumps({"pass": report.passed, "reasons": report.reasons}), file=sys.stderr)
    return 0 if report.passed else 1


# -- optimize --

def cmd_optimize(args) -> int:
    text = args.mw.read_text(encoding="utf-8")
    rec = None
    if text.lstrip().startswith("{"):
        rec = codec.record_from_json(codec.loads(text, str(args.mw)))
        m_w = rec.m_w
    else:
        m_w = codec.parse_mat10(text, str(args.mw))
    objective = Objective.parse(args.objective)
    if args.permute_only:
        if rec is None:
            raise UsageError("--permute-only needs a record JSON (it permutes an existing sequence)")
        res = permute_and_reduce(rec, objective)
        optimality = {"certified": False, "depth": None, "method": "permute",
                      "explored": res.explored}
    else:
        try:
            res = minimal_sequence(m_w, objective, args.max_depth, args.max_bxor, args.time_limit)
        except DepthExceeded as e:
            print(f"epp5 optimize: {e}", file=sys.stderr)
            print(codec.dumps({"optimality": {"certified": True, "depth": args.max_depth,
                                              "found": False}}), end="")
            return 1
        optimality = {"certified": res.certified, "depth": res.depth, "method": "meet-in-the-middle",
                      "explored": res.explored}
    designation = rec.designation if rec is not None else DesignationMatrix.of(m_w)
    out = SolutionRecord(m_w, res.best, res.best_i_x, rec.path if rec else None, designation,
                         counts=rec.counts if rec else (), label=rec.label if rec else None)
    d = codec.record_to_json(out)
    d["optimality"] = optimality
    text = codec.dumps(d)
    if args.out is not None:
        _write(args.out, text)
    sys.stdout.write(text)
    return 0


# -- render / tables --

def cmd_render(args) -> int:
    loaded = _load_sequence_or_record(args.sequence)
    seq = loaded.sequence if isinstance(loaded, SolutionRecord) else loaded
    sys.stdout.write(render_sequence(seq))
    return 0


def table1_tsv(mv: DesignationMatrix) -> str:
    lines = ["i\tx\tv"]
    lines += [f"{i}\t{x}\t{v}" for i, x, v in table1(mv)]
    return "\n".join(lines) + "\n"


def cmd_tables(args) -> int:
    sys.stdout.write(table1_tsv(_designation(args.designation)))
    return 0


COMMANDS = {"synth": cmd_synth, "verify": cmd_verify, "optimize": cmd_optimize,
            "render": cmd_render, "tables": cmd_tables}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, codec.ParseError, DesignationCollision, SynthesisError,
            FileNotFoundError, ValueError) as e:
        print(f"epp5 {args.command}: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
