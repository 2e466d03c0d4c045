"""Text and JSON codecs for matrices, designations, sequences and records.

Matrix files are one row per line, '0'/'1' only, row 1 first, each line
newline-terminated.  Sequences and records are JSON.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .bell import DesignationMatrix
from .gates import BXOR, By, Gate, GateSequence, SxBx, Sz
from .gf2 import N, Mat10, str_to_word, word_to_str
from .synthesis import ChoicePath, EliminationStep, SolutionRecord


class ParseError(ValueError):
    """Malformed input; ``line`` and ``col`` are 1-based when known."""

    def __init__(self, msg: str, line: int | None = None, col: int | None = None, source: str | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {col}" if col is not None else "")
        prefix = ": ".join(x for x in (source, where) if x)
        super().__init__(f"{prefix}: {msg}" if prefix else msg)
        self.line = line
        self.col = col


# -- bit-matrix text --

def _parse_rows(text: str, nrows: int, source: str | None) -> tuple[int, ...]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
        terminated = True
    else:
        terminated = False
    for i, line in enumerate(lines[:nrows]):
        if len(line) != N:
            col = min(len(line), N) + 1
            raise ParseError(f"expected {N} characters, got {len(line)}", i + 1, col, source)
        for j, ch in enumerate(line):
            if ch not in "01":
                raise ParseError(f"unexpected character {ch!r}", i + 1, j + 1, source)
    if len(lines) < nrows:
        raise ParseError(f"expected {nrows} rows, got {len(lines)}", len(lines) + 1, 1, source)
    if len(lines) > nrows:
        raise ParseError(f"expected {nrows} rows, found extra content", nrows + 1, 1, source)
    if not terminated:
        raise ParseError("missing final newline", nrows, N + 1, source)
    return tuple(str_to_word(line) for line in lines)


def format_rows(rows) -> str:
    return "".join(word_to_str(r) + "\n" for r in rows)


def parse_mat10(text: str, source: str | None = None) -> Mat10:
    return Mat10(_parse_rows(text, N, source))


def format_mat10(m: Mat10) -> str:
    return format_rows(m.rows)


def parse_designation(text: str, source: str | None = None) -> DesignationMatrix:
    return DesignationMatrix(_parse_rows(text, 4, source))


def format_designation(mv: DesignationMatrix) -> str:
    return format_rows(mv.rows)


# -- gates and sequences --

def gate_to_json(g: Gate) -> dict:
    if isinstance(g, BXOR):
        return {"op": "BXOR", "source": g.source, "target": g.target}
    return {"op": type(g).__name__, "pair": g.pair}


_SINGLE = {"By": By, "SxBx": SxBx, "Sz": Sz}


def gate_from_json(d: Mapping) -> Gate:
    if not isinstance(d, Mapping):
        raise ParseError(f"gate must be an object, got {d!r}")
    op = d.get("op")
    try:
        if op == "BXOR":
            return BXOR(int(d["source"]), int(d["target"]))
        if op in _SINGLE:
            return _SINGLE[op](int(d["pair"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad {op} gate {dict(d)!r}: {e}") from None
    raise ParseError(f"unknown op {op!r}")


def sequence_to_json(seq: GateSequence) -> dict:
    return {"order": "reduction", "gates": [gate_to_json(g) for g in seq]}


def sequence_from_json(d: Any) -> GateSequence:
    if isinstance(d, list):
        gates = d
    elif isinstance(d, Mapping):
        order = d.get("order", "reduction")
        gates = d.get("gates", [])
        if order not in ("reduction", "physical"):
            raise ParseError(f"unknown sequence order {order!r}")
        if order == "physical":
            gates = list(reversed(gates))
    else:
        raise ParseError("sequence must be a list or an object with 'gates'")
    return GateSequence(tuple(gate_from_json(g) for g in gates))


# -- records --

def _words(lines, n: int, what: str) -> tuple[int, ...]:
    if not isinstance(lines, list) or len(lines) != n:
        raise ParseError(f"{what}: expected a list of {n} bit strings")
    out = []
    for i, s in enumerate(lines):
        if not isinstance(s, str) or len(s) != N or set(s) - {"0", "1"}:
            raise ParseError(f"{what}[{i}]: expected {N} characters of 0/1, got {s!r}")
        out.append(str_to_word(s))
    return tuple(out)


def record_to_json(rec: SolutionRecord) -> dict:
    return {
        "designation": rec.designation.lines(),
        "path": rec.path.to_json() if rec.path is not None else None,
        "m_w": rec.m_w.lines(),
        "i_x": rec.i_x.lines(),
        "sequence": sequence_to_json(rec.sequence),
        "counts": {f"stage{t + 1}": n for t, n in enumerate(rec.counts)},
        "steps": [{"group": s.group, "pivot": s.pivot, "target": s.target,
                   "gates": [gate_to_json(g) for g in s.gates]} for s in rec.steps],
        "label": rec.label,
        "bxor_count": rec.sequence.bxor_count,
        "total_ops": len(rec.sequence),
    }


def record_from_json(d: Mapping) -> SolutionRecord:
    if not isinstance(d, Mapping):
        raise ParseError("record must be a JSON object")
    for key in ("designation", "m_w", "i_x", "sequence"):
        if key not in d:
            raise ParseError(f"record is missing {key!r}")
    counts = d.get("counts") or {}
    try:
        ordered = tuple(int(counts[f"stage{t + 1}"]) for t in range(len(counts)))
    except (KeyError, ValueError, TypeError):
        raise ParseError(f"counts must be stage1..stageN, got {counts!r}") from None
    steps = tuple(EliminationStep(int(s["group"]), int(s["pivot"]), int(s["target"]),
                                  tuple(gate_from_json(g) for g in s["gates"]))
                  for s in d.get("steps", ()))
    path = ChoicePath.from_json(d["path"]) if d.get("path") is not None else None
    return SolutionRecord(
        m_w=Mat10(_words(d["m_w"], N, "m_w")),
        sequence=sequence_from_json(d["sequence"]),
        i_x=Mat10(_words(d["i_x"], N, "i_x")),
        path=path,
        designation=DesignationMatrix(_words(d["designation"], 4, "designation")),
        steps=steps,
        counts=ordered,
        label=d.get("label"),
    )


# -- JSON text and files --

def loads(text: str, source: str | None = None) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno, source) from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def encode(value) -> str:
    if isinstance(value, Mat10):
        return format_mat10(value)
    if isinstance(value, DesignationMatrix):
        return format_designation(value)
    if isinstance(value, GateSequence):
        return dumps(sequence_to_json(value))
    if isinstance(value, SolutionRecord):
        return dumps(record_to_json(value))
    raise TypeError(f"no codec for {type(value).__name__}")


def decode(text: str, kind: type):
    if kind is Mat10:
        return parse_mat10(text)
    if kind is DesignationMatrix:
        return parse_designation(text)
    if kind is GateSequence:
        return sequence_from_json(loads(text))
    if kind is SolutionRecord:
        return record_from_json(loads(text))
    raise TypeError(f"no codec for {kind.__name__}")


def read_mat10(path) -> Mat10:
    return parse_mat10(Path(path).read_text(encoding="utf-8"), str(path))


def read_designation(path) -> DesignationMatrix:
    return parse_designation(Path(path).read_text(encoding="utf-8"), str(path))


def read_json(path) -> Any:
    return loads(Path(path).read_text(encoding="utf-8"), str(path))


def read_sequence(path) -> GateSequence:
    return sequence_from_json(read_json(path))


def read_record(path) -> SolutionRecord:
    return record_from_json(read_json(path))


def read_matrix_or_record(path) -> Mat10:
    """M_w from either a 10-line matrix file or a record JSON."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return record_from_json(loads(text, str(path))).m_w
    return parse_mat10(text, str(path))
