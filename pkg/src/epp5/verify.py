"""Replay the sixteen syndromes through a Boolean function and audit recovery."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .bell import (BellLabel, DesignationMatrix, PauliOp, canonical_syndromes,
                   extract_measurement, pauli_for, truncated, validate_designation)
from .gates import FORWARD, GateSequence, sequence_matrix
from .gf2 import BitVec, Mat10, mat_vec, symplectic_check


@dataclass(frozen=True)
class SyndromeRow:
    i: int
    x: BitVec
    w: BitVec
    v: BitVec
    w_prime: BellLabel
    pauli: PauliOp
    restored: BellLabel

    def cells(self) -> list[str]:
        return [str(self.i), str(self.x), str(self.w), str(self.v), str(self.w_prime),
                self.pauli.value, str(self.restored)]


TSV_HEADER = ("i", "x", "w", "v", "w_prime", "recovery", "restored")


@dataclass
class VerificationReport:
    rows: list[SyndromeRow]
    passed: bool
    reasons: list[str] = field(default_factory=list)

    def correspondence(self) -> list[tuple[str, str]]:
        """(v, w') per syndrome index, the Table-2 view of the function."""
        return [(str(r.v), str(r.w_prime)) for r in self.rows]

    def to_tsv(self) -> str:
        lines = ["\t".join(TSV_HEADER)]
        lines += ["\t".join(r.cells()) for r in self.rows]
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        return {"pass": self.passed, "reasons": list(self.reasons),
                "correspondence": [{"i": r.i, "v": str(r.v), "w_prime": str(r.w_prime)} for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.summary(), indent=2)


# every gate preserves J, so a map that does not cannot be built from them
_NOT_REALIZABLE = "matrix is not symplectic, so no gate sequence realizes it"


def _replay(matrix: Mat10, offset: int = 0) -> list[SyndromeRow]:
    rows = []
    for i, x in enumerate(canonical_syndromes()):
        w = BitVec(mat_vec(matrix, x).word ^ offset)
        label = truncated(w)
        op = pauli_for(label)
        rows.append(SyndromeRow(i, x, w, extract_measurement(w), label, op, op.apply(label)))
    return rows


def _check_rows(rows: Sequence[SyndromeRow]) -> list[str]:
    reasons = []
    seen: dict[int, int] = {}
    for r in rows:
        if r.v.word in seen:
            reasons.append(f"v({seen[r.v.word]}) = v({r.i}) = {r.v}")
        else:
            seen[r.v.word] = r.i
        if r.restored != BellLabel.PHI_PLUS:
            reasons.append(f"syndrome {r.i} restores to {r.restored}")
    return reasons


def _groups(mv: DesignationMatrix) -> set[frozenset[int]]:
    vt = mv.vtable()
    return {frozenset(v.word for v in vt[3 * k - 2:3 * k + 1]) for k in range(1, 6)}


def verify_solution(obj: Mat10 | GateSequence, mv: DesignationMatrix) -> VerificationReport:
    """Audit ``obj`` against designation ``mv``.

    A Mat10 is taken as M_w itself and its measured rows must equal ``mv``.
    A sequence is judged through its forward map M_wx, which may differ from
    M_w by a block permutation, so its measured rows need only induce the
    same five four-groups as ``mv``.
    """
    reasons = []
    if isinstance(obj, Mat10):
        rows = _replay(obj)
        if DesignationMatrix.of(obj) != mv:
            reasons.append("measured rows 4, 6, 8, 10 differ from the designation")
        if not symplectic_check(obj):
            reasons.append(_NOT_REALIZABLE)
    else:
        amap = sequence_matrix(obj, FORWARD)
        rows = _replay(amap.matrix, amap.offset.word)
        induced = DesignationMatrix.of(amap.matrix)
        if not validate_designation(induced).ok or _groups(induced) != _groups(mv):
            reasons.append("measured rows do not realize the designation's four-groups")
    reasons += _check_rows(rows)
    return VerificationReport(rows, not reasons, reasons)


def check_correction(m_w: Mat10) -> bool:
    """True iff ``m_w`` is realizable by the gates and the measurement v of
    every single error pins down w'."""
    if not symplectic_check(m_w) or not validate_designation(DesignationMatrix.of(m_w)).ok:
        return False
    return not _check_rows(_replay(m_w))
