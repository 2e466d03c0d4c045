"""Bell-label coding, the sixteen single-error syndromes and Pauli recovery."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .gf2 import N, BitVec, Mat10, str_to_word, word_to_str

MEASURED_ROWS = (4, 6, 8, 10)  # 1-based rows read out as the measurement result


class BellLabel(enum.Enum):
    """Two-bit code (phase, amplitude) of a Bell state."""

    PHI_PLUS = (0, 0)
    PHI_MINUS = (1, 0)
    PSI_PLUS = (0, 1)
    PSI_MINUS = (1, 1)

    @property
    def phase(self) -> int:
        return self.value[0]

    @property
    def amplitude(self) -> int:
        return self.value[1]

    @classmethod
    def from_bits(cls, phase: int, amplitude: int) -> "BellLabel":
        return cls((phase, amplitude))

    @classmethod
    def parse(cls, text: str) -> "BellLabel":
        return cls((int(text[0]), int(text[1])))

    def __str__(self) -> str:
        return f"{self.phase}{self.amplitude}"


class PauliOp(enum.Enum):
    IDENTITY = "1"
    SIGMA_X = "sigma_x"
    SIGMA_Y = "sigma_y"
    SIGMA_Z = "sigma_z"

    def apply(self, label: BellLabel) -> BellLabel:
        # sigma_x flips the amplitude bit, sigma_z the phase bit, sigma_y both.
        flip_phase = self in (PauliOp.SIGMA_Z, PauliOp.SIGMA_Y)
        flip_amp = self in (PauliOp.SIGMA_X, PauliOp.SIGMA_Y)
        return BellLabel.from_bits(label.phase ^ flip_phase, label.amplitude ^ flip_amp)


_RECOVERY = {
    BellLabel.PHI_PLUS: PauliOp.IDENTITY,
    BellLabel.PSI_PLUS: PauliOp.SIGMA_X,
    BellLabel.PSI_MINUS: PauliOp.SIGMA_Y,
    BellLabel.PHI_MINUS: PauliOp.SIGMA_Z,
}


def pauli_for(current: BellLabel) -> PauliOp:
    """The Pauli rotation taking ``current`` back to PHI_PLUS (00)."""
    return _RECOVERY[current]


def canonical_syndromes() -> list[BitVec]:
    """x(0)..x(15): for pair k, x(3k-2) flips the phase bit, x(3k-1) the
    amplitude bit and x(3k) both."""
    out = [BitVec(0)]
    for k in range(1, 6):
        ph = 1 << (2 * k - 2)
        am = 1 << (2 * k - 1)
        out += [BitVec(ph), BitVec(am), BitVec(ph | am)]
    return out


def basis_index(i: int) -> int | None:
    """Column (1-based) of the M_w basis holding syndrome ``i``, or None for
    x(0) and the closures x(3k)."""
    if i == 0 or i % 3 == 0:
        return None
    k = (i + 2) // 3
    return 2 * k - 1 if i % 3 == 1 else 2 * k


def extract_measurement(w: BitVec) -> BitVec:
    """Components 4, 6, 8, 10 of ``w``."""
    word = 0
    for i, r in enumerate(MEASURED_ROWS):
        word |= ((w.word >> (r - 1)) & 1) << i
    return BitVec(word, 4)


def truncated(w: BitVec) -> BellLabel:
    """Label of the unmeasured pair (components 1, 2)."""
    return BellLabel.from_bits(w.word & 1, (w.word >> 1) & 1)


class DesignationCollision(ValueError):
    def __init__(self, i: int, j: int):
        super().__init__(f"measurement vectors v({i}) and v({j}) coincide")
        self.i = i
        self.j = j


@dataclass(frozen=True)
class DesignationMatrix:
    """4x10 array of prescribed measurement results, one row word per row."""

    rows: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.rows) != 4:
            raise ValueError("a designation has exactly 4 rows")
        for r in self.rows:
            if r < 0 or r >> N:
                raise ValueError(f"row {r:#x} does not fit in {N} bits")

    @classmethod
    def parse(cls, lines: Sequence[str]) -> "DesignationMatrix":
        return cls(tuple(str_to_word(line.strip()) for line in lines))

    @classmethod
    def of(cls, m: Mat10) -> "DesignationMatrix":
        """The designation embedded in rows 4, 6, 8, 10 of ``m``."""
        return cls(tuple(m.rows[r - 1] for r in MEASURED_ROWS))

    def column(self, j: int) -> BitVec:
        word = 0
        for i, r in enumerate(self.rows):
            word |= ((r >> (j - 1)) & 1) << i
        return BitVec(word, 4)

    def vtable(self) -> list[BitVec]:
        """v(0)..v(15) including the closures v(3k) = v(3k-2) ^ v(3k-1)."""
        out = [BitVec(0, 4)]
        for k in range(1, 6):
            a, b = self.column(2 * k - 1), self.column(2 * k)
            out += [a, b, a ^ b]
        return out

    def lines(self) -> list[str]:
        return [word_to_str(r) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(self.lines())


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    vtable: tuple[BitVec, ...]
    collision: tuple[int, int] | None = None

    def raise_if_invalid(self) -> None:
        if not self.ok:
            raise DesignationCollision(*self.collision)


def validate_designation(mv: DesignationMatrix) -> ValidationResult:
    table = tuple(mv.vtable())
    seen: dict[int, int] = {}
    for i, v in enumerate(table):
        if v.word in seen:
            return ValidationResult(False, table, (seen[v.word], i))
        seen[v.word] = i
    return ValidationResult(True, table)


def table1(mv: DesignationMatrix) -> list[tuple[int, BitVec, BitVec]]:
    """The 16 rows (i, x(i), v(i)) of the syndrome/measurement correspondence."""
    res = validate_designation(mv)
    res.raise_if_invalid()
    return list(zip(range(16), canonical_syndromes(), res.vtable))


@dataclass
class RecoveryTable:
    """Bob's lookup from a measured v to the unmeasured label and its rotation."""

    entries: dict[BitVec, tuple[BellLabel, PauliOp]] = field(default_factory=dict)

    def add(self, v: BitVec, label: BellLabel) -> None:
        self.entries.setdefault(v, (label, pauli_for(label)))

    def lookup(self, v: BitVec) -> tuple[BellLabel, PauliOp]:
        return self.entries[v]

    def is_complete(self) -> bool:
        return len(self.entries) == 16

    def __len__(self) -> int:
        return len(self.entries)
