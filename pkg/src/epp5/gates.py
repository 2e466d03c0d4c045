"""The four basic bilateral/unilateral operations as bit maps and row operations.

Gate sequences are stored in *reduction* order: applying the gates first to
last (``backward``) carries M_w to its reduced form, and the physical
encoding applies them last to first (``forward``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .gf2 import N, PAIRS, BitVec, Mat10, apply_rows, mul_rows

FORWARD = "forward"
BACKWARD = "backward"


def _check_pair(p: int) -> None:
    if not isinstance(p, int) or not 1 <= p <= PAIRS:
        raise ValueError(f"pair index out of range: {p!r}")


@dataclass(frozen=True)
class BXOR:
    """Bilateral XOR: (xS, yS)(xT, yT) -> (xS^xT, yS)(xT, yS^yT)."""

    source: int
    target: int

    def __post_init__(self):
        _check_pair(self.source)
        _check_pair(self.target)
        if self.source == self.target:
            raise ValueError("BXOR source and target must differ")

    @property
    def pairs(self) -> tuple[int, ...]:
        return (self.source, self.target)

    def __str__(self):
        return f"BXOR({self.source}->{self.target})"


@dataclass(frozen=True)
class By:
    """Bilateral pi/2 y-rotation: (x, y) -> (y, x)."""

    pair: int

    def __post_init__(self):
        _check_pair(self.pair)

    @property
    def pairs(self) -> tuple[int, ...]:
        return (self.pair,)

    def __str__(self):
        return f"By({self.pair})"


@dataclass(frozen=True)
class SxBx:
    """sigma_x B_x: (x, y) -> (x, x^y)."""

    pair: int

    def __post_init__(self):
        _check_pair(self.pair)

    @property
    def pairs(self) -> tuple[int, ...]:
        return (self.pair,)

    def __str__(self):
        return f"SxBx({self.pair})"


@dataclass(frozen=True)
class Sz:
    """Unilateral sigma_z: (x, y) -> (x^1, y).  Affine."""

    pair: int

    def __post_init__(self):
        _check_pair(self.pair)

    @property
    def pairs(self) -> tuple[int, ...]:
        return (self.pair,)

    def __str__(self):
        return f"Sz({self.pair})"


Gate = Union[BXOR, By, SxBx, Sz]

_KIND_RANK = {BXOR: 0, By: 1, SxBx: 2, Sz: 3}


def gate_key(g: Gate) -> tuple[int, ...]:
    """Canonical total order on gates (used for lexicographic tie-breaks)."""
    if isinstance(g, BXOR):
        return (0, g.source, g.target)
    return (_KIND_RANK[type(g)], g.pair, 0)


def alphabet(include_sz: bool = False) -> list[Gate]:
    """The 30 linear gate instances (20 BXOR, 5 By, 5 SxBx) in canonical order."""
    gates: list[Gate] = [BXOR(s, t) for s in range(1, 6) for t in range(1, 6) if s != t]
    gates += [By(p) for p in range(1, 6)]
    gates += [SxBx(p) for p in range(1, 6)]
    if include_sz:
        gates += [Sz(p) for p in range(1, 6)]
    return gates


def row_op(g: Gate, rows: list) -> None:
    """Left-multiply a row-major matrix by the linear part of ``g`` in place.

    Works for any row type supporting ``^`` (ints, or lists of affine forms
    via :func:`xor_rows`).
    """
    if isinstance(g, BXOR):
        s, t = g.source, g.target
        rows[2 * s - 2] = _x(rows[2 * s - 2], rows[2 * t - 2])
        rows[2 * t - 1] = _x(rows[2 * t - 1], rows[2 * s - 1])
    elif isinstance(g, By):
        i = 2 * g.pair - 2
        rows[i], rows[i + 1] = rows[i + 1], rows[i]
    elif isinstance(g, SxBx):
        i = 2 * g.pair - 2
        rows[i + 1] = _x(rows[i + 1], rows[i])
    elif isinstance(g, Sz):
        pass
    else:
        raise TypeError(f"not a gate: {g!r}")


def _x(a, b):
    if isinstance(a, int):
        return a ^ b
    return [p ^ q for p, q in zip(a, b)]


def apply_word(g: Gate, w: int) -> int:
    if isinstance(g, BXOR):
        ps, as_ = 2 * g.source - 2, 2 * g.source - 1
        pt, at = 2 * g.target - 2, 2 * g.target - 1
        w ^= ((w >> pt) & 1) << ps
        w ^= ((w >> as_) & 1) << at
        return w
    i = 2 * g.pair - 2
    if isinstance(g, By):
        d = ((w >> i) ^ (w >> (i + 1))) & 1
        return w ^ (d << i) ^ (d << (i + 1))
    if isinstance(g, SxBx):
        return w ^ (((w >> i) & 1) << (i + 1))
    if isinstance(g, Sz):
        return w ^ (1 << i)
    raise TypeError(f"not a gate: {g!r}")


def apply_gate(g: Gate, x: BitVec) -> BitVec:
    return BitVec(apply_word(g, x.word))


@dataclass(frozen=True)
class AffineMap:
    """x -> matrix @ x ^ offset."""

    matrix: Mat10
    offset: BitVec = BitVec(0)

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(Mat10.identity())

    def __call__(self, x: BitVec) -> BitVec:
        return BitVec(apply_rows(self.matrix.rows, x.word) ^ self.offset.word)

    def then(self, other: "AffineMap") -> "AffineMap":
        """``other`` applied after ``self``."""
        m = Mat10(mul_rows(other.matrix.rows, self.matrix.rows))
        b = apply_rows(other.matrix.rows, self.offset.word) ^ other.offset.word
        return AffineMap(m, BitVec(b))


def gate_matrix(g: Gate) -> AffineMap:
    rows = [1 << i for i in range(N)]
    row_op(g, rows)
    offset = 1 << (2 * g.pair - 2) if isinstance(g, Sz) else 0
    return AffineMap(Mat10(tuple(rows)), BitVec(offset))


@dataclass(frozen=True)
class GateSequence:
    """Gates in reduction order (the order taking M_w to its reduced form)."""

    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __getitem__(self, i):
        return self.gates[i]

    def __add__(self, other: "GateSequence") -> "GateSequence":
        return GateSequence(self.gates + tuple(other))

    @property
    def bxor_count(self) -> int:
        return sum(isinstance(g, BXOR) for g in self.gates)

    @property
    def cost(self) -> tuple[int, int]:
        return (self.bxor_count, len(self.gates))

    def ordered(self, direction: str) -> tuple[Gate, ...]:
        if direction == BACKWARD:
            return self.gates
        if direction == FORWARD:
            return self.gates[::-1]
        raise ValueError(f"unknown direction {direction!r}")

    def __str__(self) -> str:
        return " ".join(str(g) for g in self.gates)


def apply_sequence(s: GateSequence | Sequence[Gate], x: BitVec, direction: str = BACKWARD) -> BitVec:
    if not isinstance(s, GateSequence):
        s = GateSequence(tuple(s))
    w = x.word
    for g in s.ordered(direction):
        w = apply_word(g, w)
    return BitVec(w)


def sequence_matrix(s: GateSequence | Sequence[Gate], direction: str = BACKWARD) -> AffineMap:
    if not isinstance(s, GateSequence):
        s = GateSequence(tuple(s))
    m = AffineMap.identity()
    for g in s.ordered(direction):
        m = m.then(gate_matrix(g))
    return m


def reduce_rows(rows: Iterable[int], gates: Iterable[Gate]) -> tuple[int, ...]:
    """Row words of ``G_n ... G_1 M`` for gates given first-to-last."""
    rows = list(rows)
    for g in gates:
        row_op(g, rows)
    return tuple(rows)
