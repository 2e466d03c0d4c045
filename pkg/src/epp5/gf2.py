"""Bit-packed GF(2) arithmetic for ten-bit Bell-block words.

A word packs the phase/amplitude bits of five Bell pairs: component ``k``
(1-based, as printed) lives in bit ``k - 1`` of a Python int.  Component
``2p - 1`` is the phase bit and component ``2p`` the amplitude bit of pair
``p``.  Matrices are tuples of row words.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

N = 10
PAIRS = 5
FULL = (1 << N) - 1


def parity(x: int) -> int:
    return x.bit_count() & 1


def word_to_str(word: int, n: int = N) -> str:
    return "".join("1" if (word >> i) & 1 else "0" for i in range(n))


def str_to_word(text: str) -> int:
    word = 0
    for i, ch in enumerate(text):
        if ch == "1":
            word |= 1 << i
        elif ch != "0":
            raise ValueError(f"not a bit: {ch!r}")
    return word


def phase_bit(pair: int) -> int:
    """0-based bit index of the phase bit of ``pair`` (1..5)."""
    return 2 * pair - 2


def amp_bit(pair: int) -> int:
    return 2 * pair - 1


@dataclass(frozen=True, order=True)
class BitVec:
    """An ``n``-component bit vector; ``word`` bit ``i`` is component ``i + 1``."""

    word: int
    n: int = N

    def __post_init__(self):
        if self.word < 0 or self.word >> self.n:
            raise ValueError(f"word {self.word:#x} does not fit in {self.n} bits")

    @classmethod
    def parse(cls, text: str) -> "BitVec":
        text = text.strip()
        return cls(str_to_word(text), len(text))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVec":
        bits = list(bits)
        word = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"not a bit: {b!r}")
            word |= b << i
        return cls(word, len(bits))

    def bit(self, k: int) -> int:
        """Component ``k`` (1-based)."""
        if not 1 <= k <= self.n:
            raise IndexError(k)
        return (self.word >> (k - 1)) & 1

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.word >> i) & 1 for i in range(self.n))

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVec(self.word ^ other.word, self.n)

    def __str__(self) -> str:
        return word_to_str(self.word, self.n)


def BitVec10(word: int | str = 0) -> BitVec:
    if isinstance(word, str):
        return BitVec.parse(word)
    return BitVec(word, N)


def BitVec4(word: int | str = 0) -> BitVec:
    if isinstance(word, str):
        return BitVec.parse(word)
    return BitVec(word, 4)


@dataclass(frozen=True)
class Block2:
    """A 2x2 bit block ``[[b11, b12], [b21, b22]]``; top row is the phase row."""

    b11: int
    b12: int
    b21: int
    b22: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Block2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def from_code(cls, code: int) -> "Block2":
        """Inverse of :attr:`code` (bits: b11, b12, b21, b22 from LSB)."""
        return cls(code & 1, (code >> 1) & 1, (code >> 2) & 1, (code >> 3) & 1)

    @property
    def code(self) -> int:
        return self.b11 | self.b12 << 1 | self.b21 << 2 | self.b22 << 3

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.b11, self.b12), (self.b21, self.b22)

    def is_zero(self) -> bool:
        return self.code == 0


def det2(b: Block2) -> int:
    return (b.b11 & b.b22) ^ (b.b12 & b.b21)


def rank2(b: Block2) -> int:
    if b.is_zero():
        return 0
    return 2 if det2(b) else 1


@dataclass(frozen=True)
class Mat10:
    """10x10 GF(2) matrix stored as ten row words."""

    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != N:
            raise ValueError(f"expected {N} rows, got {len(self.rows)}")
        for r in self.rows:
            if r < 0 or r >> N:
                raise ValueError(f"row {r:#x} does not fit in {N} bits")

    @classmethod
    def identity(cls) -> "Mat10":
        return cls(tuple(1 << i for i in range(N)))

    @classmethod
    def zero(cls) -> "Mat10":
        return cls((0,) * N)

    @classmethod
    def parse(cls, lines: Sequence[str]) -> "Mat10":
        return cls(tuple(str_to_word(line.strip()) for line in lines))

    @classmethod
    def from_columns(cls, cols: Sequence[int]) -> "Mat10":
        return cls(tuple(_transpose(cols)))

    def entry(self, i: int, j: int) -> int:
        """Entry at row ``i``, column ``j`` (both 1-based)."""
        return (self.rows[i - 1] >> (j - 1)) & 1

    def row(self, i: int) -> BitVec:
        return BitVec(self.rows[i - 1])

    def column(self, j: int) -> BitVec:
        return BitVec(self.columns[j - 1])

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(_transpose(self.rows))

    def transpose(self) -> "Mat10":
        return Mat10(self.columns)

    def lines(self) -> list[str]:
        return [word_to_str(r) for r in self.rows]

    def __matmul__(self, other):
        if isinstance(other, Mat10):
            return mat_mul(self, other)
        if isinstance(other, BitVec):
            return mat_vec(self, other)
        return NotImplemented

    def __str__(self) -> str:
        return "\n".join(self.lines())


def _transpose(rows: Sequence[int], n: int = N) -> list[int]:
    cols = [0] * n
    for i, r in enumerate(rows):
        for j in range(n):
            if (r >> j) & 1:
                cols[j] |= 1 << i
    return cols


def mul_rows(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = []
    for r in a:
        acc = 0
        k = 0
        while r:
            if r & 1:
                acc ^= b[k]
            r >>= 1
            k += 1
        out.append(acc)
    return tuple(out)


def mat_mul(a: Mat10, b: Mat10) -> Mat10:
    return Mat10(mul_rows(a.rows, b.rows))


def mat_vec(m: Mat10, x: BitVec) -> BitVec:
    return BitVec(apply_rows(m.rows, x.word), x.n)


def apply_rows(rows: Sequence[int], x: int) -> int:
    out = 0
    for i, r in enumerate(rows):
        if parity(r & x):
            out |= 1 << i
    return out


def rank(rows: Iterable[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def is_invertible(m: Mat10) -> bool:
    return rank(m.rows) == N


def inverse(m: Mat10) -> Mat10 | None:
    """Gauss-Jordan inverse, or ``None`` when singular."""
    rows = list(m.rows)
    inv = [1 << i for i in range(N)]
    for col in range(N):
        piv = next((r for r in range(col, N) if (rows[r] >> col) & 1), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        for r in range(N):
            if r != col and (rows[r] >> col) & 1:
                rows[r] ^= rows[col]
                inv[r] ^= inv[col]
    return Mat10(tuple(inv))


# J pairs the phase and amplitude component of each Bell pair.
J = Mat10(tuple(1 << (i ^ 1) for i in range(N)))


def symplectic_form() -> Mat10:
    return J


def symplectic_check(m: Mat10) -> bool:
    return mat_mul(mat_mul(m.transpose(), J), m) == J


def block_code(rows: Sequence[int], pair: int, group: int) -> int:
    """Block at (``pair``, ``group``) packed as in :attr:`Block2.code`."""
    lo = 2 * group - 2
    top = (rows[2 * pair - 2] >> lo) & 3
    bot = (rows[2 * pair - 1] >> lo) & 3
    return top | bot << 2


def block_at(m: Mat10, pair: int, group: int) -> Block2:
    if not (1 <= pair <= PAIRS and 1 <= group <= PAIRS):
        raise IndexError(f"block index out of range: ({pair}, {group})")
    return Block2.from_code(block_code(m.rows, pair, group))


def block_pattern(rows: Sequence[int]) -> list[list[int]]:
    """5x5 grid of block ranks (0, 1 or 2)."""
    return [[rank2(Block2.from_code(block_code(rows, p, g))) for g in range(1, 6)]
            for p in range(1, 6)]


def is_block_permutation(m: Mat10) -> bool:
    """True iff ``m`` has exactly one det-1 block per block-row and block-column
    and every other block is zero (a legal reduced form)."""
    used = set()
    for p in range(1, 6):
        nonzero = [g for g in range(1, 6) if block_code(m.rows, p, g)]
        if len(nonzero) != 1:
            return False
        g = nonzero[0]
        if not det2(Block2.from_code(block_code(m.rows, p, g))) or g in used:
            return False
        used.add(g)
    return True
