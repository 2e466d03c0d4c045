"""Sequence shortening: BXOR-order permutation and exact bidirectional search.

The exact search works on cosets X.H, where H is the group of legal I_x
forms (one invertible 2x2 block per block-row and block-column).  A coset
is identified by the set of five column planes of X, so X is legal iff
its planes are the five coordinate planes.  Both frontiers apply gates on
the left; since every gate is its own inverse, a forward word F and a
backward word g_1..g_k meet when F.M_w.H == g_k...g_1.H, and the
reduction sequence is F followed by g_k, ..., g_1.
"""
from __future__ import annotations

import enum
import itertools
import logging
import time
from dataclasses import dataclass, field

import numpy as np

from .elimination import eliminate_block
from .gates import BXOR, By, Gate, GateSequence, SxBx, Sz, alphabet, reduce_rows
from .gf2 import N, Block2, Mat10, block_code, det2, is_block_permutation, is_invertible
from .synthesis import SolutionRecord, synthesize

log = logging.getLogger(__name__)


class Objective(str, enum.Enum):
    TOTAL = "total"
    BXOR_THEN_TOTAL = "bxor"

    def key(self, bxor: int, total: int) -> tuple[int, int]:
        return (bxor, total) if self is Objective.BXOR_THEN_TOTAL else (total, bxor)

    @classmethod
    def parse(cls, text: str) -> "Objective":
        text = text.strip().lower()
        if text in ("bxor", "bxor_then_total"):
            return cls.BXOR_THEN_TOTAL
        if text in ("total", "total_ops"):
            return cls.TOTAL
        raise ValueError(f"unknown objective {text!r}")


class DepthExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OptimizationResult:
    best: GateSequence
    best_i_x: Mat10
    explored: int
    objective_value: tuple[int, int]  # (bxor, total) regardless of objective
    certified: bool = False
    depth: int | None = None


def _cost(seq) -> tuple[int, int]:
    seq = tuple(seq)
    return sum(isinstance(g, BXOR) for g in seq), len(seq)


# ---------------------------------------------------------------- permutation

def _segments(seq: GateSequence) -> list[tuple[Gate, ...]]:
    """Split a sequence into runs each ending in a BXOR; a trailing run of
    single-pair gates stays attached to the last one."""
    out: list[list[Gate]] = [[]]
    for g in seq:
        out[-1].append(g)
        if isinstance(g, BXOR):
            out.append([])
    if not out[-1]:
        out.pop()
    elif len(out) > 1:
        out[-2] += out.pop()
    return [tuple(s) for s in out]


def _replay_steps(m_w: Mat10, steps) -> list[Gate] | None:
    rows = list(m_w.rows)
    gates: list[Gate] = []
    for st in steps:
        pc = block_code(rows, st.pivot, st.group)
        tc = block_code(rows, st.target, st.group)
        if tc == 0:
            continue
        if not det2(Block2.from_code(pc)) or det2(Block2.from_code(tc)):
            return None
        seg = eliminate_block(Block2.from_code(pc), Block2.from_code(tc), st.pivot, st.target)
        rows = list(reduce_rows(rows, seg))
        gates += seg
    if not is_block_permutation(Mat10(tuple(rows))):
        return None
    return gates


def _replay_segments(m_w: Mat10, segs) -> list[Gate] | None:
    gates = [g for s in segs for g in s]
    if not is_block_permutation(Mat10(reduce_rows(m_w.rows, gates))):
        return None
    return gates


def permute_and_reduce(rec: SolutionRecord, objective: Objective = Objective.BXOR_THEN_TOTAL,
                       max_permutations: int | None = None) -> OptimizationResult:
    """Re-run the block reduction of ``rec.m_w`` under every ordering of its
    BXOR-carrying elimination steps and keep the objective-best result.

    Each elimination step of the record emits one BXOR (checked on the
    reference paths); the interleaved single-pair gates are re-derived for
    the new order.  Records without step data are handled by permuting the
    BXOR-terminated runs of the sequence as fixed units.
    """
    steps = list(rec.steps)
    if not steps and rec.path is not None:
        try:
            steps = list(synthesize(rec.designation, rec.path).steps)
        except Exception:  # the path may not replay on a foreign record
            steps = []
    if steps:
        units, replay = steps, _replay_steps
    else:
        units, replay = _segments(rec.sequence), _replay_segments

    best = list(rec.sequence)
    best_key = objective.key(*_cost(best))
    explored = 0
    for perm in itertools.permutations(units):
        if max_permutations is not None and explored >= max_permutations:
            break
        explored += 1
        gates = replay(rec.m_w, perm)
        if gates is None:
            continue
        k = objective.key(*_cost(gates))
        if k < best_key:
            best, best_key = gates, k
    seq = GateSequence(tuple(best))
    i_x = Mat10(reduce_rows(rec.m_w.rows, seq.gates))
    return OptimizationResult(seq, i_x, explored, _cost(seq))


# ------------------------------------------------------------- exact search

_GATES = alphabet()
_NG = len(_GATES)
_IS_BXOR = np.array([isinstance(g, BXOR) for g in _GATES], dtype=np.uint8)
_VOID = np.dtype((np.void, 16))


def _apply(cols: np.ndarray, g: Gate) -> np.ndarray:
    """Left-multiply every state (rows of column words) by gate ``g``."""
    c = cols.copy()
    if isinstance(g, BXOR):
        ps, as_ = 2 * g.source - 2, 2 * g.source - 1
        pt, at = 2 * g.target - 2, 2 * g.target - 1
        c ^= ((c >> pt) & 1) << ps
        c ^= ((c >> as_) & 1) << at
    elif isinstance(g, By):
        i = 2 * g.pair - 2
        d = ((c >> i) ^ (c >> (i + 1))) & 1
        c ^= (d << i) | (d << (i + 1))
    elif isinstance(g, SxBx):
        i = 2 * g.pair - 2
        c ^= ((c >> i) & 1) << (i + 1)
    return c


def _plane_keys(cols: np.ndarray) -> np.ndarray:
    """(n, 2) uint64: the sorted five column planes of each state."""
    c = cols.astype(np.uint64)
    a, b = c[:, 0::2], c[:, 1::2]
    trio = np.stack([a, b, a ^ b], axis=2)
    trio.sort(axis=2)
    planes = trio[:, :, 0] | (trio[:, :, 1] << np.uint64(N))
    planes.sort(axis=1)
    k0 = planes[:, 0] | (planes[:, 1] << np.uint64(20)) | (planes[:, 2] << np.uint64(40))
    k1 = planes[:, 3] | (planes[:, 4] << np.uint64(20))
    return np.stack([k0, k1], axis=1)


def _void(keys: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(keys).view(_VOID).ravel()


@dataclass
class _Layer:
    cols: np.ndarray    # (n, 10) uint16 column words
    keys: np.ndarray    # (n, 2) uint64 state keys (b not included)
    bxor: np.ndarray    # (n,) uint8
    gate: np.ndarray    # (n,) int8, -1 at the root
    parent: np.ndarray  # (n,) int64 index into the previous layer


@dataclass
class _Frontier:
    layers: list[_Layer] = field(default_factory=list)
    seen: np.ndarray | None = None  # sorted void keys of (state, bxor)

    @classmethod
    def start(cls, cols: tuple[int, ...]) -> "_Frontier":
        c = np.array([cols], dtype=np.uint16)
        layer = _Layer(c, _plane_keys(c), np.zeros(1, np.uint8), np.full(1, -1, np.int8),
                       np.zeros(1, np.int64))
        f = cls([layer])
        f.seen = np.sort(_void(_with_b(layer.keys, layer.bxor)))
        return f

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    @property
    def size(self) -> int:
        return len(self.layers[-1].bxor)

    def expand(self, max_bxor: int | None = None) -> None:
        last = self.layers[-1]
        cols_l, b_l, g_l, p_l = [], [], [], []
        for gi, g in enumerate(_GATES):
            keep = last.gate != gi  # a gate right after itself cancels
            if max_bxor is not None and _IS_BXOR[gi]:
                keep &= last.bxor < max_bxor
            idx = np.nonzero(keep)[0]
            if not len(idx):
                continue
            cols_l.append(_apply(last.cols[idx], g))
            b_l.append(last.bxor[idx] + _IS_BXOR[gi])
            g_l.append(np.full(len(idx), gi, np.int8))
            p_l.append(idx)
        if not cols_l:
            self.layers.append(_Layer(np.zeros((0, N), np.uint16), np.zeros((0, 2), np.uint64),
                                      np.zeros(0, np.uint8), np.zeros(0, np.int8), np.zeros(0, np.int64)))
            return
        cols = np.concatenate(cols_l)
        bx = np.concatenate(b_l)
        gate = np.concatenate(g_l)
        parent = np.concatenate(p_l)
        keys = _plane_keys(cols)
        vk = _void(_with_b(keys, bx))
        _, first = np.unique(vk, return_index=True)
        first.sort()
        vk = vk[first]
        pos = np.searchsorted(self.seen, vk)
        hit = np.zeros(len(vk), bool)
        inside = pos < len(self.seen)
        hit[inside] = self.seen[pos[inside]] == vk[inside]
        sel = first[~hit]
        self.layers.append(_Layer(cols[sel], keys[sel], bx[sel], gate[sel], parent[sel]))
        self.seen = np.sort(np.concatenate([self.seen, vk[~hit]]))

    def path(self, depth: int, index: int) -> list[Gate]:
        """Gates from the root to entry ``index`` of layer ``depth``."""
        out = []
        while depth > 0:
            layer = self.layers[depth]
            out.append(_GATES[int(layer.gate[index])])
            index = int(layer.parent[index])
            depth -= 1
        return out[::-1]

    def table(self):
        """(void state keys, bxor, depth, index) over all layers."""
        keys = np.concatenate([l.keys for l in self.layers])
        bx = np.concatenate([l.bxor for l in self.layers]).astype(np.int64)
        dep = np.concatenate([np.full(len(l.bxor), d, np.int64) for d, l in enumerate(self.layers)])
        idx = np.concatenate([np.arange(len(l.bxor)) for l in self.layers])
        return _void(keys), bx, dep, idx


def _with_b(keys: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = keys.copy()
    out[:, 1] |= b.astype(np.uint64) << np.uint64(40)
    return out


def _best_meeting(fw: _Frontier, bw: _Frontier, max_depth: int, objective: Objective):
    fk, fb, fd, fi = fw.table()
    bk, bb, bd, bi = bw.table()
    common = np.intersect1d(fk, bk)
    if not len(common):
        return None
    fm = np.isin(fk, common)
    bm = np.isin(bk, common)
    groups: dict[bytes, list] = {}
    for k, b, d, i in zip(fk[fm], fb[fm], fd[fm], fi[fm]):
        groups.setdefault(k.tobytes(), [[], []])[0].append((int(b), int(d), int(i)))
    for k, b, d, i in zip(bk[bm], bb[bm], bd[bm], bi[bm]):
        groups[k.tobytes()][1].append((int(b), int(d), int(i)))
    best = None
    for fwd, bwd in groups.values():
        for b1, d1, i1 in fwd:
            for b2, d2, i2 in bwd:
                if d1 + d2 > max_depth:
                    continue
                cand = (objective.key(b1 + b2, d1 + d2), (d1, i1, d2, i2))
                if best is None or cand[0] < best[0]:
                    best = cand
    if best is None:
        return None
    d1, i1, d2, i2 = best[1]
    return fw.path(d1, i1) + bw.path(d2, i2)[::-1]


def minimal_sequence(m_w: Mat10, objective: Objective = Objective.BXOR_THEN_TOTAL,
                     max_depth: int = 9, max_bxor: int | None = None,
                     time_limit: float | None = None) -> OptimizationResult:
    """Objective-optimal reduction of ``m_w`` to any legal I_x, exhaustive
    over all words of length <= ``max_depth`` in the 30 linear gates.

    ``max_bxor`` optionally caps the BXOR count of the words considered (a
    pruning bound; optimality then holds among words within the cap).
    """
    if not is_invertible(m_w):
        raise ValueError("m_w must be invertible")
    t0 = time.monotonic()
    fw = _Frontier.start(m_w.columns)
    bw = _Frontier.start(Mat10.identity().columns)
    while fw.depth + bw.depth < max_depth:
        if time_limit is not None and time.monotonic() - t0 > time_limit:
            raise TimeoutError(f"search exceeded {time_limit} s")
        side = fw if fw.size <= bw.size else bw
        side.expand(max_bxor)
        log.debug("depths %d/%d sizes %d/%d", fw.depth, bw.depth, fw.size, bw.size)
    explored = sum(len(l.bxor) for l in fw.layers + bw.layers)
    gates = _best_meeting(fw, bw, max_depth, objective)
    if gates is None:
        raise DepthExceeded(f"no reduction of length <= {max_depth}")
    seq = GateSequence(tuple(gates))
    i_x = Mat10(reduce_rows(m_w.rows, seq.gates))
    if not is_block_permutation(i_x):
        raise AssertionError("search produced an illegal reduced form")
    return OptimizationResult(seq, i_x, explored, _cost(seq), certified=True, depth=max_depth)


def strip_sz(seq: GateSequence) -> GateSequence:
    return GateSequence(tuple(g for g in seq if not isinstance(g, Sz)))
