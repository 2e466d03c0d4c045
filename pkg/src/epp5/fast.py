"""Compiled bulk enumeration mirroring :mod:`epp5.synthesis` step for step.

Affine forms are int64 with the same layout as the reference code (bit 0
constant, bit u+1 unknown u).  Each call walks the subtree below one
stage-1 branch; leaves are identified by their per-stage option indices,
which :func:`path_from_indices` turns back into a ChoicePath.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from collections import namedtuple
from dataclasses import dataclass
from itertools import permutations

import numpy as np
from numba import njit

from .bell import DesignationMatrix, validate_designation
from .elimination import eliminate_codes
from .gates import alphabet
from .gf2 import Block2, det2
from .synthesis import ChoicePath, StageChoice, advance, stage_options

MAX_OPTS = 1 << 12
MAX_GATES = 64
_PAR = np.array([bin(i).count("1") & 1 for i in range(MAX_OPTS)], np.int64)


_Workspace = namedtuple("_Workspace", "live det ent exact nonzero order tg targ W2 meta2 sp sm su")


def _tables():
    elim_len = np.zeros((16, 16), np.int64)
    elim_ops = np.zeros((16, 16, 6), np.int64)
    for p in range(16):
        if not det2(Block2.from_code(p)):
            continue
        for t in range(16):
            if det2(Block2.from_code(t)):
                continue
            ops = eliminate_codes(p, t)
            elim_len[p, t] = len(ops)
            elim_ops[p, t, :len(ops)] = ops
    perm_table = np.zeros((5, 24, 4), np.int64)
    perm_count = np.zeros(5, np.int64)
    for k in range(5):
        ps = list(permutations(range(k)))
        perm_count[k] = len(ps)
        for i, pm in enumerate(ps):
            perm_table[k, i, :k] = pm
    return elim_len, elim_ops, perm_table, perm_count


@njit(cache=True, inline="always")
def _parity(x):
    x ^= x >> 32
    x ^= x >> 16
    x ^= x >> 8
    x ^= x >> 4
    x ^= x >> 2
    x ^= x >> 1
    return x & 1


@njit(cache=True, inline="always")
def _PAR_FULL(x):
    return _parity(x)


@njit(cache=True, inline="always")
def _bxor_id(s, t):
    return (s - 1) * 4 + (t - 1 if t < s else t - 2)


@njit(cache=True, inline="always")
def _row_op(W, gid):
    if gid < 20:
        s = gid // 4 + 1
        r = gid % 4
        t = r + 1 if r + 1 < s else r + 2
        for j in range(10):
            W[2 * s - 2, j] ^= W[2 * t - 2, j]
            W[2 * t - 1, j] ^= W[2 * s - 1, j]
    elif gid < 25:
        i = 2 * (gid - 20)
        for j in range(10):
            tmp = W[i, j]
            W[i, j] = W[i + 1, j]
            W[i + 1, j] = tmp
    else:
        i = 2 * (gid - 25)
        for j in range(10):
            W[i + 1, j] ^= W[i, j]


@njit(cache=True, inline="always")
def _impose(form, W, rel, meta):
    """Impose ``form == 0``.  ``rel[n] = (u, rep)`` records u = rep in
    definition order; meta = [n, defined-mask].  Returns False on 1 = 0.
    Unlike the reference code, earlier relations are not rewritten; the
    leaf back-substitutes in reverse order instead."""
    if form & meta[1]:
        for r in range(meta[0]):
            b = np.int64(1) << (rel[r, 0] + 1)
            if form & b:
                form ^= b ^ rel[r, 1]
    s = form >> 1
    if s == 0:
        return (form & 1) == 0
    low = s & -s
    u = 0
    while low > 1:
        low >>= 1
        u += 1
    b = np.int64(1) << (u + 1)
    rep = form ^ b
    n = meta[0]
    rel[n, 0] = u
    rel[n, 1] = rep
    meta[0] = n + 1
    meta[1] |= b
    # row operations never move entries across columns, so unknown u (which
    # starts in column u mod 10) and every relation it enters stay there
    j = u % 10
    for i in range(10):
        if W[i, j] & b:
            W[i, j] ^= b ^ rep
    return True


@njit(cache=True)
def _values(rel, meta, out):
    """Back-substitute; returns False if some unknown stayed free."""
    full = np.int64(0)
    for u in range(60):
        full |= np.int64(1) << (u + 1)
    if meta[1] != full:
        return False
    ones = np.int64(1)
    for r in range(meta[0] - 1, -1, -1):
        u = rel[r, 0]
        v = _PAR_FULL(rel[r, 1] & ones)
        out[u] = v
        if v:
            ones |= np.int64(1) << (u + 1)
    return True


@njit(cache=True, inline="always")
def _block_code(W, pair, group):
    r0 = 2 * pair - 2
    c = 2 * group - 2
    return (W[r0, c] & 1) | (W[r0, c + 1] & 1) << 1 | (W[r0 + 1, c] & 1) << 2 | (W[r0 + 1, c + 1] & 1) << 3


@njit(cache=True, inline="always")
def _det_code(code):
    return ((code & 1) & (code >> 3)) ^ ((code >> 1) & (code >> 2) & 1)


_ALL = np.uint64(0xFFFFFFFFFFFFFFFF)
# _PAT[b]: bit m of the word is bit b of m, for the six in-word positions
_PAT = np.array([sum(1 << m for m in range(64) if (m >> b) & 1) for b in range(6)], np.uint64)


@njit(cache=True, inline="always")
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True)
def _options(W, frozen, t, group, out_pivot, out_mask, out_unk, ws, count_only=False):
    """Canonical stage options; returns (count, number of stage unknowns).

    Each block entry is evaluated for all 2^k assignments at once as a
    bitset (bit m = value under assignment m, first unknown most
    significant), so a determinant is four ANDs per 64 assignments.
    """
    c = 2 * group - 2
    allf = np.int64(0)
    for p in range(1, 6):
        if not (frozen >> p) & 1:
            r0 = 2 * p - 2
            allf |= W[r0, c] | W[r0, c + 1] | W[r0 + 1, c] | W[r0 + 1, c + 1]
    s = allf >> 1
    k = 0
    u = 0
    while s:
        if s & 1:
            out_unk[k] = u
            k += 1
        s >>= 1
        u += 1
    n = 1 << k
    nw = (n + 63) // 64
    last = _ALL if n >= 64 else (np.uint64(1) << np.uint64(n)) - np.uint64(1)
    det = ws.det
    live = ws.live
    nl = 0
    for p in range(1, 6):
        if (frozen >> p) & 1:
            continue
        live[nl] = p
        r0 = 2 * p - 2
        for e in range(4):
            f = W[r0 + e // 2, c + e % 2]
            lo = _ALL if f & 1 else np.uint64(0)
            hi = 0
            for jj in range(k):
                if (f >> (out_unk[jj] + 1)) & 1:
                    b = k - 1 - jj
                    if b < 6:
                        lo ^= _PAT[b]
                    else:
                        hi |= 1 << (b - 6)
            for w in range(nw):
                v = lo
                if _PAR[hi & w]:
                    v ^= _ALL
                ws.ent[e, w] = v
        for w in range(nw):
            det[nl, w] = (ws.ent[0, w] & ws.ent[3, w]) ^ (ws.ent[1, w] & ws.ent[2, w])
        nl += 1
    total = 0
    nout = 0
    for w in range(nw):
        one = np.uint64(0)
        two = np.uint64(0)
        for li in range(nl):
            two |= one & det[li, w]
            one |= det[li, w]
        ws.exact[w] = one & ~two
        if w == nw - 1:
            ws.exact[w] &= last
    for li in range(nl):
        p = live[li]
        if t == 0 and p != 1:
            continue
        for w in range(nw):
            bits = ws.exact[w] & det[li, w]
            if count_only:
                total += _popcount(bits)
                continue
            if bits == 0:
                continue
            for bi in range(64):
                if (bits >> np.uint64(bi)) & np.uint64(1):
                    out_pivot[nout] = p
                    out_mask[nout] = w * 64 + bi
                    nout += 1
    if count_only:
        return np.int64(total), k
    return nout, k


@njit(cache=True, inline="always")
def _eliminate(W, group, pivot, targets, ntarg, elim_len, elim_ops, gates, ng):
    for qi in range(ntarg):
        q = targets[qi]
        pc = _block_code(W, pivot, group)
        tc = _block_code(W, q, group)
        for oi in range(elim_len[pc, tc]):
            op = elim_ops[pc, tc, oi]
            if op == 0:
                gid = 20 + pivot - 1
            elif op == 1:
                gid = 20 + q - 1
            elif op == 2:
                gid = 25 + pivot - 1
            elif op == 3:
                gid = 25 + q - 1
            elif op == 4:
                gid = _bxor_id(pivot, q)
            else:
                gid = _bxor_id(q, pivot)
            _row_op(W, gid)
            gates[ng] = gid
            ng += 1
    return ng


@njit(cache=True, inline="always")
def _freeze(W, rel, meta, group, pivot):
    for h in range(1, 6):
        if h == group:
            continue
        r0 = 2 * pivot - 2
        c = 2 * h - 2
        for di in range(2):
            for dj in range(2):
                if not _impose(W[r0 + di, c + dj], W, rel, meta):
                    return False
    return True


@njit(cache=True)
def _run_stage(W, rel, meta, frozen, t, group, next_group, pivot, mask, unk, k,
               elim_len, elim_ops, perm_table, perm_count, gates, ng, ws):
    """Returns (ok, new gate count, new frozen mask)."""
    for j in range(k):
        bit = (mask >> (k - 1 - j)) & 1
        if not _impose((np.int64(1) << (unk[j] + 1)) ^ bit, W, rel, meta):
            return False, ng, frozen
    nonzero = ws.nonzero
    nz = 0
    for q in range(1, 6):
        if q != pivot and not (frozen >> q) & 1 and _block_code(W, q, group) != 0:
            nonzero[nz] = q
            nz += 1
    order = ws.order
    for j in range(nz):
        order[j] = nonzero[j]
    if nz >= 2 and next_group > 0:
        best_n = -2
        tg = ws.tg
        targ = ws.targ
        W2 = ws.W2
        meta2 = ws.meta2
        for pi in range(perm_count[nz]):
            for j in range(nz):
                targ[j] = nonzero[perm_table[nz, pi, j]]
            W2[:, :] = W
            # a trial only appends past meta[0], so rel itself can be scribbled on
            meta2[:] = meta
            _eliminate(W2, group, pivot, targ, nz, elim_len, elim_ops, tg, 0)
            if _freeze(W2, rel, meta2, group, pivot):
                cnt, _ = _options(W2, frozen | (1 << pivot), t + 1, next_group, ws.sp, ws.sm, ws.su, ws, True)
            else:
                cnt = -1
            if cnt > best_n:
                best_n = cnt
                for j in range(nz):
                    order[j] = targ[j]
    ng = _eliminate(W, group, pivot, order, nz, elim_len, elim_ops, gates, ng)
    if not _freeze(W, rel, meta, group, pivot):
        return False, ng, frozen
    return True, ng, frozen | (1 << pivot)


@njit(cache=True)
def _subtree(mv_rows, col_order, first_opt, elim_len, elim_ops, perm_table, perm_count, cap,
             out_mw, out_ix, out_gates, out_ng, out_opts, out_counts, stat_opts, stat_inf):
    """Enumerate leaves below stage-1 option ``first_opt``.  Returns the
    number of leaves, or -1 if ``cap`` was too small, or -2 on an
    undetermined unknown."""
    Ws = np.zeros((6, 10, 10), np.int64)
    rels = np.zeros((6, 64, 2), np.int64)
    metas = np.zeros((6, 2), np.int64)
    vals = np.zeros(60, np.int64)
    frozen = np.zeros(6, np.int64)
    gates = np.zeros((6, MAX_GATES), np.int64)
    ngs = np.zeros(6, np.int64)
    opt_p = np.zeros((6, MAX_OPTS), np.int64)
    opt_m = np.zeros((6, MAX_OPTS), np.int64)
    unk = np.zeros((6, 16), np.int64)
    nopt = np.zeros(6, np.int64)
    kk = np.zeros(6, np.int64)
    cur = np.zeros(6, np.int64)
    end = np.zeros(6, np.int64)
    counts = np.zeros(6, np.int64)
    ws = _Workspace(np.zeros(5, np.int64), np.zeros((5, MAX_OPTS // 64), np.uint64),
                    np.zeros((4, MAX_OPTS // 64), np.uint64), np.zeros(MAX_OPTS // 64, np.uint64),
                    np.zeros(4, np.int64), np.zeros(4, np.int64),
                    np.zeros(MAX_GATES, np.int64), np.zeros(4, np.int64), np.zeros((10, 10), np.int64),
                    np.zeros(2, np.int64), np.zeros(MAX_OPTS, np.int64), np.zeros(MAX_OPTS, np.int64),
                    np.zeros(16, np.int64))
    letter_rows = (0, 1, 2, 4, 6, 8)
    measured = (3, 5, 7, 9)
    for li in range(6):
        for j in range(10):
            Ws[0, letter_rows[li], j] = np.int64(1) << (li * 10 + j + 1)
    for mi in range(4):
        for j in range(10):
            Ws[0, measured[mi], j] = (mv_rows[mi] >> j) & 1

    n_out = 0
    nopt[0], kk[0] = _options(Ws[0], 0, 0, col_order[0], opt_p[0], opt_m[0], unk[0], ws)
    counts[0] = nopt[0]
    if first_opt >= nopt[0]:
        return 0
    cur[0] = first_opt
    end[0] = first_opt + 1
    stat_opts[0] += 1
    t = 0
    while t >= 0:
        if cur[t] >= end[t]:
            t -= 1
            continue
        i = cur[t]
        cur[t] += 1
        Ws[t + 1] = Ws[t]
        rels[t + 1] = rels[t]
        metas[t + 1] = metas[t]
        gates[t + 1] = gates[t]
        nxt = col_order[t + 1] if t < 4 else 0
        ok, ng, fz = _run_stage(Ws[t + 1], rels[t + 1], metas[t + 1], frozen[t], t, col_order[t], nxt,
                                opt_p[t, i], opt_m[t, i], unk[t], kk[t],
                                elim_len, elim_ops, perm_table, perm_count, gates[t + 1], ngs[t], ws)
        if not ok:
            stat_inf[t] += 1
            continue
        ngs[t + 1] = ng
        frozen[t + 1] = fz
        out_idx_t = i
        cur_opt = out_idx_t
        if t == 4:
            if n_out >= cap:
                return -1
            if not _values(rels[5], metas[5], vals):
                return -2
            for li in range(6):
                row = 0
                for j in range(10):
                    row |= vals[li * 10 + j] << j
                out_mw[n_out, letter_rows[li]] = row
            for mi in range(4):
                out_mw[n_out, measured[mi]] = mv_rows[mi]
            for r in range(10):
                row = 0
                for j in range(10):
                    row |= (Ws[5, r, j] & 1) << j
                out_ix[n_out, r] = row
            for g in range(MAX_GATES):
                out_gates[n_out, g] = gates[5, g] if g < ng else -1
            out_ng[n_out] = ng
            for s in range(4):
                out_opts[n_out, s] = cur[s] - 1
                out_counts[n_out, s] = counts[s]
            out_opts[n_out, 4] = cur_opt
            out_counts[n_out, 4] = counts[4]
            n_out += 1
            continue
        t += 1
        nopt[t], kk[t] = _options(Ws[t], frozen[t], t, col_order[t], opt_p[t], opt_m[t], unk[t], ws)
        counts[t] = nopt[t]
        stat_opts[t] += nopt[t]
        cur[t] = 0
        end[t] = nopt[t]
    return n_out


@njit(cache=True)
def _put_int(buf, pos, v):
    if v == 0:
        buf[pos] = 48
        return pos + 1
    n = 0
    x = v
    while x:
        n += 1
        x //= 10
    for k in range(n - 1, -1, -1):
        buf[pos + k] = 48 + v % 10
        v //= 10
    return pos + n


@njit(cache=True)
def _put_matrix(buf, pos, rows):
    for r in range(10):
        if r:
            buf[pos] = 44
            pos += 1
        for j in range(10):
            buf[pos] = 48 + ((rows[r] >> j) & 1)
            pos += 1
    return pos


@njit(cache=True)
def _tsv_body(first, m_w, i_x, m_wx, opts, n_gates, gates, names, name_len):
    """Solution rows as bytes, columns as in cli.SOLUTIONS_HEADER."""
    n = len(n_gates)
    size = 0
    for i in range(n):
        size += 8 + 5 * 6 + 4 + 4 + 3 * 109 + 4
        for g in range(n_gates[i]):
            size += name_len[gates[i, g]] + 1
    buf = np.empty(size, np.uint8)
    pos = 0
    for i in range(n):
        pos = _put_int(buf, pos, first + i)
        buf[pos] = 9
        pos += 1
        for s in range(5):
            if s:
                buf[pos] = 46
                pos += 1
            pos = _put_int(buf, pos, opts[i, s] + 1)
        buf[pos] = 9
        pos += 1
        nb = 0
        for g in range(n_gates[i]):
            if gates[i, g] < 20:
                nb += 1
        pos = _put_int(buf, pos, nb)
        buf[pos] = 9
        pos += 1
        pos = _put_int(buf, pos, n_gates[i])
        buf[pos] = 9
        pos = _put_matrix(buf, pos + 1, m_w[i])
        buf[pos] = 9
        pos = _put_matrix(buf, pos + 1, i_x[i])
        buf[pos] = 9
        pos = _put_matrix(buf, pos + 1, m_wx[i])
        buf[pos] = 9
        pos += 1
        for g in range(n_gates[i]):
            if g:
                buf[pos] = 32
                pos += 1
            gid = gates[i, g]
            for c in range(name_len[gid]):
                buf[pos + c] = names[gid, c]
            pos += name_len[gid]
        buf[pos] = 10
        pos += 1
    return buf[:pos]


def tsv_body(batch: "LeafBatch", limit: int | None = None) -> bytes:
    n = len(batch) if limit is None else min(limit, len(batch))
    labels = [str(g).encode() for g in alphabet()]
    names = np.zeros((len(labels), max(map(len, labels))), np.uint8)
    for k, b in enumerate(labels):
        names[k, :len(b)] = np.frombuffer(b, np.uint8)
    name_len = np.array([len(b) for b in labels], np.int64)
    args = (1, batch.m_w[:n], batch.i_x[:n], batch.forward_maps()[:n], batch.options[:n],
            batch.n_gates[:n], batch.gates[:n], names, name_len)
    return _tsv_body(*args).tobytes()


_TABLES = None


def _get_tables():
    global _TABLES
    if _TABLES is None:
        _TABLES = _tables()
    return _TABLES


@dataclass
class LeafBatch:
    """Leaves of one or more subtrees, in canonical order."""

    m_w: np.ndarray      # (n, 10) row words
    i_x: np.ndarray      # (n, 10)
    gates: np.ndarray    # (n, MAX_GATES) gate ids into alphabet()
    n_gates: np.ndarray  # (n,)
    options: np.ndarray  # (n, 5) option index per stage
    counts: np.ndarray   # (n, 5) options offered per stage
    stage_options: np.ndarray
    stage_infeasible: np.ndarray

    def __len__(self):
        return len(self.n_gates)

    def bxor_counts(self) -> np.ndarray:
        g = self.gates
        mask = np.arange(g.shape[1])[None, :] < self.n_gates[:, None]
        return ((g < 20) & mask).sum(axis=1)

    def forward_maps(self) -> np.ndarray:
        """Row words of M_wx = M_w I_x^-1, the map the gates realize.

        I_x is a product of gate matrices, hence symplectic, so its inverse
        is J I_x^T J: entry (r, c) of the inverse is entry (c^1, r^1).
        """
        if not len(self):
            return np.zeros((0, 10), np.int64)
        swap = np.arange(10) ^ 1
        inv = _bits(self.i_x)[:, swap][:, :, swap].transpose(0, 2, 1)
        # float32 products are exact here (entries <= 10) and go through BLAS
        prod = np.matmul(_bits(self.m_w).astype(np.float32), inv.astype(np.float32)).astype(np.int64) & 1
        return prod @ (np.int64(1) << np.arange(10))


def _bits(words: np.ndarray) -> np.ndarray:
    return ((words[:, :, None] >> np.arange(10)) & 1).astype(np.int8)


def _run_subtree(mv_rows, col_order, first_opt, cap=4096):
    elim_len, elim_ops, perm_table, perm_count = _get_tables()
    while True:
        out_mw = np.empty((cap, 10), np.int64)
        out_ix = np.empty((cap, 10), np.int64)
        out_g = np.empty((cap, MAX_GATES), np.int64)
        out_ng = np.empty(cap, np.int64)
        out_o = np.empty((cap, 5), np.int64)
        out_c = np.empty((cap, 5), np.int64)
        so = np.zeros(5, np.int64)
        si = np.zeros(5, np.int64)
        n = _subtree(np.asarray(mv_rows, np.int64), np.asarray(col_order, np.int64), first_opt,
                     elim_len, elim_ops, perm_table, perm_count, cap,
                     out_mw, out_ix, out_g, out_ng, out_o, out_c, so, si)
        if n == -1:
            cap *= 4
            continue
        if n == -2:
            raise RuntimeError("an unknown stayed undetermined after the last stage")
        return (out_mw[:n], out_ix[:n], out_g[:n], out_ng[:n], out_o[:n], out_c[:n], so, si)


def _run_chunk(args):
    mv_rows, col_order, opts = args
    return [_run_subtree(mv_rows, col_order, o) for o in opts]


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("EPP5_JOBS", "1")))
    except ValueError:
        return 1


def enumerate_fast(mv: DesignationMatrix, column_order=(1, 2, 3, 4, 5), jobs: int | None = None) -> LeafBatch:
    """Every leaf of the stage tree for ``column_order``, in canonical order.

    Subtrees below the stage-1 branches are independent, so ``jobs > 1``
    farms them out to worker processes; results are concatenated in branch
    order and therefore do not depend on the schedule.
    """
    column_order = tuple(column_order)
    if not validate_designation(mv).ok:
        z = np.zeros((0, 10), np.int64)
        return LeafBatch(z, z, np.zeros((0, MAX_GATES), np.int64), np.zeros(0, np.int64),
                         np.zeros((0, 5), np.int64), np.zeros((0, 5), np.int64),
                         np.zeros(5, np.int64), np.zeros(5, np.int64))
    jobs = default_jobs() if jobs is None else max(1, jobs)
    state = advance(mv, ChoicePath(column_order), 0)
    n1 = len(stage_options(state, 0, column_order[0]))
    rows = list(mv.rows)
    if jobs == 1:
        parts = _run_chunk((rows, column_order, range(n1)))
    else:
        chunks = [list(range(i, n1, jobs)) for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as ex:
            res = list(ex.map(_run_chunk, [(rows, column_order, c) for c in chunks]))
        parts = [None] * n1
        for c, r in zip(chunks, res):
            for o, part in zip(c, r):
                parts[o] = part
    cat = [np.concatenate([p[i] for p in parts]) if parts else None for i in range(6)]
    so = sum(p[6] for p in parts)
    si = sum(p[7] for p in parts)
    return LeafBatch(cat[0], cat[1], cat[2], cat[3], cat[4], cat[5], so, si)


def path_from_indices(mv: DesignationMatrix, column_order, indices) -> ChoicePath:
    """The ChoicePath whose stage t takes option ``indices[t]``."""
    column_order = tuple(column_order)
    stages: list[StageChoice] = []
    for t, idx in enumerate(indices):
        state = advance(mv, ChoicePath(column_order, tuple(stages)), t)
        pivot, assignment = stage_options(state, t, column_order[t])[int(idx)]
        stages.append(StageChoice(pivot, assignment))
    return ChoicePath(column_order, tuple(stages))


def gate_list(ids, n: int):
    table = alphabet()
    return [table[int(i)] for i in ids[:n]]
