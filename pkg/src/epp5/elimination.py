"""Two-pair block elimination by bounded brute force.

Given a det-1 pivot block and a det-0 target block in the same column
group, find the shortest word over the six local operations whose backward
application leaves the pivot invertible and the target zero.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .gates import BXOR, By, Gate, SxBx
from .gf2 import Block2, det2

MAX_DEPTH = 6

# Local alphabet in tie-break order; alpha is the pivot pair, beta the target.
LOCAL_OPS = ("By(a)", "By(b)", "SxBx(a)", "SxBx(b)", "BXOR(a->b)", "BXOR(b->a)")


class NoSolution(RuntimeError):
    pass


def _split(code: int) -> tuple[int, int]:
    return code & 3, code >> 2


def _step(op: int, pp: int, pa: int, tp: int, ta: int):
    if op == 0:
        return pa, pp, tp, ta
    if op == 1:
        return pp, pa, ta, tp
    if op == 2:
        return pp, pa ^ pp, tp, ta
    if op == 3:
        return pp, pa, tp, ta ^ tp
    if op == 4:  # alpha source, beta target
        return pp ^ tp, pa, tp, ta ^ pa
    return pp, pa ^ ta, tp ^ pp, ta  # beta source, alpha target


def run_local(ops, pivot: int, target: int) -> tuple[int, int]:
    """Apply local op indices to (pivot, target) block codes."""
    pp, pa = _split(pivot)
    tp, ta = _split(target)
    for op in ops:
        pp, pa, tp, ta = _step(op, pp, pa, tp, ta)
    return pp | pa << 2, tp | ta << 2


@lru_cache(maxsize=None)
def eliminate_codes(pivot: int, target: int, max_depth: int = MAX_DEPTH) -> tuple[int, ...]:
    """Local op indices for the block codes; see :func:`eliminate_block`."""
    if not det2(Block2.from_code(pivot)):
        raise ValueError("pivot block must have determinant 1")
    if det2(Block2.from_code(target)):
        raise ValueError("target block must have determinant 0")
    for depth in range(max_depth + 1):
        for ops in product(range(6), repeat=depth):
            p, t = run_local(ops, pivot, target)
            if t == 0 and det2(Block2.from_code(p)):
                return ops
    raise NoSolution(f"no elimination of depth <= {max_depth} for pivot {pivot}, target {target}")


def local_to_gates(ops, alpha: int, beta: int) -> list[Gate]:
    table = (
        lambda: By(alpha),
        lambda: By(beta),
        lambda: SxBx(alpha),
        lambda: SxBx(beta),
        lambda: BXOR(alpha, beta),
        lambda: BXOR(beta, alpha),
    )
    return [table[op]() for op in ops]


def eliminate_block(pivot: Block2, target: Block2, pivot_pair: int, target_pair: int) -> list[Gate]:
    """Shortest gate word sending (pivot, target) to (e, 0), ties broken
    lexicographically over :data:`LOCAL_OPS`."""
    ops = eliminate_codes(pivot.code, target.code)
    return local_to_gates(ops, pivot_pair, target_pair)
