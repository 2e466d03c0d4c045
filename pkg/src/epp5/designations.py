"""Designations related by row operations on the measured pairs."""
from __future__ import annotations

from collections import deque

from .bell import DesignationMatrix, validate_designation
from .gates import BXOR, GateSequence

MEASURED_PAIRS = (2, 3, 4, 5)


def _bxor_on_rows(rows: tuple[int, ...], s: int, t: int) -> tuple[int, ...]:
    # BXOR(s->t) adds the amplitude row of s to that of t; those are the
    # measured rows, designation rows s-2 and t-2
    out = list(rows)
    out[t - 2] ^= out[s - 2]
    return tuple(out)


def relate_designations(mv1: DesignationMatrix, mv2: DesignationMatrix,
                        max_len: int = 6) -> GateSequence | None:
    """Shortest BXOR word on pairs 2..5 whose row operations turn ``mv1``
    into ``mv2``, or None if either is invalid or none exists within
    ``max_len`` gates.  Breadth first, gates tried in canonical order."""
    if not (validate_designation(mv1).ok and validate_designation(mv2).ok):
        return None
    start, goal = tuple(mv1.rows), tuple(mv2.rows)
    moves = [(s, t) for s in MEASURED_PAIRS for t in MEASURED_PAIRS if s != t]
    parent = {start: None}
    queue = deque([(start, 0)])
    while queue:
        state, depth = queue.popleft()
        if state == goal:
            gates = []
            while parent[state] is not None:
                state, g = parent[state]
                gates.append(g)
            return GateSequence(tuple(reversed(gates)))
        if depth == max_len:
            continue
        for s, t in moves:
            nxt = _bxor_on_rows(state, s, t)
            if nxt not in parent:
                parent[nxt] = (state, BXOR(s, t))
                queue.append((nxt, depth + 1))
    return None
