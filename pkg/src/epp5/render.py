"""ASCII gate arrays: one lane per pair, one slot per gate.

Slots run left to right in reduction order.  A BXOR is drawn as ``*`` on
the source lane and ``(+)`` on the target lane joined by ``|``; the
single-pair gates are boxed labels.
"""
from __future__ import annotations

from .gates import BXOR, By, GateSequence, SxBx, Sz
from .gf2 import PAIRS

SLOT = 8
FOOTER = "physical (forward) order: right to left"
_BOXES = {"[By]": By, "[SxBx]": SxBx, "[Sz]": Sz}


def _cell(text: str, fill: str) -> str:
    pad = SLOT - len(text)
    left = pad // 2
    return fill * left + text + fill * (pad - left)


def render_sequence(seq: GateSequence) -> str:
    lanes = [[f"{p} -"] for p in range(1, PAIRS + 1)]
    gaps = [["   "] for _ in range(PAIRS - 1)]
    for g in seq:
        marks = {}
        span = ()
        if isinstance(g, BXOR):
            marks = {g.source: "*", g.target: "(+)"}
            lo, hi = sorted((g.source, g.target))
            span = range(lo, hi)
            for p in range(lo + 1, hi):
                marks[p] = "|"
        else:
            marks = {g.pair: f"[{type(g).__name__}]"}
        for p in range(1, PAIRS + 1):
            lanes[p - 1].append(_cell(marks.get(p, ""), "-"))
        for k in range(1, PAIRS):
            gaps[k - 1].append(_cell("|" if k in span else "", " "))
    out = []
    for p in range(PAIRS):
        out.append("".join(lanes[p]) + "-")
        if p < PAIRS - 1:
            out.append("".join(gaps[p]).rstrip())
    out.append("")
    out.append(FOOTER)
    return "\n".join(out) + "\n"


def parse_diagram(text: str) -> GateSequence:
    """Inverse of :func:`render_sequence`."""
    lines = text.split("\n")
    lanes = [lines[2 * p] for p in range(PAIRS)]
    width = len(lanes[0]) - 4
    if width % SLOT:
        raise ValueError("lane length is not a whole number of slots")
    gates = []
    for s in range(width // SLOT):
        cells = {}
        for p in range(PAIRS):
            cell = lanes[p][3 + s * SLOT:3 + (s + 1) * SLOT].strip("-")
            if cell and cell != "|":
                cells[p + 1] = cell
        src = [p for p, c in cells.items() if c == "*"]
        tgt = [p for p, c in cells.items() if c == "(+)"]
        if src or tgt:
            if len(src) != 1 or len(tgt) != 1 or len(cells) != 2:
                raise ValueError(f"malformed BXOR in slot {s + 1}")
            gates.append(BXOR(src[0], tgt[0]))
            continue
        if len(cells) != 1:
            raise ValueError(f"slot {s + 1} holds {len(cells)} gates")
        (p, label), = cells.items()
        if label not in _BOXES:
            raise ValueError(f"unknown box {label!r} in slot {s + 1}")
        gates.append(_BOXES[label](p))
    return GateSequence(tuple(gates))
