"""Random-walk baseline: draw gates until the accumulated map corrects."""
from __future__ import annotations

import random

from .bell import DesignationMatrix, validate_designation
from .gates import BXOR, By, GateSequence, SxBx, row_op
from .gf2 import PAIRS, Mat10
from .synthesis import SolutionRecord
from .verify import _groups, check_correction

KINDS = ("BXOR", "By", "SxBx")


class NotFound(RuntimeError):
    pass


def random_gate(rng: random.Random):
    kind = rng.choice(KINDS)
    if kind == "BXOR":
        s, t = rng.sample(range(1, PAIRS + 1), 2)
        return BXOR(s, t)
    p = rng.randint(1, PAIRS)
    return By(p) if kind == "By" else SxBx(p)


def monte_carlo_search(mv: DesignationMatrix, seed: int = 0, max_len: int = 10**6) -> SolutionRecord:
    """Append uniformly drawn gates (kind first, then pairs) and stop at the
    first prefix whose forward map corrects every single error and whose
    measured rows carry the same four-groups as ``mv``.

    The drawn order is the physical order, so the record stores it reversed.
    Its m_w is the forward map itself (i_x = identity), and its designation
    is the one that map induces, which matches ``mv`` up to the
    measurement basis.
    """
    validate_designation(mv).raise_if_invalid()
    rng = random.Random(seed)
    want = _groups(mv)
    rows = [1 << i for i in range(10)]
    drawn = []
    for _ in range(max_len):
        g = random_gate(rng)
        drawn.append(g)
        row_op(g, rows)
        m = Mat10(tuple(rows))
        induced = DesignationMatrix.of(m)
        if not validate_designation(induced).ok or _groups(induced) != want:
            continue
        if check_correction(m):
            seq = GateSequence(tuple(reversed(drawn)))
            return SolutionRecord(m, seq, Mat10.identity(), None, induced, label=f"mc-seed{seed}")
    raise NotFound(f"no correcting map within {max_len} gates (seed {seed})")
