"""Staged row-operation synthesis of Boolean functions M_w.

The template carries one unknown bit per entry of the unmeasured rows
(pair 1 both rows; the phase rows of pairs 2..5) and the designation in
the measured rows.  Column groups are processed one per stage: pick the
unknowns of the active group so that exactly one live pair holds a det-1
block, eliminate the other live pairs against it, freeze the pivot pair and
turn its remaining entries into linear relations among the unknowns.

Affine forms are ints: bit 0 is the constant, bit ``u + 1`` unknown ``u``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from itertools import permutations, product
from typing import Iterator, Mapping, Sequence

from .bell import DesignationMatrix, validate_designation
from .elimination import eliminate_codes, local_to_gates
from .gates import Gate, GateSequence, reduce_rows, row_op
from .gf2 import N, Block2, Mat10, det2, is_block_permutation, parity

log = logging.getLogger(__name__)

LETTERS = "abcdef"
UNKNOWN_ROWS = (1, 2, 3, 5, 7, 9)  # 1-based template rows carrying unknowns
MEASURED = {4: 0, 6: 1, 8: 2, 10: 3}  # template row -> designation row
UNMEASURED_PAIR = 1
NUM_UNKNOWNS = len(LETTERS) * N
DEFAULT_ORDER = (1, 2, 3, 4, 5)


class SynthesisError(ValueError):
    pass


class InfeasiblePath(SynthesisError):
    """A determinant condition or relation contradicts the path so far."""


class IncompletePath(SynthesisError):
    """The path leaves unknowns of an active column group unassigned."""


def unknown_id(name: str) -> int:
    letter, col = name[0], int(name[1:])
    if letter not in LETTERS or not 1 <= col <= N:
        raise KeyError(name)
    return LETTERS.index(letter) * N + col - 1


def unknown_name(uid: int) -> str:
    return f"{LETTERS[uid // N]}{uid % N + 1}"


def ubit(uid: int) -> int:
    return 1 << (uid + 1)


def support_ids(form: int) -> list[int]:
    out = []
    f = form >> 1
    u = 0
    while f:
        if f & 1:
            out.append(u)
        f >>= 1
        u += 1
    return out


@dataclass(frozen=True)
class AffineForm:
    constant: int
    support: frozenset[str]

    @classmethod
    def from_int(cls, form: int) -> "AffineForm":
        return cls(form & 1, frozenset(unknown_name(u) for u in support_ids(form)))

    def as_int(self) -> int:
        out = self.constant
        for name in self.support:
            out |= ubit(unknown_id(name))
        return out

    def __str__(self) -> str:
        terms = sorted(self.support, key=unknown_id)
        if self.constant or not terms:
            terms = [str(self.constant)] + terms
        return "+".join(terms)


def evaluate(form: int, ones: int) -> int:
    """Value of ``form`` when exactly the unknowns in mask ``ones`` are 1."""
    return parity(form & (ones | 1))


@dataclass(frozen=True)
class TemplateMatrix:
    """10x10 grid of affine forms, row-major."""

    entries: tuple[int, ...]

    def form(self, i: int, j: int) -> AffineForm:
        return AffineForm.from_int(self.entries[(i - 1) * N + j - 1])

    def rows(self) -> list[list[int]]:
        return [list(self.entries[i * N:(i + 1) * N]) for i in range(N)]

    def unknowns(self) -> set[str]:
        out: set[str] = set()
        for e in self.entries:
            out.update(unknown_name(u) for u in support_ids(e))
        return out

    def substitute(self, values: Mapping[str, int]) -> Mat10:
        ones = 0
        for name, v in values.items():
            if v:
                ones |= ubit(unknown_id(name))
        return Mat10(tuple(
            sum(evaluate(self.entries[i * N + j], ones) << j for j in range(N))
            for i in range(N)))


def build_template(mv: DesignationMatrix) -> TemplateMatrix:
    """Unknowns a..f fill rows 1, 2, 3, 5, 7, 9; rows 4, 6, 8, 10 are ``mv``."""
    validate_designation(mv).raise_if_invalid()
    entries = []
    for i in range(1, N + 1):
        if i in MEASURED:
            r = mv.rows[MEASURED[i]]
            entries += [(r >> j) & 1 for j in range(N)]
        else:
            letter = UNKNOWN_ROWS.index(i)
            entries += [ubit(letter * N + j) for j in range(N)]
    return TemplateMatrix(tuple(entries))


class ConstraintSet:
    """Linear relations among unknowns, kept solved for the lowest-numbered
    unknown of each relation (eager substitution keeps it reduced)."""

    def __init__(self):
        self.expr: dict[int, int] = {}
        self.order: list[int] = []
        self.det_conditions: list[tuple[int, int, int, int]] = []

    def copy(self) -> "ConstraintSet":
        c = ConstraintSet()
        c.expr = dict(self.expr)
        c.order = list(self.order)
        c.det_conditions = list(self.det_conditions)
        return c

    def reduce(self, form: int) -> int:
        for u in support_ids(form):
            if u in self.expr:
                form ^= ubit(u) ^ self.expr[u]
        return form

    def add(self, form: int) -> tuple[int, int] | None:
        """Impose ``form == 0``; return the (unknown, replacement) it solved."""
        form = self.reduce(form)
        if form >> 1 == 0:
            if form & 1:
                raise InfeasiblePath("relation reduces to 1 = 0")
            return None
        u = support_ids(form)[0]
        rep = form ^ ubit(u)
        b = ubit(u)
        for k, f in self.expr.items():
            if f & b:
                self.expr[k] = f ^ b ^ rep
        self.expr[u] = rep
        self.order.append(u)
        return u, rep

    def values(self) -> dict[str, int]:
        """Concrete values; valid once every unknown is determined."""
        out = {}
        for u in range(NUM_UNKNOWNS):
            f = self.expr.get(u)
            if f is None or f >> 1:
                raise IncompletePath(f"unknown {unknown_name(u)} is not determined")
            out[unknown_name(u)] = f & 1
        return out

    def linear_relations(self) -> list[str]:
        return [f"{unknown_name(u)} = {AffineForm.from_int(self.expr[u])}" for u in self.order]


@dataclass(frozen=True)
class StageChoice:
    """Pivot pair and unknown assignment for one column-group stage.

    ``pivot=None`` accepts whichever pair ends up holding the det-1 block.
    ``order`` lists target pairs to eliminate first; the rest follow in
    ascending order.
    """

    pivot: int | None = None
    assignment: tuple[tuple[str, int], ...] = ()
    order: tuple[int, ...] = ()

    @classmethod
    def of(cls, pivot=None, assignment: Mapping[str, int] | None = None, order=()):
        items = tuple(sorted((assignment or {}).items(), key=lambda kv: unknown_id(kv[0])))
        return cls(pivot, items, tuple(order))

    def to_json(self) -> dict:
        return {"pivot": self.pivot, "assignment": dict(self.assignment), "order": list(self.order)}

    @classmethod
    def from_json(cls, d: Mapping) -> "StageChoice":
        return cls.of(d.get("pivot"), d.get("assignment", {}), d.get("order", ()))


@dataclass(frozen=True)
class ChoicePath:
    column_order: tuple[int, ...] = DEFAULT_ORDER
    stages: tuple[StageChoice, ...] = ()

    def __post_init__(self):
        if sorted(self.column_order) != [1, 2, 3, 4, 5]:
            raise ValueError(f"column order must permute 1..5: {self.column_order}")
        if len(self.stages) > 5:
            raise ValueError("at most five stages")
        pivots = [s.pivot for s in self.stages if s.pivot is not None]
        if len(set(pivots)) != len(pivots):
            raise InfeasiblePath(f"pivot pairs must be distinct: {pivots}")

    def stage(self, t: int) -> StageChoice:
        return self.stages[t] if t < len(self.stages) else StageChoice()

    def to_json(self) -> dict:
        return {"column_order": list(self.column_order),
                "stages": [s.to_json() for s in self.stages]}

    @classmethod
    def from_json(cls, d: Mapping) -> "ChoicePath":
        return cls(tuple(d.get("column_order", DEFAULT_ORDER)),
                   tuple(StageChoice.from_json(s) for s in d.get("stages", ())))


@dataclass(frozen=True)
class EliminationStep:
    group: int
    pivot: int
    target: int
    gates: tuple[Gate, ...]


@dataclass(frozen=True)
class SolutionRecord:
    m_w: Mat10
    sequence: GateSequence
    i_x: Mat10
    path: ChoicePath | None
    designation: DesignationMatrix
    steps: tuple[EliminationStep, ...] = ()
    counts: tuple[int, ...] = ()
    label: str | None = None


class _State:
    """Mutable working copy of one branch of the stage tree."""

    __slots__ = ("W", "cons", "frozen", "gates", "steps", "stages", "counts")

    def __init__(self, template: TemplateMatrix):
        self.W = template.rows()
        self.cons = ConstraintSet()
        self.frozen: list[int] = []
        self.gates: list[Gate] = []
        self.steps: list[EliminationStep] = []
        self.stages: list[StageChoice] = []
        self.counts: list[int] = []

    def copy(self) -> "_State":
        s = object.__new__(_State)
        s.W = [list(r) for r in self.W]
        s.cons = self.cons.copy()
        s.frozen = list(self.frozen)
        s.gates = list(self.gates)
        s.steps = list(self.steps)
        s.stages = list(self.stages)
        s.counts = list(self.counts)
        return s

    def impose(self, form: int) -> None:
        solved = self.cons.add(form)
        if solved is None:
            return
        u, rep = solved
        b = ubit(u)
        for row in self.W:
            for j, e in enumerate(row):
                if e & b:
                    row[j] = e ^ b ^ rep

    def block_forms(self, pair: int, group: int) -> tuple[int, int, int, int]:
        r0, r1 = self.W[2 * pair - 2], self.W[2 * pair - 1]
        c = 2 * group - 2
        return r0[c], r0[c + 1], r1[c], r1[c + 1]

    def live(self) -> list[int]:
        return [p for p in range(1, 6) if p not in self.frozen]


def _code(forms) -> int:
    code = 0
    for i, f in enumerate(forms):
        if f >> 1:
            raise IncompletePath("active block still contains unknowns")
        code |= (f & 1) << i
    return code


def _stage_unknowns(state: _State, group: int) -> list[int]:
    mask = 0
    for p in state.live():
        for f in state.block_forms(p, group):
            mask |= f
    return support_ids(mask)


def stage_options(state: _State, t: int, group: int) -> list[tuple[int, tuple[tuple[str, int], ...]]]:
    """All (pivot, assignment) branches of the active stage in canonical
    order: by pivot pair, then by the assignment bit vector over the stage
    unknowns in ascending unknown order."""
    unknowns = _stage_unknowns(state, group)
    live = state.live()
    blocks = {p: state.block_forms(p, group) for p in live}
    out = []
    for bits in product((0, 1), repeat=len(unknowns)):
        ones = 0
        for u, b in zip(unknowns, bits):
            if b:
                ones |= ubit(u)
        det1 = []
        for p in live:
            f11, f12, f21, f22 = blocks[p]
            d = (evaluate(f11, ones) & evaluate(f22, ones)) ^ (evaluate(f12, ones) & evaluate(f21, ones))
            if d:
                det1.append(p)
        if len(det1) != 1:
            continue
        if t == 0 and det1[0] != UNMEASURED_PAIR:
            continue
        out.append((det1[0], tuple((unknown_name(u), b) for u, b in zip(unknowns, bits))))
    out.sort(key=lambda o: (o[0], tuple(b for _, b in o[1])))
    return out


def _eliminate(state: _State, group: int, pivot: int, targets: Sequence[int]) -> None:
    for q in targets:
        pc = _code(state.block_forms(pivot, group))
        tc = _code(state.block_forms(q, group))
        gates = local_to_gates(eliminate_codes(pc, tc), pivot, q)
        for g in gates:
            row_op(g, state.W)
        state.gates += gates
        if gates:
            state.steps.append(EliminationStep(group, pivot, q, tuple(gates)))


def _freeze(state: _State, group: int, pivot: int) -> None:
    for h in range(1, 6):
        if h != group:
            for f in state.block_forms(pivot, h):
                state.impose(f)
    state.frozen.append(pivot)


def _auto_order(state: _State, t: int, group: int, pivot: int, nonzero: list[int],
                next_group: int | None) -> tuple[int, ...]:
    """Elimination order of the non-zero targets that leaves the most
    branches open at the next stage; ties go to the earliest permutation."""
    if len(nonzero) < 2 or next_group is None:
        return tuple(nonzero)
    best, best_n = tuple(nonzero), -2
    for perm in permutations(nonzero):
        trial = state.copy()
        try:
            _eliminate(trial, group, pivot, perm)
            _freeze(trial, group, pivot)
            n = len(stage_options(trial, t + 1, next_group))
        except InfeasiblePath:
            n = -1
        if n > best_n:
            best, best_n = perm, n
    return best


def run_stage(state: _State, t: int, group: int, choice: StageChoice,
              next_group: int | None = None) -> None:
    for name, val in choice.assignment:
        state.impose(ubit(unknown_id(name)) ^ (val & 1))
    live = state.live()
    codes = {p: _code(state.block_forms(p, group)) for p in live}
    det1 = [p for p in live if det2(Block2.from_code(codes[p]))]
    if len(det1) != 1:
        raise InfeasiblePath(f"stage {t + 1}: det-1 blocks at pairs {det1}, need exactly one")
    pivot = det1[0]
    if choice.pivot is not None and choice.pivot != pivot:
        raise InfeasiblePath(f"stage {t + 1}: requested pivot {choice.pivot} has a singular block")
    if t == 0 and pivot != UNMEASURED_PAIR:
        raise InfeasiblePath("the first stage pivots on the unmeasured pair")
    for p in live:
        state.cons.det_conditions.append((t + 1, p, group, int(p == pivot)))
    nonzero = [q for q in live if q != pivot and codes[q]]
    if choice.order:
        order = [q for q in choice.order if q in nonzero]
        order += [q for q in nonzero if q not in order]
    else:
        order = list(_auto_order(state, t, group, pivot, nonzero, next_group))
    _eliminate(state, group, pivot, order)
    _freeze(state, group, pivot)
    state.stages.append(replace(choice, pivot=pivot, order=tuple(order)))


def _next(column_order, t: int) -> int | None:
    return column_order[t + 1] if t + 1 < len(column_order) else None


def initial_state(mv: DesignationMatrix) -> _State:
    return _State(build_template(mv))


def advance(mv: DesignationMatrix, path: ChoicePath, stages: int | None = None) -> _State:
    """Run the first ``stages`` stages of ``path`` (all five by default)."""
    state = initial_state(mv)
    n = 5 if stages is None else stages
    for t in range(n):
        run_stage(state, t, path.column_order[t], path.stage(t), _next(path.column_order, t))
    return state


def _finish(state: _State, mv: DesignationMatrix, column_order, template: TemplateMatrix,
            label: str | None = None) -> SolutionRecord:
    values = state.cons.values()
    m_w = template.substitute(values)
    i_x = Mat10(tuple(_code_row(r) for r in state.W))
    seq = GateSequence(tuple(state.gates))
    if reduce_rows(m_w.rows, seq.gates) != i_x.rows or not is_block_permutation(i_x):
        raise SynthesisError("reduction did not reach a block-permutation form")
    path = ChoicePath(tuple(column_order), tuple(state.stages))
    return SolutionRecord(m_w, seq, i_x, path, mv, tuple(state.steps), tuple(state.counts), label)


def _code_row(row: Sequence[int]) -> int:
    out = 0
    for j, f in enumerate(row):
        if f >> 1:
            raise IncompletePath("unknowns remain after the last stage")
        out |= (f & 1) << j
    return out


def synthesize(mv: DesignationMatrix, path: ChoicePath, label: str | None = None) -> SolutionRecord:
    """Execute ``path`` on the template of ``mv`` and back-substitute."""
    template = build_template(mv)
    state = _State(template)
    for t in range(5):
        group = path.column_order[t]
        state.counts.append(len(stage_options(state, t, group)))
        run_stage(state, t, group, path.stage(t), _next(path.column_order, t))
    return _finish(state, mv, path.column_order, template, label)


@dataclass
class EnumerationStats:
    options: list[int] = field(default_factory=lambda: [0] * 5)
    infeasible: list[int] = field(default_factory=lambda: [0] * 5)
    solutions: int = 0


def enumerate_solutions(mv: DesignationMatrix, column_order: Sequence[int] = DEFAULT_ORDER,
                        limit: int | None = None, stats: EnumerationStats | None = None,
                        prefix: ChoicePath | None = None) -> Iterator[SolutionRecord]:
    """Depth-first over all feasible choice paths in canonical order.

    ``stats`` (if given) accumulates the number of branches offered and
    pruned at each stage.  ``prefix`` pins the leading stages.
    """
    if not validate_designation(mv).ok:
        return
    column_order = tuple(column_order)
    template = build_template(mv)
    stats = stats if stats is not None else EnumerationStats()
    fixed = len(prefix.stages) if prefix else 0
    emitted = 0

    def rec(state: _State, t: int):
        if t == 5:
            yield _finish(state, mv, column_order, template)
            return
        group = column_order[t]
        opts = stage_options(state, t, group)
        if t < fixed:
            choices = [prefix.stages[t]]
        else:
            choices = [StageChoice(p, a) for p, a in opts]
        stats.options[t] += len(choices)
        for choice in choices:
            child = state.copy()
            child.counts.append(len(opts))
            try:
                run_stage(child, t, group, choice, _next(column_order, t))
            except InfeasiblePath:
                stats.infeasible[t] += 1
                continue
            yield from rec(child, t + 1)

    for record in rec(_State(template), 0):
        stats.solutions += 1
        yield record
        emitted += 1
        if limit is not None and emitted >= limit:
            return


def count_stage_options(mv: DesignationMatrix, prefix: ChoicePath) -> int:
    """Number of branches offered at the stage following ``prefix``."""
    t = len(prefix.stages)
    state = advance(mv, prefix, t)
    return len(stage_options(state, t, prefix.column_order[t]))
