import itertools
from collections import Counter

import numpy as np
import pytest

from epp5.bell import DesignationMatrix
from epp5.fast import enumerate_fast, gate_list, path_from_indices
from epp5.gates import FORWARD, GateSequence, sequence_matrix
from epp5.synthesis import EnumerationStats, enumerate_solutions, synthesize

ORDER_LAST = (5, 1, 2, 3, 4)


@pytest.fixture(scope="module")
def batch(mv):
    return enumerate_fast(mv, (1, 2, 3, 4, 5))


def test_kernel_matches_reference_prefix(mv, batch):
    for k, rec in enumerate(itertools.islice(enumerate_solutions(mv), 800)):
        assert tuple(batch.m_w[k]) == rec.m_w.rows
        assert tuple(batch.i_x[k]) == rec.i_x.rows
        assert [str(g) for g in gate_list(batch.gates[k], batch.n_gates[k])] == [str(g) for g in rec.sequence]
        assert tuple(batch.counts[k]) == rec.counts


def test_kernel_matches_reference_on_other_order(mv):
    b = enumerate_fast(mv, ORDER_LAST)
    stats = EnumerationStats()
    ref = list(itertools.islice(enumerate_solutions(mv, ORDER_LAST, stats=stats), 300))
    assert [tuple(r) for r in b.m_w[:300]] == [r.m_w.rows for r in ref]


def test_totals(batch):
    assert len(batch) == 224256
    assert batch.stage_options.tolist() == [384, 39936, 224256, 224256, 224256]
    assert batch.stage_infeasible.tolist() == [0] * 5
    assert len({tuple(r) for r in batch.m_w}) == len(batch)
    assert Counter(batch.bxor_counts().tolist()) == {6: 384, 7: 7296, 8: 42624, 9: 96384, 10: 77568}


@pytest.mark.parametrize("k", [0, 4321, 100000, 224255])
def test_indices_replay(mv, batch, k):
    path = path_from_indices(mv, (1, 2, 3, 4, 5), batch.options[k])
    assert synthesize(mv, path).m_w.rows == tuple(batch.m_w[k])


@pytest.mark.parametrize("k", [0, 77, 150000])
def test_forward_maps(batch, k):
    seq = GateSequence(tuple(gate_list(batch.gates[k], batch.n_gates[k])))
    assert sequence_matrix(seq, FORWARD).matrix.rows == tuple(batch.forward_maps()[k])


def test_jobs_do_not_change_output(mv):
    one = enumerate_fast(mv, ORDER_LAST, jobs=1)
    two = enumerate_fast(mv, ORDER_LAST, jobs=2)
    for a, b in zip((one.m_w, one.gates, one.options), (two.m_w, two.gates, two.options)):
        assert np.array_equal(a, b)


def test_invalid_designation_is_empty():
    assert len(enumerate_fast(DesignationMatrix((0, 0, 0, 0)))) == 0
