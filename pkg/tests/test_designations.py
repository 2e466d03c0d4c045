from hypothesis import given
from hypothesis import strategies as st

from epp5.bell import DesignationMatrix, validate_designation
from epp5.designations import relate_designations
from epp5.gates import BXOR, reduce_rows

measured_bxor = st.tuples(st.integers(2, 5), st.integers(2, 5)).filter(lambda p: p[0] != p[1]).map(
    lambda p: BXOR(*p))


def as_designation(rows10):
    return DesignationMatrix(tuple(rows10[r - 1] for r in (4, 6, 8, 10)))


def embed(mv):
    rows = [0] * 10
    for k, r in enumerate((4, 6, 8, 10)):
        rows[r - 1] = mv.rows[k]
    return rows


def test_identical_gives_empty(mv):
    assert list(relate_designations(mv, mv)) == []


def test_rowsum_is_one_bxor(mv, mv_rowsum):
    assert list(relate_designations(mv, mv_rowsum)) == [BXOR(3, 2)]


def test_invalid_gives_none(mv):
    assert relate_designations(mv, DesignationMatrix((0, 0, 0, 0))) is None


@given(st.lists(measured_bxor, max_size=4))
def test_found_word_reproduces_target(mv, word):
    # oracle: the gates themselves, applied to the measured rows of a full matrix
    target = as_designation(reduce_rows(embed(mv), word))
    assert validate_designation(target).ok
    rel = relate_designations(mv, target)
    assert rel is not None and len(rel) <= len(word)
    assert as_designation(reduce_rows(embed(mv), rel.gates)) == target
