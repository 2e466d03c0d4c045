import pytest

import golden
from epp5.bell import (BellLabel, DesignationCollision, DesignationMatrix, PauliOp,
                       canonical_syndromes, extract_measurement, pauli_for, table1, truncated,
                       validate_designation)
from epp5.gf2 import BitVec


def test_syndromes_follow_the_closure_rule():
    xs = canonical_syndromes()
    assert len(xs) == 16 and len({x.word for x in xs}) == 16
    assert xs[0].word == 0
    for k in range(1, 6):
        assert xs[3 * k] == xs[3 * k - 2] ^ xs[3 * k - 1]
    # a single error touches one pair only
    for x in xs[1:]:
        pairs = {(i // 2) for i in range(10) if (x.word >> i) & 1}
        assert len(pairs) == 1


@pytest.mark.parametrize("label", list(BellLabel))
def test_pauli_restores_phi_plus(label):
    assert pauli_for(label).apply(label) is BellLabel.PHI_PLUS


def test_pauli_bit_semantics():
    # oracle: x flips amplitude, z flips phase, y both
    expected = {PauliOp.SIGMA_X: (0, 1), PauliOp.SIGMA_Z: (1, 0), PauliOp.SIGMA_Y: (1, 1),
                PauliOp.IDENTITY: (0, 0)}
    for op, (dp, da) in expected.items():
        for label in BellLabel:
            out = op.apply(label)
            assert (out.phase ^ label.phase, out.amplitude ^ label.amplitude) == (dp, da)


def test_measurement_and_truncation():
    w = BitVec.parse("1101010101")
    assert str(extract_measurement(w)) == "1111"
    assert truncated(w) is BellLabel.PSI_MINUS


def test_base_designation_is_valid(mv):
    res = validate_designation(mv)
    assert res.ok and len({v.word for v in res.vtable}) == 16


def test_collision_is_reported():
    bad = DesignationMatrix.parse(["1100000000", "0000000000", "0000000000", "0000000000"])
    res = validate_designation(bad)
    assert not res.ok
    with pytest.raises(DesignationCollision):
        res.raise_if_invalid()


def test_table1_rows(mv):
    rows = table1(mv)
    lines = golden.TABLE1_TSV.splitlines()[1:]
    assert [f"{i}\t{x}\t{v}" for i, x, v in rows] == lines
