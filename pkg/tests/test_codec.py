import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

import golden
from conftest import mat10s, sequences
from epp5 import codec
from epp5.bell import DesignationMatrix
from epp5.catalog import NAMED_PATHS
from epp5.codec import ParseError
from epp5.gates import GateSequence
from epp5.gf2 import Mat10
from epp5.synthesis import SolutionRecord, enumerate_solutions, synthesize


@given(mat10s)
def test_mat10_roundtrip(rows):
    m = Mat10(tuple(rows))
    assert codec.decode(codec.encode(m), Mat10) == m


@given(st.lists(st.integers(0, 1023), min_size=4, max_size=4))
def test_designation_roundtrip(rows):
    mv = DesignationMatrix(tuple(rows))
    assert codec.decode(codec.encode(mv), DesignationMatrix) == mv


@given(sequences(20, include_sz=True))
def test_sequence_roundtrip(seq):
    text = codec.encode(seq)
    assert json.loads(text)["order"] == "reduction"
    assert codec.decode(text, GateSequence) == seq


def test_published_texts_roundtrip():
    assert codec.encode(codec.parse_designation(golden.BASE)) == golden.BASE
    assert codec.encode(codec.parse_mat10(golden.MW_A1ALPHA1)) == golden.MW_A1ALPHA1


@pytest.mark.parametrize("name", sorted(NAMED_PATHS))
def test_record_roundtrip(mv, name):
    rec = synthesize(mv, NAMED_PATHS[name], label=name)
    assert codec.decode(codec.encode(rec), SolutionRecord) == rec


def test_enumerated_records_roundtrip(mv):
    for rec in enumerate_solutions(mv, limit=25):
        assert codec.decode(codec.encode(rec), SolutionRecord) == rec


def test_record_json_shape(mv):
    d = json.loads(codec.encode(synthesize(mv, NAMED_PATHS["A1alpha1"])))
    assert d["designation"] == golden.BASE.split()
    assert d["m_w"] == golden.MW_A1ALPHA1.split()
    assert d["counts"] == {"stage1": 384, "stage2": 104, "stage3": 6, "stage4": 1, "stage5": 1}
    assert d["sequence"]["gates"][0] in ({"op": "By", "pair": 1}, {"op": "BXOR", "source": 1, "target": 2})


def test_nine_line_matrix_fails_at_line_ten():
    text = "".join(golden.MW_A1ALPHA1.splitlines(keepends=True)[:9])
    with pytest.raises(ParseError) as e:
        codec.parse_mat10(text)
    assert e.value.line == 10


def test_bad_character_position():
    text = golden.MW_A1ALPHA1.replace("0000000010\n", "00000x0010\n", 1)
    with pytest.raises(ParseError) as e:
        codec.parse_mat10(text)
    assert (e.value.line, e.value.col) == (9, 6)


def test_short_line_and_missing_newline():
    with pytest.raises(ParseError) as e:
        codec.parse_designation("1001000110\n001011111\n0100011010\n0001101001\n")
    assert e.value.line == 2
    with pytest.raises(ParseError):
        codec.parse_designation(golden.BASE.rstrip("\n"))
    with pytest.raises(ParseError) as e:
        codec.parse_designation(golden.BASE + "0000000000\n")
    assert e.value.line == 5


def test_json_errors_carry_position():
    with pytest.raises(ParseError) as e:
        codec.decode('{"order": "reduction",\n "gates": [}', GateSequence)
    assert e.value.line == 2
    with pytest.raises(ParseError):
        codec.decode('{"gates": [{"op": "CNOT", "pair": 1}]}', GateSequence)
    with pytest.raises(ParseError):
        codec.decode('{"gates": [{"op": "BXOR", "source": 1}]}', GateSequence)
    with pytest.raises(ParseError):
        codec.decode('{"m_w": []}', SolutionRecord)


def test_physical_order_is_reversed():
    seq = codec.sequence_from_json({"order": "physical", "gates": [{"op": "By", "pair": 1},
                                                                    {"op": "SxBx", "pair": 2}]})
    assert [str(g) for g in seq] == ["SxBx(2)", "By(1)"]
