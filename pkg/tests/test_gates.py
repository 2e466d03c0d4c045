import pytest
from hypothesis import given

from conftest import gates, sequences, words10
from epp5.bell import canonical_syndromes
from epp5.gates import (BACKWARD, BXOR, FORWARD, By, GateSequence, SxBx, Sz, AffineMap, alphabet,
                        apply_gate, apply_sequence, apply_word, gate_matrix, sequence_matrix)
from epp5.gf2 import BitVec, Mat10, symplectic_check


def brute(g, w):
    """Oracle straight from the bit rules of the four operations."""
    bits = [(w >> i) & 1 for i in range(10)]
    x = lambda p: 2 * p - 2  # noqa: E731  phase bit of pair p
    y = lambda p: 2 * p - 1  # noqa: E731  amplitude bit
    if isinstance(g, BXOR):
        s, t = g.source, g.target
        bits[x(s)] ^= bits[x(t)]
        bits[y(t)] ^= bits[y(s)]
    elif isinstance(g, By):
        bits[x(g.pair)], bits[y(g.pair)] = bits[y(g.pair)], bits[x(g.pair)]
    elif isinstance(g, SxBx):
        bits[y(g.pair)] ^= bits[x(g.pair)]
    else:
        bits[x(g.pair)] ^= 1
    return sum(b << i for i, b in enumerate(bits))


def test_alphabet_sizes():
    assert len(alphabet()) == 30
    assert len(alphabet(include_sz=True)) == 35
    assert len(set(alphabet(include_sz=True))) == 35


@pytest.mark.parametrize("g", alphabet(include_sz=True), ids=str)
def test_gate_matches_bit_rules(g):
    for w in range(1024):
        assert apply_word(g, w) == brute(g, w)


@pytest.mark.parametrize("g", alphabet(include_sz=True), ids=str)
def test_gate_matrix_involutive_and_symplectic(g):
    m = gate_matrix(g)
    assert m.then(m) == AffineMap.identity()
    assert symplectic_check(m.matrix)


@given(gates(include_sz=True), words10)
def test_gate_matrix_agrees_with_apply(g, w):
    assert gate_matrix(g)(BitVec(w)) == apply_gate(g, BitVec(w))


@given(sequences(12, include_sz=True))
def test_forward_after_backward_is_identity(seq):
    for x in canonical_syndromes():
        assert apply_sequence(seq, apply_sequence(seq, x, BACKWARD), FORWARD) == x


@given(sequences(12, include_sz=True), words10)
def test_sequence_matrix_matches_stepwise(seq, w):
    x = BitVec(w)
    for d in (FORWARD, BACKWARD):
        assert sequence_matrix(seq, d)(x) == apply_sequence(seq, x, d)


@given(sequences(8), sequences(8))
def test_forward_map_of_concatenation(a, b):
    # forward order runs the later gates first
    ab = sequence_matrix(a + b, FORWARD)
    assert ab == sequence_matrix(b, FORWARD).then(sequence_matrix(a, FORWARD))


def test_sz_is_affine_only():
    m = gate_matrix(Sz(3))
    assert m.matrix == Mat10.identity()
    assert str(m.offset) == "0000100000"


def test_bad_gates_rejected():
    with pytest.raises(ValueError):
        BXOR(2, 2)
    with pytest.raises(ValueError):
        By(6)


def test_sequence_direction_names():
    seq = GateSequence((By(1), SxBx(2)))
    assert seq.ordered(BACKWARD) == (By(1), SxBx(2))
    assert seq.ordered(FORWARD) == (SxBx(2), By(1))
    with pytest.raises(ValueError):
        seq.ordered("sideways")
