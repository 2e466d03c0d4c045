import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import mat10s, words10
from epp5.gates import alphabet, gate_matrix
from epp5.gf2 import (BitVec, Block2, J, Mat10, block_at, det2, inverse, is_block_permutation,
                      is_invertible, mat_mul, mat_vec, rank, rank2, symplectic_check)


def dense(m: Mat10) -> np.ndarray:
    return np.array([[(r >> j) & 1 for j in range(10)] for r in m.rows], dtype=np.int64)


def from_dense(a) -> Mat10:
    return Mat10(tuple(int(sum(int(b) << j for j, b in enumerate(row))) for row in a))


def dense_rank(a) -> int:
    a = a.copy() % 2
    r = 0
    for c in range(a.shape[1]):
        piv = [i for i in range(r, a.shape[0]) if a[i, c]]
        if not piv:
            continue
        a[[r, piv[0]]] = a[[piv[0], r]]
        for i in range(a.shape[0]):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return r


mats = mat10s.map(lambda rows: Mat10(tuple(rows)))


@given(mats, mats)
def test_mat_mul_matches_dense_oracle(a, b):
    assert mat_mul(a, b) == from_dense(dense(a) @ dense(b) % 2)


@given(mats, mats, mats)
def test_mat_mul_associative(a, b, c):
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


@given(mats)
def test_identity_neutral(a):
    assert mat_mul(Mat10.identity(), a) == a == mat_mul(a, Mat10.identity())


@given(mats, mats, words10)
def test_mat_vec_compatible_with_mul(a, b, w):
    x = BitVec(w)
    assert mat_vec(mat_mul(a, b), x) == mat_vec(a, mat_vec(b, x))


@given(mats, words10)
def test_mat_vec_matches_dense(a, w):
    x = np.array([(w >> j) & 1 for j in range(10)])
    y = dense(a) @ x % 2
    assert mat_vec(a, BitVec(w)).bits == tuple(int(v) for v in y)


@pytest.mark.parametrize("code", range(16))
def test_det2_iff_rank_two(code):
    b = Block2.from_code(code)
    a = np.array(b.rows)
    assert det2(b) == (dense_rank(a) == 2)
    assert rank2(b) == dense_rank(a)


@given(mats)
def test_rank_matches_oracle(a):
    assert rank(a.rows) == dense_rank(dense(a))


@given(mats)
def test_invertible_iff_inverse_exists(a):
    inv = inverse(a)
    assert is_invertible(a) == (inv is not None)
    if inv is not None:
        assert mat_mul(a, inv) == Mat10.identity() == mat_mul(inv, a)


def test_symplectic_identity_and_j():
    assert symplectic_check(Mat10.identity())
    assert symplectic_check(J)
    assert not symplectic_check(Mat10.zero())


@given(st.lists(st.sampled_from(alphabet()), max_size=8), st.lists(st.sampled_from(alphabet()), max_size=8))
def test_symplectic_closed_under_products(ga, gb):
    a, b = Mat10.identity(), Mat10.identity()
    for g in ga:
        a = mat_mul(gate_matrix(g).matrix, a)
    for g in gb:
        b = mat_mul(gate_matrix(g).matrix, b)
    assert symplectic_check(a) and symplectic_check(b)
    assert symplectic_check(mat_mul(a, b))


def test_block_at_indexing():
    m = Mat10.parse(["1000000000", "0100000000"] + ["0000000000"] * 8)
    assert block_at(m, 1, 1).rows == ((1, 0), (0, 1))
    with pytest.raises(IndexError):
        block_at(m, 6, 1)


def test_block_permutation_detection():
    assert is_block_permutation(Mat10.identity())
    assert not is_block_permutation(Mat10.zero())
    swapped = Mat10(tuple(1 << ((i + 2) % 10) for i in range(10)))
    assert is_block_permutation(swapped)


def test_bitvec_layout_is_one_based():
    x = BitVec.parse("1000000001")
    assert x.bit(1) == 1 and x.bit(10) == 1 and x.word == 0b1000000001
    assert str(x) == "1000000001"
    with pytest.raises(ValueError):
        BitVec(1 << 10)
