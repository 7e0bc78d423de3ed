import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphencoder import (
    EmptyClassError,
    EncodeOptions,
    GeneralGraph,
    LabelVector,
    build_onehot,
    encode,
    encode_dense,
    encode_oracle,
    encode_sparse,
)

from instances import random_instance

RAW = EncodeOptions(normalize=False)
A3 = np.array([[0.0, 2.0, 4.0], [2.0, 0.0, 6.0], [4.0, 6.0, 0.0]])
Y3 = LabelVector(np.array([1, 1, 2]), 2)


def test_build_onehot_hand_example():
    np.testing.assert_array_equal(build_onehot(Y3), [[0.5, 0], [0.5, 0], [0, 1]])


def test_build_onehot_unknown_row_is_zero():
    w = build_onehot(LabelVector(np.array([0, 1]), 1))
    np.testing.assert_array_equal(w, [[0.0], [1.0]])


def test_build_onehot_single():
    np.testing.assert_array_equal(build_onehot(LabelVector(np.array([1]), 1)), [[1.0]])


def test_build_onehot_empty_class_names_it():
    with pytest.raises(EmptyClassError, match="2"):
        build_onehot(LabelVector(np.array([1, 1, 3]), 3))


def test_encode_dense_hand_example():
    z = encode_dense(A3, Y3, RAW)
    np.testing.assert_array_equal(z.values, [[1, 4], [1, 6], [5, 0]])
    assert not z.normalized


def test_encode_dense_normalized_hand_example():
    z = encode_dense(A3, Y3)
    np.testing.assert_allclose(z.values[0], np.array([1.0, 4.0]) / np.sqrt(17.0), rtol=1e-15)
    np.testing.assert_allclose(np.linalg.norm(z.values, axis=1), 1.0, rtol=1e-15)


def test_zero_graph_rows_stay_zero():
    z = encode_dense(np.zeros((4, 4)), LabelVector(np.array([1, 2, 1, 2]), 2))
    np.testing.assert_array_equal(z.values, np.zeros((4, 2)))


def test_encode_sparse_hand_example():
    g = GeneralGraph.from_triplets(3, [1, 2, 1], [3, 3, 2], [4.0, 6.0, 2.0], one_based=True)
    np.testing.assert_array_equal(encode_sparse(g, Y3, RAW).values, [[1, 4], [1, 6], [5, 0]])


def test_encode_sparse_empty():
    g = GeneralGraph.from_triplets(3, [], [], [])
    np.testing.assert_array_equal(encode_sparse(g, Y3).values, np.zeros((3, 2)))


def test_encode_sparse_unknown_endpoint():
    y = LabelVector(np.array([1, 0, 2]), 2)
    g = GeneralGraph.from_triplets(3, [0], [1], [5.0])
    z = encode_sparse(g, y, RAW).values
    # vertex 1 is unknown: vertex 0 gains nothing; vertex 1 gains 5 in class 1
    np.testing.assert_array_equal(z, [[0, 0], [5, 0], [0, 0]])


def test_sparse_requires_triplets():
    with pytest.raises(TypeError):
        encode_sparse(GeneralGraph.from_dense(A3), Y3)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        encode_dense(A3, LabelVector(np.array([1, 2]), 2))


def test_empty_class_propagates():
    with pytest.raises(EmptyClassError):
        encode_dense(A3, LabelVector(np.array([1, 1, 1]), 2))


def test_single_class_is_row_mean(rng):
    a = rng.uniform(size=(7, 7))
    z = encode_oracle(a, LabelVector(np.ones(7, dtype=int), 1), RAW)
    np.testing.assert_allclose(z.values[:, 0], a.mean(axis=1), rtol=1e-13)


def test_zero_diagonal_option():
    a = A3 + np.diag([10.0, 20.0, 30.0])
    z = encode_dense(a, Y3, EncodeOptions(normalize=False, zero_diagonal=True)).values
    np.testing.assert_array_equal(z, [[1, 4], [1, 6], [5, 0]])
    z_keep = encode_dense(a, Y3, RAW).values
    np.testing.assert_array_equal(z_keep, [[6, 4], [11, 6], [5, 30]])
    g = GeneralGraph.from_triplets(3, [0, 1, 2, 0, 1, 0], [0, 1, 2, 1, 2, 2], [10, 20, 30, 2, 6, 4])
    np.testing.assert_array_equal(encode_sparse(g, Y3, EncodeOptions(False, True)).values, z)
    np.testing.assert_array_equal(encode_sparse(g, Y3, RAW).values, z_keep)


def test_encode_dispatch():
    g = GeneralGraph.from_triplets(3, [0, 1, 0], [2, 2, 1], [4.0, 6.0, 2.0])
    np.testing.assert_array_equal(encode(g, Y3, RAW).values, encode(A3, Y3, RAW).values)


def test_oracle_matches_dense_on_random_instances(rng):
    for _ in range(100):
        dense, _, y = random_instance(rng, n_max=50)
        for opts in (RAW, EncodeOptions()):
            np.testing.assert_allclose(
                encode_dense(dense, y, opts).values, encode_oracle(dense, y, opts).values, rtol=0, atol=1e-12
            )


def test_relabel_permute_roundtrip(rng):
    dense, _, y = random_instance(rng, n_max=30)
    perm = rng.permutation(dense.n)
    inv = np.argsort(perm)
    a = dense.dense[np.ix_(perm, perm)][np.ix_(inv, inv)]
    yy = y.labels[perm][inv]
    np.testing.assert_array_equal(encode_oracle(a, LabelVector(yy, y.K)).values, encode_oracle(dense, y).values)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_normalized_rows_unit_or_zero(seed):
    dense, sparse, y = random_instance(np.random.default_rng(seed), n_max=40)
    for z in (encode_dense(dense, y).values, encode_sparse(sparse, y).values):
        norms = np.linalg.norm(z, axis=1)
        assert np.all((np.abs(norms - 1) < 1e-12) | (norms == 0))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.01, 100))
def test_scale_equivariance_raw(seed, c):
    dense, _, y = random_instance(np.random.default_rng(seed), n_max=40)
    z = encode_dense(dense, y, RAW).values
    zc = encode_dense(c * dense.dense, y, RAW).values
    np.testing.assert_allclose(zc, c * z, rtol=1e-12, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.01, 100))
def test_normalized_scale_invariance(seed, c):
    dense, _, y = random_instance(np.random.default_rng(seed), n_max=40)
    z = encode_dense(dense, y).values
    zc = encode_dense(c * dense.dense, y).values
    np.testing.assert_allclose(zc, z, rtol=0, atol=1e-12)
