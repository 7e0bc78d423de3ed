"""One-hot graph encoder embedding.

Given a general graph ``A`` (n x n) and labels ``Y`` in {0..K}, vertex i is
embedded as its average connection weight to each known class::

    Z(i, k) = sum_j A(i, j) * 1(Y_j = k) / n_k

Unknown labels (0) contribute to no column.  Rows are optionally scaled to
unit Euclidean norm afterwards.

Two production paths share one value contract: :func:`encode_dense` (a
single matrix product, O(n^2)) and :func:`encode_sparse` (one pass over the
triplets, O(s + nK)).  :func:`encode_oracle` is the literal double loop and
exists for testing.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import EncoderEmbedding, GeneralGraph, as_labels, class_counts


class EmptyClassError(ValueError):
    """A class in 1..K has no labeled vertex, so its column is undefined."""


@dataclass(frozen=True)
class EncodeOptions:
    normalize: bool = True
    zero_diagonal: bool = False


DEFAULT_OPTIONS = EncodeOptions()


def _checked_counts(lv):
    counts = class_counts(lv)
    empty = np.flatnonzero(counts == 0)
    if empty.size:
        names = ", ".join(str(k + 1) for k in empty)
        raise EmptyClassError(f"class(es) {names} have no labeled vertex")
    return counts


def _prepare(graph, labels):
    if not isinstance(graph, GeneralGraph):
        graph = GeneralGraph.from_dense(graph)
    lv = as_labels(labels)
    if lv.n != graph.n:
        raise ValueError(f"graph has {graph.n} vertices but {lv.n} labels")
    return graph, lv, _checked_counts(lv)


def build_onehot(labels, K=None) -> np.ndarray:
    """The n x K matrix W with W(i, k) = 1/n_k when label i is k, else 0."""
    lv = as_labels(labels, K)
    counts = _checked_counts(lv)
    w = np.zeros((lv.n, lv.K))
    known = np.flatnonzero(lv.known)
    cls = lv.labels[known] - 1
    w[known, cls] = 1.0 / counts[cls]
    return w


def _indicator(lv):
    ind = np.zeros((lv.n, lv.K))
    known = np.flatnonzero(lv.known)
    ind[known, lv.labels[known] - 1] = 1.0
    return ind


def normalize_rows(z: np.ndarray) -> np.ndarray:
    """Scale rows with positive Euclidean norm to unit length; zero rows stay."""
    norms = np.sqrt(np.einsum("ij,ij->i", z, z))
    out = np.array(z, dtype=float)
    pos = norms > 0
    out[pos] /= norms[pos, None]
    return out


def _finish(z, counts, opts):
    # Dividing the class sums once (rather than multiplying by 1/n_k per
    # term) keeps integer-weighted inputs exact and order independent.
    z /= counts[None, :]
    if opts.normalize:
        z = normalize_rows(z)
    return EncoderEmbedding(z, normalized=opts.normalize, counts=counts)


def encode_dense(graph, labels, opts: EncodeOptions = DEFAULT_OPTIONS) -> EncoderEmbedding:
    """Encoder embedding via one dense matrix product."""
    graph, lv, counts = _prepare(graph, labels)
    a = graph.dense if not graph.is_sparse else graph.to_array()
    if opts.zero_diagonal:
        a = np.array(a)
        np.fill_diagonal(a, 0.0)
    z = a @ _indicator(lv)
    return _finish(z, counts, opts)


def encode_sparse(graph: GeneralGraph, labels, opts: EncodeOptions = DEFAULT_OPTIONS) -> EncoderEmbedding:
    """Encoder embedding from triplet storage in O(s + nK).

    Each triplet (i, j, w) adds w to Z(i, label_j); under the symmetric
    "once" convention it also adds w to Z(j, label_i), except for self
    loops.  Unknown labels land in a scratch column that is dropped, which
    keeps every pass over the triplets mask-free.
    """
    graph, lv, counts = _prepare(graph, labels)
    if not graph.is_sparse:
        raise TypeError("encode_sparse needs triplet storage")
    n, K1 = graph.n, lv.K + 1
    r, c, w = graph.triplets()
    loops = r == c
    has_loops = bool(loops.any())
    if opts.zero_diagonal and has_loops:
        keep = ~loops
        r, c, w = r[keep], c[keep], w[keep]
        has_loops = False
    y = lv.labels
    z = np.bincount(r * K1 + y[c], weights=w, minlength=n * K1).astype(float, copy=False)
    if graph.symmetric and graph.convention == "once":
        wm = np.where(r == c, 0.0, w) if has_loops else w
        z += np.bincount(c * K1 + y[r], weights=wm, minlength=n * K1)
    z = np.ascontiguousarray(z.reshape(n, K1)[:, 1:])
    return _finish(z, counts, opts)


def encode(graph, labels, opts: EncodeOptions = DEFAULT_OPTIONS) -> EncoderEmbedding:
    """Dispatch to the dense or sparse path according to the graph storage."""
    if isinstance(graph, GeneralGraph) and graph.is_sparse:
        return encode_sparse(graph, labels, opts)
    return encode_dense(graph, labels, opts)


def encode_oracle(graph, labels, opts: EncodeOptions = DEFAULT_OPTIONS) -> EncoderEmbedding:
    """Reference implementation: the defining sum, evaluated with Python loops."""
    graph, lv, counts = _prepare(graph, labels)
    a = graph.to_array()
    n, K = graph.n, lv.K
    y = lv.labels.tolist()
    z = np.zeros((n, K))
    for i in range(n):
        for k in range(1, K + 1):
            total = 0.0
            for j in range(n):
                if y[j] == k and not (opts.zero_diagonal and i == j):
                    total += a[i, j]
            z[i, k - 1] = total / counts[k - 1]
    if opts.normalize:
        for i in range(n):
            norm = float(np.sqrt(sum(v * v for v in z[i])))
            if norm > 0:
                z[i] = z[i] / norm
    return EncoderEmbedding(z, normalized=opts.normalize, counts=counts)
