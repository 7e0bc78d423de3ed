"""Core value types: graphs, label vectors and embeddings.

A :class:`GeneralGraph` is any n x n real pairwise matrix (binary or
weighted adjacency, distance matrix, kernel matrix), stored either densely
or as a list of (i, j, w) triplets.  Indices are 0-based in memory; the
file readers in :mod:`graphencoder.io` convert from 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

SYMMETRY_ATOL = 1e-12

# Sparse storage conventions for symmetric graphs.
#   "once": each undirected edge appears once and is read both ways
#   "both": both (i, j) and (j, i) are stored explicitly
CONVENTIONS = ("once", "both")


def _frozen(a):
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GeneralGraph:
    """An n-vertex general graph in dense or sparse-triplet storage.

    Build instances with :meth:`from_dense` or :meth:`from_triplets`; the
    constructors validate and freeze the arrays.
    """

    n: int
    dense: Optional[np.ndarray] = None
    rows: Optional[np.ndarray] = None
    cols: Optional[np.ndarray] = None
    weights: Optional[np.ndarray] = None
    symmetric: bool = False
    convention: str = "once"

    @property
    def is_sparse(self) -> bool:
        return self.dense is None

    @property
    def nnz(self) -> int:
        """Number of stored triplets (sparse) or nonzero entries (dense)."""
        if self.is_sparse:
            return int(self.rows.size)
        return int(np.count_nonzero(self.dense))

    @classmethod
    def from_dense(cls, matrix, symmetric: Optional[bool] = None) -> "GeneralGraph":
        """Wrap an n x n matrix.

        If ``symmetric`` is None the flag is detected; if True it is checked.
        """
        a = np.asarray(matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"dense graph must be square, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("dense graph has non-finite entries")
        is_sym = bool(np.allclose(a, a.T, rtol=0.0, atol=SYMMETRY_ATOL))
        if symmetric is None:
            symmetric = is_sym
        elif symmetric and not is_sym:
            raise ValueError("matrix flagged symmetric but A(i,j) != A(j,i)")
        return cls(n=a.shape[0], dense=_frozen(a), symmetric=bool(symmetric))

    @classmethod
    def from_triplets(
        cls,
        n: int,
        rows,
        cols,
        weights=None,
        symmetric: bool = True,
        convention: str = "once",
        one_based: bool = False,
    ) -> "GeneralGraph":
        """Wrap a triplet list ``(rows[e], cols[e], weights[e])``.

        Missing ``weights`` means a binary graph (all ones).  Duplicate
        triplets are kept and summed wherever the graph is consumed.
        """
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
        r = np.asarray(rows, dtype=np.int64).reshape(-1)
        c = np.asarray(cols, dtype=np.int64).reshape(-1)
        if r.shape != c.shape:
            raise ValueError("rows and cols differ in length")
        w = np.ones(r.size) if weights is None else np.asarray(weights, dtype=float).reshape(-1)
        if w.shape != r.shape:
            raise ValueError("weights and rows differ in length")
        if one_based:
            r = r - 1
            c = c - 1
        bad = (r < 0) | (r >= n) | (c < 0) | (c >= n)
        if bad.any():
            e = int(np.flatnonzero(bad)[0])
            raise IndexError(f"triplet {e} has index out of range for n={n}")
        if not np.all(np.isfinite(w)):
            raise ValueError("triplet weights must be finite")
        return cls(
            n=int(n),
            rows=_frozen(r),
            cols=_frozen(c),
            weights=_frozen(w),
            symmetric=bool(symmetric),
            convention=convention,
        )

    def triplets(self):
        """Return ``(rows, cols, weights)`` as stored (sparse graphs only)."""
        if not self.is_sparse:
            raise TypeError("graph has dense storage; call sparsify first")
        return self.rows, self.cols, self.weights

    def to_array(self) -> np.ndarray:
        """The dense n x n matrix (a new writable array)."""
        if self.is_sparse:
            return np.array(densify(self).dense)
        return np.array(self.dense)


@dataclass(frozen=True, eq=False)
class LabelVector:
    """Length-n labels in {0, ..., K}; 0 marks an unknown label."""

    labels: np.ndarray
    K: int

    def __post_init__(self):
        y = np.asarray(self.labels)
        if y.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        if y.size and not np.issubdtype(y.dtype, np.integer):
            if not np.all(np.equal(np.mod(y, 1), 0)):
                raise ValueError("labels must be integers")
        y = y.astype(np.int64)
        if self.K < 1:
            raise ValueError("class count K must be at least 1")
        if y.size and (y.min() < 0 or y.max() > self.K):
            raise ValueError(f"labels must lie in 0..{self.K}")
        object.__setattr__(self, "labels", _frozen(y))

    @property
    def n(self) -> int:
        return int(self.labels.size)

    @property
    def known(self) -> np.ndarray:
        """Boolean mask of vertices with a known (nonzero) label."""
        return self.labels > 0

    def masked(self, hide) -> "LabelVector":
        """Copy with the labels at ``hide`` (mask or indices) set to 0."""
        y = np.array(self.labels)
        y[hide] = 0
        return LabelVector(y, self.K)

    def __len__(self):
        return self.n


def as_labels(labels, K: Optional[int] = None) -> LabelVector:
    """Coerce an array-like (or LabelVector) into a LabelVector.

    ``K`` defaults to the largest label present.
    """
    if isinstance(labels, LabelVector):
        if K is None or K == labels.K:
            return labels
        return LabelVector(labels.labels, K)
    y = np.asarray(labels)
    if K is None:
        K = int(y.max()) if y.size else 1
    return LabelVector(y, max(int(K), 1))


@dataclass(frozen=True, eq=False)
class EncoderEmbedding:
    """An n x K embedding; ``normalized`` records whether rows were scaled."""

    values: np.ndarray
    normalized: bool = False
    counts: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        z = np.asarray(self.values, dtype=float)
        if z.ndim != 2:
            raise ValueError("embedding must be 2-D")
        if not np.all(np.isfinite(z)):
            raise ValueError("embedding has non-finite entries")
        object.__setattr__(self, "values", _frozen(z))

    @property
    def shape(self):
        return self.values.shape

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)


def class_counts(labels, K: Optional[int] = None) -> np.ndarray:
    """Number of vertices carrying each label 1..K; label 0 counts nowhere."""
    lv = as_labels(labels, K)
    return np.bincount(lv.labels, minlength=lv.K + 1)[1 : lv.K + 1].astype(np.int64)


def densify(graph: GeneralGraph) -> GeneralGraph:
    """Dense copy of a graph.  Duplicate triplets are summed in input order."""
    if not graph.is_sparse:
        return graph
    n = graph.n
    r, c, w = graph.triplets()
    a = np.zeros((n, n))
    np.add.at(a, (r, c), w)
    if graph.symmetric and graph.convention == "once":
        off = r != c
        np.add.at(a, (c[off], r[off]), w[off])
    return GeneralGraph(n=n, dense=_frozen(a), symmetric=graph.symmetric)


def sparsify(graph: GeneralGraph) -> GeneralGraph:
    """Triplet copy of a dense graph.

    Symmetric graphs keep the upper triangle (diagonal included) under the
    "once" convention; asymmetric graphs keep every nonzero entry.
    """
    if graph.is_sparse:
        return graph
    a = graph.dense
    if graph.symmetric:
        r, c = np.nonzero(np.triu(a))
    else:
        r, c = np.nonzero(a)
    return GeneralGraph.from_triplets(
        graph.n, r, c, a[r, c], symmetric=graph.symmetric, convention="once"
    )
