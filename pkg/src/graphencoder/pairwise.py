"""Pairwise functions that turn an n x p feature matrix into a general graph."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist
from scipy.stats import rankdata

from .graph import GeneralGraph

KINDS = ("euclidean", "inner", "cosine", "rbf", "spearman", "distance-to-kernel")


@dataclass(frozen=True)
class KernelSpec:
    """A named pairwise function.

    ``sigma`` is the RBF bandwidth.  ``base`` is the distance that the
    distance-to-kernel transform is applied to (euclidean by default).
    """

    kind: str = "euclidean"
    sigma: float = 1.0
    base: Optional["KernelSpec"] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kernel kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "rbf" and not self.sigma > 0:
            raise ValueError("rbf kernel needs sigma > 0")
        if self.base is not None and self.kind != "distance-to-kernel":
            raise ValueError("only distance-to-kernel takes a base spec")
        if self.base is not None and self.base.kind == "distance-to-kernel":
            raise ValueError("distance-to-kernel cannot be nested")

    @property
    def base_spec(self) -> "KernelSpec":
        return self.base if self.base is not None else KernelSpec("euclidean")


def _check_features(features) -> np.ndarray:
    x = np.asarray(features, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise ValueError("features must be an n x p matrix")
    if not np.all(np.isfinite(x)):
        raise ValueError("features have non-finite entries")
    return x


def _pearson(x, u):
    xc = x - x.mean()
    uc = u - u.mean()
    den = np.sqrt(np.dot(xc, xc) * np.dot(uc, uc))
    if den == 0:
        return 0.0
    return float(np.dot(xc, uc) / den)


def kappa(spec: KernelSpec, x, u) -> float:
    """Evaluate the pairwise function on two feature vectors."""
    x = np.asarray(x, dtype=float).reshape(-1)
    u = np.asarray(u, dtype=float).reshape(-1)
    if x.shape != u.shape:
        raise ValueError(f"dimension mismatch: {x.size} vs {u.size}")
    kind = spec.kind
    if kind == "euclidean":
        return float(np.sqrt(np.sum((x - u) ** 2)))
    if kind == "inner":
        return float(np.dot(x, u))
    if kind == "cosine":
        den = np.linalg.norm(x) * np.linalg.norm(u)
        return 0.0 if den == 0 else float(np.dot(x, u) / den)
    if kind == "rbf":
        return float(np.exp(-np.sum((x - u) ** 2) / (2.0 * spec.sigma**2)))
    if kind == "spearman":
        return _pearson(rankdata(x), rankdata(u))
    raise ValueError("distance-to-kernel is defined on whole matrices; use pairwise_graph")


def _row_unit(x):
    norms = np.linalg.norm(x, axis=1, keepdims=True)
    return np.divide(x, norms, out=np.zeros_like(x), where=norms > 0)


def pairwise_matrix(features, spec: KernelSpec) -> np.ndarray:
    """The n x n matrix of ``kappa(spec, row_i, row_j)``, exactly symmetric."""
    x = _check_features(features)
    kind = spec.kind
    if kind == "euclidean":
        m = cdist(x, x, "euclidean")
    elif kind == "inner":
        m = x @ x.T
    elif kind == "cosine":
        xu = _row_unit(x)
        m = np.clip(xu @ xu.T, -1.0, 1.0)
        idx = np.flatnonzero(np.linalg.norm(x, axis=1) > 0)
        m[idx, idx] = 1.0
    elif kind == "rbf":
        m = np.exp(-cdist(x, x, "sqeuclidean") / (2.0 * spec.sigma**2))
    elif kind == "spearman":
        ranks = rankdata(x, axis=1)
        ranks = ranks - ranks.mean(axis=1, keepdims=True)
        ru = _row_unit(ranks)
        m = np.clip(ru @ ru.T, -1.0, 1.0)
        idx = np.flatnonzero(np.linalg.norm(ranks, axis=1) > 0)
        m[idx, idx] = 1.0
    else:
        d = pairwise_matrix(x, spec.base_spec)
        dmax = d.max()
        if dmax == 0:
            return np.ones_like(d)
        m = 1.0 - d / dmax
    # Mirror the upper triangle so the result is bit-for-bit symmetric.
    iu = np.triu_indices(m.shape[0], 1)
    m[(iu[1], iu[0])] = m[iu]
    return m


def pairwise_graph(features, spec: KernelSpec) -> GeneralGraph:
    """Dense symmetric general graph built from feature rows via ``spec``."""
    x = _check_features(features)
    if x.shape[0] < 2:
        raise ValueError("need at least two feature rows")
    return GeneralGraph.from_dense(pairwise_matrix(x, spec), symmetric=True)
