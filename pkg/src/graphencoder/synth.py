"""Seeded generators for the graph and mixture models.

All graphs are undirected with zero diagonal: pairs i<j are sampled and
mirrored.  Randomness is drawn from purpose-specific substreams (labels,
edges, weights, features) so that, for example, the binary and weighted
SBM with the same seed share the same edge set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph import GeneralGraph, LabelVector
from .rng import substream

# Block matrix of the weighted-SBM simulation: 0.2 within, 0.1 between.
DEFAULT_B = np.array(
    [
        [0.2, 0.1, 0.1],
        [0.1, 0.2, 0.1],
        [0.1, 0.1, 0.2],
    ]
)

_ROW_CHUNK = 1024


def _check_priors(priors):
    pi = np.asarray(priors, dtype=float).reshape(-1)
    if pi.size == 0 or np.any(pi < 0) or abs(pi.sum() - 1.0) > 1e-9:
        raise ValueError("priors must be nonnegative and sum to 1")
    return pi


@dataclass(frozen=True, eq=False)
class SbmSpec:
    """Block model parameters.

    ``weight_max`` > 0 multiplies each realized edge by Uniform(0, weight_max);
    ``degree_params`` (length n) turns the SBM into a degree-corrected SBM.
    """

    B: np.ndarray = field(default_factory=lambda: DEFAULT_B.copy())
    priors: Optional[np.ndarray] = None
    weight_max: float = 0.0
    degree_params: Optional[np.ndarray] = None

    def __post_init__(self):
        b = np.asarray(self.B, dtype=float)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise ValueError("B must be square")
        if np.any(b < 0) or np.any(b > 1):
            raise ValueError("B entries must lie in [0, 1]")
        if not np.allclose(b, b.T, rtol=0, atol=1e-12):
            raise ValueError("B must be symmetric for an undirected graph")
        object.__setattr__(self, "B", b)
        pri = np.full(b.shape[0], 1.0 / b.shape[0]) if self.priors is None else self.priors
        pri = _check_priors(pri)
        if pri.size != b.shape[0]:
            raise ValueError("priors length must match B")
        object.__setattr__(self, "priors", pri)
        if self.weight_max < 0:
            raise ValueError("weight_max must be nonnegative")
        if self.degree_params is not None:
            theta = np.asarray(self.degree_params, dtype=float).reshape(-1)
            if np.any(theta < 0):
                raise ValueError("degree parameters must be nonnegative")
            object.__setattr__(self, "degree_params", theta)

    @property
    def K(self) -> int:
        return self.B.shape[0]

    @property
    def weight_mean(self) -> float:
        """E[Q]: mean edge weight (1 when unweighted)."""
        return self.weight_max / 2.0 if self.weight_max > 0 else 1.0

    @property
    def weight_second_moment(self) -> float:
        """E[Q^2] (1 when unweighted)."""
        return self.weight_max**2 / 3.0 if self.weight_max > 0 else 1.0

    def kernel_mean(self) -> np.ndarray:
        """E[A(i,j) | y_i, y_j] as a K x K matrix."""
        return self.B * self.weight_mean

    def kernel_var(self) -> np.ndarray:
        """Var[A(i,j) | y_i, y_j] as a K x K matrix."""
        return self.B * self.weight_second_moment - (self.B * self.weight_mean) ** 2


@dataclass(frozen=True, eq=False)
class GaussianMixSpec:
    """Class k shifts coordinate k; all other coordinates are shared noise."""

    p: int = 100
    K: int = 3
    signal_mean: float = 3.0
    signal_sd: float = 1.0
    noise_mean: float = 1.0
    noise_sd: float = 0.5
    priors: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.signal_sd < 0 or self.noise_sd < 0:
            raise ValueError("standard deviations must be nonnegative")
        if self.K > self.p:
            raise ValueError(f"K={self.K} classes need at least K dimensions (p={self.p})")
        pri = np.full(self.K, 1.0 / self.K) if self.priors is None else self.priors
        pri = _check_priors(pri)
        if pri.size != self.K:
            raise ValueError("priors length must match K")
        object.__setattr__(self, "priors", pri)


def gen_labels(n: int, priors, seed, index: int = 0) -> LabelVector:
    """i.i.d. categorical labels in 1..K."""
    pi = _check_priors(priors)
    rng = substream(seed, "labels", index)
    y = rng.choice(pi.size, size=n, p=pi) + 1
    return LabelVector(y, pi.size)


def balanced_labels(n: int, priors, seed, index: int = 0) -> LabelVector:
    """Labels with fixed class sizes (largest-remainder rounding of n*priors), shuffled."""
    pi = _check_priors(priors)
    raw = n * pi
    counts = np.floor(raw).astype(np.int64)
    short = n - counts.sum()
    order = np.argsort(-(raw - counts), kind="stable")
    counts[order[:short]] += 1
    y = np.repeat(np.arange(1, pi.size + 1), counts)
    substream(seed, "labels", index).shuffle(y)
    return LabelVector(y, pi.size)


def _resolve_labels(n, priors, seed, index, labels):
    if labels is None:
        return gen_labels(n, priors, seed, index)
    lv = labels if isinstance(labels, LabelVector) else LabelVector(np.asarray(labels), len(priors))
    if lv.n != n:
        raise ValueError("labels length must equal n")
    return lv


def gen_gaussian_mixture(n: int, spec: GaussianMixSpec = GaussianMixSpec(), seed=0, index: int = 0, labels=None):
    """Features and labels: coordinate y_i ~ N(signal), others ~ N(noise)."""
    lv = _resolve_labels(n, spec.priors, seed, index, labels)
    rng = substream(seed, "features", index)
    x = spec.noise_mean + spec.noise_sd * rng.standard_normal((n, spec.p))
    sig = spec.signal_mean + spec.signal_sd * rng.standard_normal(n)
    x[np.arange(n), lv.labels - 1] = sig
    return x, lv


def _sample_symmetric(prob_fn, n, rng):
    """Bernoulli(prob) upper triangle, mirrored; sampled in fixed row chunks."""
    a = np.zeros((n, n))
    for i0 in range(0, n, _ROW_CHUNK):
        i1 = min(i0 + _ROW_CHUNK, n)
        u = rng.random((i1 - i0, n))
        a[i0:i1] = u < prob_fn(i0, i1)
    a = np.triu(a, 1)
    return a + a.T


def _block_graph(n, spec: SbmSpec, seed, index, labels, theta=None, weighted=False):
    lv = _resolve_labels(n, spec.priors, seed, index, labels)
    yi = lv.labels - 1
    b = spec.B
    if theta is not None:
        theta = np.asarray(theta, dtype=float).reshape(-1)
        if theta.size != n:
            raise ValueError("degree_params must have length n")

        def prob(i0, i1):
            return theta[i0:i1, None] * theta[None, :] * b[yi[i0:i1]][:, yi]

    else:

        def prob(i0, i1):
            return b[yi[i0:i1]][:, yi]

    a = _sample_symmetric(prob, n, substream(seed, "edges", index))
    if weighted and spec.weight_max > 0:
        q = spec.weight_max * substream(seed, "weights", index).random((n, n))
        q = np.triu(q, 1)
        a = a * (q + q.T)
    return GeneralGraph.from_dense(a, symmetric=True), lv


def gen_sbm(n: int, spec: SbmSpec = SbmSpec(), seed=0, index: int = 0, labels=None):
    """Binary SBM: A(i,j) ~ Bernoulli(B(y_i, y_j)) for i<j."""
    return _block_graph(n, spec, seed, index, labels)


def gen_weighted_sbm(n: int, spec: SbmSpec = SbmSpec(weight_max=10.0), seed=0, index: int = 0, labels=None):
    """SBM whose realized edges carry independent Uniform(0, weight_max) weights."""
    if spec.weight_max < 0:
        raise ValueError("weight_max must be nonnegative")
    return _block_graph(n, spec, seed, index, labels, weighted=True)


def gen_dcsbm(n: int, spec: SbmSpec, seed=0, index: int = 0, labels=None):
    """Degree-corrected SBM: A(i,j) ~ Bernoulli(theta_i theta_j B(y_i, y_j))."""
    if spec.degree_params is None:
        raise ValueError("degree-corrected SBM needs degree_params")
    theta = spec.degree_params
    if theta.size != n:
        raise ValueError("degree_params must have length n")
    lv = _resolve_labels(n, spec.priors, seed, index, labels)
    yi = lv.labels - 1
    # max over i != j of theta_i theta_j B(y_i, y_j), per block pair
    worst = 0.0
    for k in range(spec.K):
        tk = np.sort(theta[yi == k])[::-1]
        for l in range(spec.K):
            tl = np.sort(theta[yi == l])[::-1]
            if k == l:
                if tk.size < 2:
                    continue
                top = tk[0] * tk[1]
            else:
                if tk.size == 0 or tl.size == 0:
                    continue
                top = tk[0] * tl[0]
            worst = max(worst, top * spec.B[k, l])
    if worst > 1 + 1e-12:
        raise ValueError(f"edge probability {worst:.4g} exceeds 1")
    return _block_graph(n, spec, seed, index, lv, theta=theta, weighted=True)


def gen_rdpg(latent, seed=0, index: int = 0) -> GeneralGraph:
    """Random dot product graph: A(i,j) ~ Bernoulli(x_i . x_j)."""
    x = np.asarray(latent, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    p = x @ x.T
    off = ~np.eye(p.shape[0], dtype=bool)
    if np.any(p[off] < -1e-12) or np.any(p[off] > 1 + 1e-12):
        raise ValueError("latent inner products must lie in [0, 1]")
    p = np.clip(p, 0.0, 1.0)
    a = _sample_symmetric(lambda i0, i1: p[i0:i1], p.shape[0], substream(seed, "edges", index))
    return GeneralGraph.from_dense(a, symmetric=True)


def _row_start(a, m):
    return a * (2 * m - a - 1) // 2


def _decode_upper(t, m):
    """Row-major index t of the pair (a, b), a < b < m, back to (a, b)."""
    t = np.asarray(t, dtype=np.int64)
    if t.size and (t.min() < 0 or t.max() >= m * (m - 1) // 2):
        raise ValueError("pair index out of range")
    disc = (2.0 * m - 1.0) ** 2 - 8.0 * t
    a = np.floor(((2.0 * m - 1.0) - np.sqrt(disc)) / 2.0).astype(np.int64)
    a = np.clip(a, 0, max(m - 2, 0))
    # one-step corrections for rounding in the square root
    a = np.where(_row_start(a, m) > t, a - 1, a)
    a = np.where((a + 1 <= m - 2) & (_row_start(a + 1, m) <= t), a + 1, a)
    b = t - _row_start(a, m) + a + 1
    return a, b


def gen_sparse_sbm(n: int, spec: SbmSpec, seed=0, index: int = 0, labels=None):
    """SBM in triplet storage, sampled block pair by block pair.

    Cost is proportional to the number of edges, so large sparse graphs can
    be drawn without forming an n x n matrix.  Triplets come out in
    canonical order (i < j, sorted by row then column).  Weights follow
    ``weight_max`` as in :func:`gen_weighted_sbm`.
    """
    lv = _resolve_labels(n, spec.priors, seed, index, labels)
    rng = substream(seed, "sparse-edges", index)
    members = [np.flatnonzero(lv.labels == k + 1) for k in range(spec.K)]
    rows, cols = [], []
    for k in range(spec.K):
        mk = members[k]
        for l in range(k, spec.K):
            ml = members[l]
            pairs = mk.size * (mk.size - 1) // 2 if k == l else mk.size * ml.size
            if pairs == 0 or spec.B[k, l] == 0:
                continue
            m = rng.binomial(pairs, spec.B[k, l])
            t = rng.choice(pairs, size=m, replace=False)
            if k == l:
                a, b = _decode_upper(t, mk.size)
                rows.append(mk[a])
                cols.append(mk[b])
            else:
                rows.append(mk[t // ml.size])
                cols.append(ml[t % ml.size])
    r = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    c = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    r, c = np.minimum(r, c), np.maximum(r, c)
    order = np.argsort(r * n + c, kind="stable")
    r, c = r[order], c[order]
    w = None
    if spec.weight_max > 0:
        w = spec.weight_max * substream(seed, "sparse-weights", index).random(r.size)
    g = GeneralGraph.from_triplets(n, r, c, w, symmetric=True, convention="once")
    return g, lv
