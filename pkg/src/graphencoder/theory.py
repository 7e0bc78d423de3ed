"""Monte Carlo checks of the embedding's large-sample behaviour.

Under a (weighted) SBM the per-class kernel expectation is constant, so the
limits are known in closed form: for a vertex of class y,

    E[Z_k]   = B(y, k) * E[Q]
    Var[Z_k] = (B(y, k) * E[Q^2] - (B(y, k) * E[Q])^2) / m_k

with distinct coordinates uncorrelated.  The reports below simulate
replicates, pool the raw (unnormalized) embeddings by true class and compare
against those limits.

Class sizes are held fixed across replicates by default (``fixed_labels``),
matching the conditioning on a fixed label vector.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .encoder import EncodeOptions, encode
from .evaluation import fold_embeddings, kfold_split
from .models import lda_fit
from .synth import SbmSpec, balanced_labels, gen_labels, gen_weighted_sbm

RAW = EncodeOptions(normalize=False)

# Calibration constants for the normality diagnostics (not derived values).
SKEW_TOL = 0.2
KURT_TOL = 0.3
CORR_TOL = 0.1


def _check_spec(spec):
    if not isinstance(spec, SbmSpec):
        raise TypeError("theory checks need an SbmSpec")
    if spec.degree_params is not None:
        raise ValueError("degree-corrected models do not have a constant per-class limit")
    return spec


def simulate(spec: SbmSpec, n: int, reps: int, seed: int, opts: EncodeOptions = RAW, fixed_labels: bool = True):
    """Yield ``(Z, labels)`` for each replicate; labels are all known."""
    _check_spec(spec)
    for r in range(reps):
        if fixed_labels:
            lv = balanced_labels(n, spec.priors, seed, index=r)
        else:
            lv = gen_labels(n, spec.priors, seed, index=r)
        g, lv = gen_weighted_sbm(n, spec, seed=seed, index=r, labels=lv)
        yield encode(g, lv, opts).values, lv.labels


def _pool(spec, n, reps, seed, opts, fixed_labels):
    per_class = [[] for _ in range(spec.K)]
    per_rep = []
    for z, y in simulate(spec, n, reps, seed, opts, fixed_labels):
        groups = [z[y == k + 1] for k in range(spec.K)]
        per_rep.append(groups)
        for k, zk in enumerate(groups):
            per_class[k].append(zk)
    pooled = [np.concatenate(c) if c else np.zeros((0, spec.K)) for c in per_class]
    return pooled, per_rep


def expected_mean(spec: SbmSpec) -> np.ndarray:
    """K x K matrix; row y is the limiting mean embedding of class y."""
    return spec.kernel_mean()


def expected_variance(spec: SbmSpec, class_sizes) -> np.ndarray:
    """K x K matrix of Var[Z_k | class y] for the given per-class label counts."""
    m = np.asarray(class_sizes, dtype=float)
    return spec.kernel_var() / m[None, :]


@dataclass
class MomentReport:
    n: int
    reps: int
    means: np.ndarray  # K x K, row = class
    covariances: np.ndarray  # K x K x K
    class_sizes: np.ndarray  # pooled sample count per class
    expected_means: np.ndarray

    def mean_error(self) -> float:
        return float(np.max(np.abs(self.means - self.expected_means)))

    def correlations(self) -> np.ndarray:
        sd = np.sqrt(np.einsum("kii->ki", self.covariances))
        with np.errstate(invalid="ignore", divide="ignore"):
            corr = self.covariances / (sd[:, :, None] * sd[:, None, :])
        return np.nan_to_num(corr)

    def as_dict(self):
        return {
            "n": self.n,
            "reps": self.reps,
            "means": self.means.tolist(),
            "expected_means": self.expected_means.tolist(),
            "max_abs_mean_error": self.mean_error(),
            "covariances": self.covariances.tolist(),
            "class_sizes": self.class_sizes.tolist(),
        }


def moment_report(spec: SbmSpec, n: int, reps: int, seed: int = 0, opts: EncodeOptions = RAW,
                  fixed_labels: bool = True) -> MomentReport:
    """Empirical per-class mean and covariance of the embedding."""
    if reps < 2:
        raise ValueError("need at least 2 replicates")
    pooled, _ = _pool(spec, n, reps, seed, opts, fixed_labels)
    K = spec.K
    means = np.zeros((K, K))
    covs = np.zeros((K, K, K))
    for k, zk in enumerate(pooled):
        if zk.shape[0] == 0:
            means[k] = np.nan
            covs[k] = np.nan
            continue
        means[k] = zk.mean(axis=0)
        c = zk - means[k]
        covs[k] = c.T @ c / max(zk.shape[0] - 1, 1)
    return MomentReport(
        n=n,
        reps=reps,
        means=means,
        covariances=0.5 * (covs + covs.transpose(0, 2, 1)),
        class_sizes=np.array([zk.shape[0] for zk in pooled]),
        expected_means=expected_mean(spec),
    )


@dataclass
class ProbeReport:
    """Moments of one pinned vertex across replicates (conditioning on X=x)."""

    probe_class: int
    mean: np.ndarray
    variance: np.ndarray
    expected_mean: np.ndarray
    expected_variance: np.ndarray


def probe_moments(spec: SbmSpec, n: int, reps: int, seed: int = 0, probe_class: int = 1) -> ProbeReport:
    """Track vertex 0, pinned to ``probe_class``, while the rest of each graph is resampled."""
    _check_spec(spec)
    base = balanced_labels(n, spec.priors, seed)
    y = np.array(base.labels)
    # pin vertex 0 to the probe class without changing the class sizes
    swap = int(np.flatnonzero(y == probe_class)[0])
    y[0], y[swap] = y[swap], y[0]
    rows = []
    for r in range(reps):
        g, lv = gen_weighted_sbm(n, spec, seed=seed, index=r, labels=y)
        rows.append(encode(g, lv, RAW).values[0])
    rows = np.array(rows)
    counts = np.bincount(y, minlength=spec.K + 1)[1:].astype(float)
    # vertex 0 counts in its own class's n_k but has A(0,0)=0
    exp_mean = spec.kernel_mean()[probe_class - 1].copy()
    exp_mean[probe_class - 1] *= (counts[probe_class - 1] - 1) / counts[probe_class - 1]
    own = np.full(spec.K, 0.0)
    own[probe_class - 1] = 1.0
    exp_var = spec.kernel_var()[probe_class - 1] * (counts - own) / counts**2
    return ProbeReport(
        probe_class=probe_class,
        mean=rows.mean(axis=0),
        variance=rows.var(axis=0, ddof=1),
        expected_mean=exp_mean,
        expected_variance=exp_var,
    )


@dataclass
class ScalingReport:
    sizes: list
    variances: np.ndarray  # len(sizes) x K x K, [size, class, dim]
    expected: np.ndarray  # same shape, closed form
    ratios: np.ndarray  # len(sizes)-1 x K x K, var[i] / var[i+1]
    size_ratios: np.ndarray

    def as_dict(self):
        return {
            "sizes": list(self.sizes),
            "variances": self.variances.tolist(),
            "expected": self.expected.tolist(),
            "ratios": np.nan_to_num(self.ratios, nan=-1.0).tolist(),
            "size_ratios": self.size_ratios.tolist(),
        }


def variance_scaling(spec: SbmSpec, sizes, reps: int, seed: int = 0, fixed_labels: bool = True) -> ScalingReport:
    """Per-class, per-dimension embedding variance at each graph size."""
    sizes = [int(s) for s in sizes]
    if len(sizes) < 2:
        raise ValueError("need at least two sizes")
    K = spec.K
    var = np.zeros((len(sizes), K, K))
    exp = np.zeros_like(var)
    for s, n in enumerate(sizes):
        pooled, per_rep = _pool(spec, n, reps, seed + s, RAW, fixed_labels)
        for k, zk in enumerate(pooled):
            var[s, k] = zk.var(axis=0, ddof=1) if zk.shape[0] > 1 else np.nan
        m = np.array([[g.shape[0] for g in groups] for groups in per_rep], dtype=float).mean(axis=0)
        exp[s] = expected_variance(spec, m)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratios = var[:-1] / var[1:]
    return ScalingReport(
        sizes=sizes,
        variances=var,
        expected=exp,
        ratios=ratios,
        size_ratios=np.array(sizes[1:], dtype=float) / np.array(sizes[:-1], dtype=float),
    )


def _max_offdiag_corr(z):
    if z.shape[1] < 2 or z.shape[0] < 3:
        return 0.0
    sd = z.std(axis=0)
    keep = sd > 0
    if keep.sum() < 2:
        return 0.0
    c = np.corrcoef(z[:, keep], rowvar=False)
    np.fill_diagonal(c, 0.0)
    return float(np.max(np.abs(c)))


@dataclass
class CrossCovReport:
    pooled: np.ndarray  # per class, max |corr| over distinct dimension pairs
    per_rep: np.ndarray  # reps x K

    @property
    def per_rep_mean(self) -> np.ndarray:
        return self.per_rep.mean(axis=0)


def cross_covariance_check(spec: SbmSpec, n: int, reps: int, seed: int = 0,
                           fixed_labels: bool = True) -> CrossCovReport:
    """Largest within-class correlation between distinct embedding dimensions."""
    pooled, per_rep = _pool(spec, n, reps, seed, RAW, fixed_labels)
    return CrossCovReport(
        pooled=np.array([_max_offdiag_corr(z) for z in pooled]),
        per_rep=np.array([[_max_offdiag_corr(z) for z in groups] for groups in per_rep]),
    )


@dataclass
class NormalityReport:
    n: int
    reps: int
    skewness: np.ndarray  # K x K [class, dim]; nan where constant
    excess_kurtosis: np.ndarray
    max_offdiag_corr: np.ndarray  # per class
    ks: np.ndarray  # pooled KS statistic, K x K
    ks_per_rep: np.ndarray  # mean over replicates of per-replicate KS, K x K
    constant: np.ndarray  # K x K bool
    thresholds: dict = field(default_factory=lambda: {"skew": SKEW_TOL, "kurtosis": KURT_TOL})

    def mean_ks(self) -> float:
        return float(np.nanmean(self.ks_per_rep))

    def passes(self) -> bool:
        ok = ~self.constant
        return bool(
            np.all(np.abs(self.skewness[ok]) <= self.thresholds["skew"])
            and np.all(np.abs(self.excess_kurtosis[ok]) <= self.thresholds["kurtosis"])
        )

    def as_dict(self):
        def clean(a):
            return np.where(np.isnan(a), None, a).tolist()

        return {
            "n": self.n,
            "reps": self.reps,
            "skewness": clean(self.skewness),
            "excess_kurtosis": clean(self.excess_kurtosis),
            "max_offdiag_corr": self.max_offdiag_corr.tolist(),
            "ks": clean(self.ks),
            "ks_per_rep": clean(self.ks_per_rep),
            "mean_ks": self.mean_ks(),
            "constant": self.constant.tolist(),
            "thresholds": self.thresholds,
            "passes": self.passes(),
        }


def _ks_standardized(x):
    sd = x.std()
    if x.size < 2 or sd == 0:
        return np.nan
    return float(stats.kstest((x - x.mean()) / sd, "norm").statistic)


def normality_report(spec: SbmSpec, n: int, reps: int, seed: int = 0, fixed_labels: bool = True) -> NormalityReport:
    """Shape diagnostics of standardized per-class coordinates."""
    pooled, per_rep = _pool(spec, n, reps, seed, RAW, fixed_labels)
    K = spec.K
    skew = np.full((K, K), np.nan)
    kurt = np.full((K, K), np.nan)
    ks = np.full((K, K), np.nan)
    const = np.zeros((K, K), dtype=bool)
    for y, z in enumerate(pooled):
        for k in range(K):
            col = z[:, k]
            if col.size < 2 or np.ptp(col) == 0:
                const[y, k] = True
                continue
            skew[y, k] = stats.skew(col)
            kurt[y, k] = stats.kurtosis(col, fisher=True)
            ks[y, k] = _ks_standardized(col)
    ks_rep = np.full((len(per_rep), K, K), np.nan)
    for r, groups in enumerate(per_rep):
        for y, z in enumerate(groups):
            for k in range(K):
                if not const[y, k]:
                    ks_rep[r, y, k] = _ks_standardized(z[:, k])
    with np.errstate(invalid="ignore"):
        ks_mean = np.where(const, np.nan, np.nanmean(np.where(const[None], 0.0, ks_rep), axis=0))
    return NormalityReport(
        n=n,
        reps=reps,
        skewness=skew,
        excess_kurtosis=kurt,
        max_offdiag_corr=np.array([_max_offdiag_corr(z) for z in pooled]),
        ks=ks,
        ks_per_rep=ks_mean,
        constant=const,
    )


def plugin_predict(spec: SbmSpec, z, train_counts) -> np.ndarray:
    """Bayes rule under the limiting per-class Gaussian with known parameters."""
    z = np.atleast_2d(np.asarray(z, dtype=float))
    mu = expected_mean(spec)
    var = expected_variance(spec, train_counts)
    diff = z[:, None, :] - mu[None, :, :]  # rows x class x dim
    with np.errstate(divide="ignore", invalid="ignore"):
        ll = -0.5 * np.log(2 * np.pi * var)[None] - diff**2 / (2 * var[None])
    point = var[None] == 0
    hit = np.abs(diff) <= 1e-12
    ll = np.where(point & hit, 0.0, ll)
    ll = np.where(point & ~hit, -np.inf, ll)
    with np.errstate(divide="ignore"):
        score = ll.sum(axis=2) + np.log(spec.priors)[None]
    return np.argmax(score, axis=1) + 1


@dataclass
class BayesGapReport:
    n: int
    reps: int
    lda_error: float
    plugin_error: float
    gap: float
    lda_per_rep: np.ndarray
    plugin_per_rep: np.ndarray

    def as_dict(self):
        return {
            "n": self.n,
            "reps": self.reps,
            "lda_error": self.lda_error,
            "plugin_error": self.plugin_error,
            "gap": self.gap,
            "lda_per_rep": self.lda_per_rep.tolist(),
            "plugin_per_rep": self.plugin_per_rep.tolist(),
        }


def bayes_gap(spec: SbmSpec, n: int, reps: int, seed: int = 0, folds: int = 5,
              opts: EncodeOptions = RAW, fixed_labels: bool = True) -> BayesGapReport:
    """Cross-validated LDA error against the known-parameter plug-in rule.

    Both classifiers see the same masked embeddings of the test rows.  The
    plug-in rule uses the closed-form class means and per-coordinate
    variances (with the training class counts of each fold).
    """
    _check_spec(spec)
    lda_err, plug_err = [], []
    for r in range(reps):
        lv = balanced_labels(n, spec.priors, seed, index=r) if fixed_labels else gen_labels(n, spec.priors, seed, index=r)
        g, lv = gen_weighted_sbm(n, spec, seed=seed, index=r, labels=lv)
        plan = kfold_split(lv, folds, seed=seed * 7919 + r)
        wrong_lda = wrong_plug = total = 0
        for _, tr, te, z in fold_embeddings(g, lv, plan, opts):
            ytr, yte = lv.labels[tr], lv.labels[te]
            counts = np.bincount(ytr, minlength=spec.K + 1)[1:]
            wrong_lda += int(np.sum(lda_fit(z[tr], ytr, n_classes=spec.K).predict(z[te]) != yte))
            wrong_plug += int(np.sum(plugin_predict(spec, z[te], counts) != yte))
            total += te.size
        lda_err.append(wrong_lda / total)
        plug_err.append(wrong_plug / total)
    lda_err, plug_err = np.array(lda_err), np.array(plug_err)
    return BayesGapReport(
        n=n,
        reps=reps,
        lda_error=float(lda_err.mean()),
        plugin_error=float(plug_err.mean()),
        gap=float(lda_err.mean() - plug_err.mean()),
        lda_per_rep=lda_err,
        plugin_per_rep=plug_err,
    )
