"""Error-versus-n curves and embedding point clouds for the simulation studies.

``fig1-gauss``  Gaussian mixture -> Euclidean distance -> distance-to-kernel
``fig1-wsbm``   weighted SBM with Uniform(0, 10) edge weights
``fig2``        Gaussian mixture with K=4 under three pairwise functions
"""
from __future__ import annotations

import numpy as np

from .encoder import DEFAULT_OPTIONS, EncodeOptions, encode
from .evaluation import cv_error, kfold_split
from .models import knn_predict_many, lda_fit
from .pairwise import KernelSpec, pairwise_graph
from .synth import GaussianMixSpec, SbmSpec, gen_gaussian_mixture, gen_weighted_sbm

SCENARIOS = ("fig1-gauss", "fig1-wsbm", "fig2")

DIST_KERNEL = KernelSpec("distance-to-kernel")
FIG2_METRICS = {
    "euclidean": DIST_KERNEL,
    "spearman": KernelSpec("spearman"),
    "inner": KernelSpec("inner"),
}


def raw_cv_error(features, labels, plan, classifier="lda", k=5) -> float:
    """CV error of a classifier applied directly to feature rows."""
    y = labels.labels
    errs = []
    for f in range(1, plan.folds + 1):
        te = plan.test_mask(f)
        tr = ~te & (y > 0)
        if classifier == "lda":
            pred = lda_fit(features[tr], y[tr], n_classes=labels.K).predict(features[te])
        else:
            pred = knn_predict_many(features[tr], y[tr], features[te], k=k)
        errs.append(np.mean(pred != y[te]))
    return float(np.mean(errs))


def _replicate(scenario, n, seed, r, folds, opts, knn_k):
    """Per-method CV errors for one replicate at size n."""
    plan_seed = seed * 1_000_003 + r
    out = {}
    if scenario == "fig1-wsbm":
        g, y = gen_weighted_sbm(n, SbmSpec(weight_max=10.0), seed=seed, index=r)
        plan = kfold_split(y, folds, plan_seed)
        out["encoder-lda"] = cv_error(g, y, plan, "lda", opts=opts).mean
        out[f"encoder-{knn_k}nn"] = cv_error(g, y, plan, "knn", k=knn_k, opts=opts).mean
        return out
    if scenario == "fig1-gauss":
        x, y = gen_gaussian_mixture(n, GaussianMixSpec(), seed=seed, index=r)
        g = pairwise_graph(x, DIST_KERNEL)
        plan = kfold_split(y, folds, plan_seed)
        out["encoder-lda"] = cv_error(g, y, plan, "lda", opts=opts).mean
        out[f"encoder-{knn_k}nn"] = cv_error(g, y, plan, "knn", k=knn_k, opts=opts).mean
        out["raw-lda"] = raw_cv_error(x, y, plan, "lda")
        out[f"raw-{knn_k}nn"] = raw_cv_error(x, y, plan, "knn", knn_k)
        return out
    if scenario == "fig2":
        x, y = gen_gaussian_mixture(n, GaussianMixSpec(K=4), seed=seed, index=r)
        plan = kfold_split(y, folds, plan_seed)
        for name, spec in FIG2_METRICS.items():
            g = pairwise_graph(x, spec)
            out[f"encoder-lda-{name}"] = cv_error(g, y, plan, "lda", opts=opts).mean
        return out
    raise ValueError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")


def error_curve(scenario: str, sizes, reps: int, seed: int, folds: int = 5,
                opts: EncodeOptions = DEFAULT_OPTIONS, knn_k: int = 5):
    """Rows ``(n, mean_error, std, method)``; std is across replicates."""
    rows = []
    for n in sizes:
        per_method = {}
        for r in range(reps):
            for method, err in _replicate(scenario, int(n), seed, r, folds, opts, knn_k).items():
                per_method.setdefault(method, []).append(err)
        for method, errs in per_method.items():
            e = np.array(errs)
            rows.append((int(n), float(e.mean()), float(e.std()), method))
    return rows


def point_cloud(scenario: str, n: int, seed: int, opts: EncodeOptions = DEFAULT_OPTIONS):
    """Header and rows for a plot-ready embedding table at size n."""
    if scenario == "fig1-wsbm":
        g, y = gen_weighted_sbm(n, SbmSpec(weight_max=10.0), seed=seed, index=0)
        z = encode(g, y, opts).values
        header = ["vertex", "label", "z1", "z2", "z3"]
        return header, [[i + 1, int(y.labels[i]), *z[i]] for i in range(n)]
    if scenario == "fig1-gauss":
        x, y = gen_gaussian_mixture(n, GaussianMixSpec(), seed=seed, index=0)
        z = encode(pairwise_graph(x, DIST_KERNEL), y, opts).values
        header = ["vertex", "label", "x1", "x2", "x3", "z1", "z2", "z3"]
        return header, [[i + 1, int(y.labels[i]), *x[i, :3], *z[i]] for i in range(n)]
    if scenario == "fig2":
        x, y = gen_gaussian_mixture(n, GaussianMixSpec(K=4), seed=seed, index=0)
        header = ["metric", "vertex", "label", "z1", "z2", "z3", "z4"]
        rows = []
        for name, spec in FIG2_METRICS.items():
            z = encode(pairwise_graph(x, spec), y, opts).values
            rows.extend([name, i + 1, int(y.labels[i]), *z[i]] for i in range(n))
        return header, rows
    raise ValueError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")
