"""Acceptance criteria, one test each.

Every test prints a ``[PASS]`` or ``[FAIL]`` line through the ``report``
fixture; the lines are repeated in the terminal summary.  Thresholds are
the pinned ones and are not relaxed here.
"""
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from graphencoder import (
    EncodeOptions,
    GeneralGraph,
    LabelVector,
    SbmSpec,
    encode_dense,
    encode_oracle,
    encode_sparse,
    gen_weighted_sbm,
    repeat_cv,
)
from graphencoder import theory
from graphencoder.experiments import error_curve
from graphencoder.io import read_graph, read_labels

from instances import random_instance

pytestmark = pytest.mark.acceptance

RAW = EncodeOptions(normalize=False)
WSBM = SbmSpec(weight_max=10.0)
BSBM = SbmSpec()


def test_1_oracle_equivalence(report):
    rng = np.random.default_rng(1)
    worst = 0.0
    kinds = set()
    for _ in range(200):
        dense, sparse, y = random_instance(rng)
        kinds.add((bool(np.all(np.isin(dense.to_array(), (0.0, 1.0)))), bool(np.any(y.labels == 0))))
        for opts in (RAW, EncodeOptions()):
            ref = encode_oracle(dense, y, opts).values
            for z in (encode_dense(dense, y, opts).values, encode_sparse(sparse, y, opts).values):
                worst = max(worst, float(np.max(np.abs(z - ref))))
    ok = worst <= 1e-12 and len(kinds) == 4
    report(1, ok, f"200 instances, max |dense/sparse - oracle| = {worst:.2e} (tol 1e-12)")
    assert ok


def test_2_equivariance_exact(report):
    rng = np.random.default_rng(2)
    failures = {"permutation": 0, "scale": 0, "locality": 0}
    for _ in range(100):
        dense, _, y = random_instance(rng, integer=True)
        a, n, K = dense.to_array(), dense.n, y.K
        # permutation: integer sums are exact, so results must match bit for bit
        p = rng.permutation(n)
        for opts in (RAW, EncodeOptions()):
            z = encode_dense(dense, y, opts).values
            zp = encode_dense(GeneralGraph.from_dense(a[np.ix_(p, p)]), LabelVector(y.labels[p], K), opts).values
            failures["permutation"] += not np.array_equal(zp, z[p])
        # positive scale by a power of two changes only exponents
        c = 2.0 ** int(rng.integers(-20, 21))
        z = encode_dense(dense, y).values
        failures["scale"] += not np.array_equal(encode_dense(GeneralGraph.from_dense(a * c), y).values, z)
        # column k only reads A(:, j) for j labeled k; perturb every other column
        k = int(rng.integers(1, K + 1))
        b = a.copy()
        other = y.labels != k
        b[:, other] += rng.normal(size=(n, int(other.sum())))
        zb = encode_dense(GeneralGraph.from_dense(b, symmetric=False), y, RAW).values
        failures["locality"] += not np.array_equal(zb[:, k - 1], encode_dense(dense, y, RAW).values[:, k - 1])
    ok = not any(failures.values())
    report(2, ok, f"100 instances, exact-equality failures {failures}")
    assert ok


def test_3_weighted_sbm(report):
    g500, y500 = gen_weighted_sbm(500, WSBM, seed=2024)
    m500, s500, _ = repeat_cv(g500, y500, folds=5, reps=20, base_seed=0, classifier="lda")
    g50, y50 = gen_weighted_sbm(50, WSBM, seed=2024)
    m50, _, _ = repeat_cv(g50, y50, folds=5, reps=20, base_seed=0, classifier="lda")
    # Informational: spread when the graph itself is redrawn per replicate.
    redraw = []
    for r in range(20):
        g, y = gen_weighted_sbm(500, WSBM, seed=2024, index=r + 1)
        redraw.append(repeat_cv(g, y, folds=5, reps=1, base_seed=r)[0])
    ok = m500 <= 0.10 and s500 <= 0.01 and m500 < m50
    report(3, ok, f"n=500 mean {m500:.4f} (<=0.10) std {s500:.4f} (<=0.01); n=50 mean {m50:.4f}; "
                  f"graph-redrawn std {np.std(redraw):.4f} (info)")
    assert ok


def test_4_gaussian_mixture(report):
    rows = error_curve("fig1-gauss", [50, 500], reps=20, seed=7)
    lda = {n: m for n, m, _, method in rows if method == "encoder-lda"}
    ok = lda[500] <= 0.15 and lda[500] < lda[50]
    report(4, ok, f"encoder+LDA error n=50 {lda[50]:.4f}, n=500 {lda[500]:.4f} (<=0.15)")
    assert ok


def test_5_moments(report):
    rep = theory.moment_report(BSBM, 2000, 50, seed=5)
    corr = rep.correlations()
    off = ~np.eye(BSBM.K, dtype=bool)
    max_corr = float(np.max(np.abs(corr[:, off])))
    ok = rep.mean_error() <= 0.01 and max_corr <= 0.1
    report(5, ok, f"max |mean - B| = {rep.mean_error():.2e} (<=0.01), max off-diag corr {max_corr:.4f} (<=0.1)")
    assert ok


def test_6_variance_scaling(report):
    rep = theory.variance_scaling(BSBM, [500, 2000], 100, seed=6)
    lo, hi = float(rep.ratios.min()), float(rep.ratios.max())
    ok = lo >= 3.2 and hi <= 4.8
    report(6, ok, f"Var ratio n=500/n=2000 in [{lo:.3f}, {hi:.3f}] (target 4, bounds [3.2, 4.8])")
    assert ok


def test_7_normality(report):
    big = theory.normality_report(BSBM, 4000, 50, seed=7)
    small = theory.normality_report(BSBM, 500, 50, seed=7)
    skew = float(np.nanmax(np.abs(big.skewness)))
    kurt = float(np.nanmax(np.abs(big.excess_kurtosis)))
    ok = skew <= 0.2 and kurt <= 0.3 and big.mean_ks() < small.mean_ks()
    report(7, ok, f"n=4000 max|skew| {skew:.4f} (<=0.2) max|kurt| {kurt:.4f} (<=0.3); "
                  f"mean KS n=500 {small.mean_ks():.4f} > n=4000 {big.mean_ks():.4f}")
    assert ok


def test_8_bayes_gap(report):
    small = theory.bayes_gap(WSBM, 200, 50, seed=8)
    big = theory.bayes_gap(WSBM, 2000, 50, seed=8)
    ok = big.gap <= 0.02 and big.gap <= small.gap
    report(8, ok, f"gap n=200 {small.gap:.4f}, n=2000 {big.gap:.4f} (<=0.02); "
                  f"LDA {big.lda_error:.4f} vs plug-in {big.plugin_error:.4f} at n=2000")
    assert ok


def test_9_sparse_scaling(report):
    sizes = [50_000, 100_000, 200_000]
    script = os.path.join(os.path.dirname(__file__), "bench_sparse.py")
    res = subprocess.run([sys.executable, script, *map(str, sizes)], capture_output=True, text=True, check=True)
    out = json.loads(res.stdout)
    best = out["seconds"]
    ratios = [best[i + 1] / best[i] for i in range(2)]
    degree = 2 * out["nnz"][0] / sizes[0]
    ok = max(ratios) <= 2.5
    times = ", ".join(f"n={n}: {t * 1e3:.1f} ms" for n, t in zip(sizes, best))
    report(9, ok, f"{times}; doubling ratios {ratios[0]:.2f}, {ratios[1]:.2f} (<=2.5); avg degree {degree:.1f}")
    assert ok


def test_10_wikipedia_reference(report):
    graph_path = os.environ.get("GRAPHENCODER_WIKI_GRAPH")
    label_path = os.environ.get("GRAPHENCODER_WIKI_LABELS")
    if not (graph_path and label_path):
        report(10, None, "informational; set GRAPHENCODER_WIKI_GRAPH and GRAPHENCODER_WIKI_LABELS "
                         "to run 5-fold x 50 reps (reference 19.3 +/- 0.4%)")
        pytest.skip("Wikipedia TE graph not supplied")
    g = read_graph(graph_path)
    y = read_labels(label_path, n=g.n)
    mean, std, _ = repeat_cv(g, y, folds=5, reps=50, base_seed=0, classifier="lda")
    report(10, None, f"encoder+LDA {100 * mean:.1f} +/- {100 * std:.1f}% (reference 19.3 +/- 0.4%)")
