import numpy as np
import pytest

from graphencoder import (
    EncodeOptions,
    GeneralGraph,
    LabelVector,
    cv_error,
    encode_oracle,
    holdout_error,
    kfold_split,
    repeat_cv,
)
from graphencoder.synth import SbmSpec, gen_weighted_sbm

from oracles import lda_scores


def test_kfold_even_split():
    plan = kfold_split(LabelVector(np.repeat([1, 2], 5), 2), 5, seed=3, stratified=False)
    assert plan.sizes().tolist() == [2] * 5


def test_kfold_deterministic():
    y = LabelVector(np.tile([1, 2, 3], 10), 3)
    assert np.array_equal(kfold_split(y, 5, 11).assignments, kfold_split(y, 5, 11).assignments)
    assert not np.array_equal(kfold_split(y, 5, 11).assignments, kfold_split(y, 5, 12).assignments)


def test_kfold_stratified_arithmetic():
    y = LabelVector(np.array([1] * 6 + [2] * 4), 2)
    plan = kfold_split(y, 2, seed=0)
    for f in (1, 2):
        members = y.labels[plan.assignments == f]
        assert (members == 1).sum() == 3
        assert (members == 2).sum() == 2


def test_kfold_stratified_balance(rng):
    y = LabelVector(rng.integers(1, 5, size=103), 4)
    plan = kfold_split(y, 5, seed=1)
    sizes = plan.sizes()
    assert sizes.min() >= 1 and sizes.max() - sizes.min() <= 1
    for k in range(1, 5):
        per = np.bincount(plan.assignments[y.labels == k], minlength=6)[1:]
        assert per.max() - per.min() <= 1


def test_kfold_small_class_error():
    with pytest.raises(ValueError):
        kfold_split(LabelVector(np.array([1, 1, 1, 2]), 2), 2)


def test_kfold_unknown_labels_excluded():
    plan = kfold_split(LabelVector(np.array([1, 1, 0, 2, 2]), 2), 2, seed=0)
    assert plan.assignments[2] == 0


def _block_graph(n=40):
    y = np.repeat([1, 2], n // 2)
    a = np.where(y[:, None] == y[None, :], 2.5, 0.0)
    np.fill_diagonal(a, 0.0)
    return GeneralGraph.from_dense(a), LabelVector(y, 2)


def test_block_diagonal_graph_has_zero_error():
    # within-class rows embed to (1, 0) or (0, 1): perfectly separated
    g, y = _block_graph()
    res = cv_error(g, y, kfold_split(y, 5, 0))
    assert res.mean == 0.0 and all(e == 0.0 for e in res.fold_errors)
    assert cv_error(g, y, kfold_split(y, 5, 0), "knn", k=5).mean == 0.0


def test_random_labels_near_chance():
    g, y = gen_weighted_sbm(600, SbmSpec(weight_max=10.0), seed=5)
    shuffled = LabelVector(np.random.default_rng(0).permutation(np.repeat([1, 2, 3], 200)), 3)
    mean, _, _ = repeat_cv(g, shuffled, 5, 5, 0)
    assert abs(mean - 2 / 3) < 0.06


def _loo_brute_force(a, y, opts):
    """Leave-one-out with explicit masking, the loop oracle and textbook LDA."""
    n = len(y)
    wrong = []
    for i in range(n):
        masked = [0 if j == i else y[j] for j in range(n)]
        z = encode_oracle(a, LabelVector(np.array(masked), 2), opts).values
        tr = [j for j in range(n) if j != i]
        scores = lda_scores(z[tr], [y[j] for j in tr], z[i], 2)
        wrong.append(float(int(np.argmax(scores)) + 1 != y[i]))
    return wrong


def test_leave_one_out_toy():
    # two triangles joined by a heavy edge 3-4 and a light edge 1-6
    a = np.zeros((6, 6))
    for i, j, w in [(0, 1, 1), (0, 2, 1), (1, 2, 1), (3, 4, 1), (3, 5, 1), (4, 5, 1), (2, 3, 3), (0, 5, 0.5)]:
        a[i, j] = a[j, i] = w
    y = [1, 1, 1, 2, 2, 2]
    g, lv = GeneralGraph.from_dense(a), LabelVector(np.array(y), 2)
    plan = kfold_split(lv, 6, seed=0, stratified=False)
    assert sorted(plan.sizes().tolist()) == [1] * 6
    opts = EncodeOptions(normalize=False)
    res = cv_error(g, lv, plan, opts=opts)
    order = [int(np.flatnonzero(plan.assignments == f)[0]) for f in range(1, 7)]
    expected = _loo_brute_force(a, y, opts)
    assert list(res.fold_errors) == [expected[i] for i in order]
    # Hand check for vertex 2 (index 1): with it masked, class-1 training rows
    # are (0.5, 1/6) and (0.5, 1); class-2 rows (1.5, 2/3), (0, 2/3), (0.25, 2/3).
    # Pooled variances 0.4306 and 0.1157; query (1, 0) scores -1.515 for
    # class 1 against -1.472 for class 2, so it is misclassified.
    assert expected[1] == 1.0
    assert expected == [0.0, 1.0, 1.0, 1.0, 1.0, 0.0]


def test_no_label_leakage(rng):
    g, y = gen_weighted_sbm(150, SbmSpec(weight_max=10.0), seed=2)
    plan = kfold_split(y, 5, seed=4)
    base = cv_error(g, y, plan).fold_errors
    # scrambling the test labels of fold 1 affects only fold 1's scoring, and
    # replacing them with the truth again restores it; training data is unchanged
    f1 = plan.assignments == 1
    scrambled = np.array(y.labels)
    scrambled[f1] = rng.integers(1, 4, size=f1.sum())
    from graphencoder.evaluation import fold_embeddings

    z_true = [z for *_, z in fold_embeddings(g, y, plan)]
    z_scr = [z for *_, z in fold_embeddings(g, LabelVector(scrambled, 3), plan)]
    assert np.array_equal(z_true[0], z_scr[0])
    assert cv_error(g, y, plan).fold_errors == base


def test_fold_errors_in_unit_interval_and_mean_exact():
    g, y = gen_weighted_sbm(100, SbmSpec(weight_max=10.0), seed=9)
    res = cv_error(g, y, kfold_split(y, 5, 1))
    assert all(0.0 <= e <= 1.0 for e in res.fold_errors)
    assert res.mean == float(np.mean(res.fold_errors))


def test_repeat_cv_single_rep_equals_cv_error():
    g, y = gen_weighted_sbm(100, SbmSpec(weight_max=10.0), seed=9)
    mean, std, per = repeat_cv(g, y, 5, 1, 42)
    assert mean == cv_error(g, y, kfold_split(y, 5, 42)).mean and std == 0.0


def test_repeat_cv_deterministic():
    g, y = gen_weighted_sbm(100, SbmSpec(weight_max=10.0), seed=9)
    assert repeat_cv(g, y, 5, 3, 7)[:2] == repeat_cv(g, y, 5, 3, 7)[:2]


def test_empty_training_class_error():
    y = LabelVector(np.array([1, 1, 1, 2, 0, 0]), 2)
    from graphencoder.evaluation import FoldPlan

    plan = FoldPlan(2, np.array([1, 2, 1, 1, 0, 0]), 0, False)
    with pytest.raises(ValueError, match="class"):
        cv_error(np.ones((6, 6)), y, plan)


def test_holdout_error():
    g, y = _block_graph(20)
    test = np.zeros(20, dtype=bool)
    test[[0, 19]] = True
    assert holdout_error(g, y, test) == 0.0
