"""Label-masked cross-validation of encoder embedding + classifier.

For each fold the whole graph is encoded, but the labels of the test fold
are set to 0 first, so test vertices contribute no label information to W.
The classifier is trained on the training rows of the embedding and scored
on the test rows.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .encoder import DEFAULT_OPTIONS, EncodeOptions, encode
from .graph import as_labels
from .models import knn_predict_many, lda_fit
from .rng import substream


@dataclass(frozen=True, eq=False)
class FoldPlan:
    """Fold index (1..folds) per vertex; 0 for vertices with unknown labels,
    which are never tested and never used for training."""

    folds: int
    assignments: np.ndarray
    seed: int
    stratified: bool

    def test_mask(self, f: int) -> np.ndarray:
        return self.assignments == f

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignments, minlength=self.folds + 1)[1:]


@dataclass(frozen=True)
class CVResult:
    mean: float
    std: float
    fold_errors: tuple

    def as_dict(self):
        return {"mean": self.mean, "std": self.std, "fold_errors": list(self.fold_errors)}


def kfold_split(labels, folds: int = 5, seed: int = 0, stratified: bool = True) -> FoldPlan:
    """Deterministic fold assignment for the labeled vertices.

    Stratified plans shuffle each class and deal its members round-robin,
    continuing the rotation across classes, so per-class fold counts (and
    total fold sizes) differ by at most one.
    """
    lv = as_labels(labels)
    if folds < 2:
        raise ValueError("need at least 2 folds")
    rng = substream(seed, "folds")
    assign = np.zeros(lv.n, dtype=np.int64)
    if stratified:
        offset = 0
        for k in range(1, lv.K + 1):
            members = np.flatnonzero(lv.labels == k)
            if members.size == 0:
                continue
            if members.size < folds:
                raise ValueError(f"class {k} has {members.size} vertices, fewer than {folds} folds")
            members = rng.permutation(members)
            assign[members] = (np.arange(members.size) + offset) % folds + 1
            offset = (offset + members.size) % folds
    else:
        members = np.flatnonzero(lv.known)
        if members.size < folds:
            raise ValueError(f"{members.size} labeled vertices cannot fill {folds} folds")
        members = rng.permutation(members)
        assign[members] = np.arange(members.size) % folds + 1
    return FoldPlan(folds=folds, assignments=assign, seed=seed, stratified=stratified)


def _classify(classifier, k, ztrain, ytrain, ztest, K):
    if classifier == "lda":
        return lda_fit(ztrain, ytrain, n_classes=K).predict(ztest)
    if classifier == "knn":
        return knn_predict_many(ztrain, ytrain, ztest, k=k)
    raise ValueError(f"unknown classifier {classifier!r}; expected 'lda' or 'knn'")


def fold_embeddings(graph, labels, plan: FoldPlan, opts: EncodeOptions = DEFAULT_OPTIONS):
    """Yield ``(fold, train_idx, test_idx, Z)`` where Z used masked labels."""
    lv = as_labels(labels)
    if plan.assignments.size != lv.n:
        raise ValueError("fold plan does not match label length")
    train_base = lv.known
    for f in range(1, plan.folds + 1):
        test = plan.test_mask(f) & train_base
        train = train_base & ~test
        masked = lv.masked(~train)
        present = np.bincount(masked.labels, minlength=lv.K + 1)[1:]
        if np.any(present == 0):
            missing = ", ".join(str(c + 1) for c in np.flatnonzero(present == 0))
            raise ValueError(f"fold {f}: class(es) {missing} absent from the training partition")
        z = encode(graph, masked, opts).values
        yield f, np.flatnonzero(train), np.flatnonzero(test), z


def cv_error(
    graph,
    labels,
    plan: FoldPlan,
    classifier: str = "lda",
    k: int = 5,
    opts: EncodeOptions = DEFAULT_OPTIONS,
) -> CVResult:
    """Mean and population sd of the per-fold misclassification rate."""
    lv = as_labels(labels)
    errors = []
    for _, tr, te, z in fold_embeddings(graph, lv, plan, opts):
        if te.size == 0:
            continue
        pred = _classify(classifier, k, z[tr], lv.labels[tr], z[te], lv.K)
        errors.append(float(np.mean(pred != lv.labels[te])))
    errs = np.array(errors)
    return CVResult(mean=float(errs.mean()), std=float(errs.std()), fold_errors=tuple(errors))


def holdout_error(graph, labels, test_mask, classifier="lda", k=5, opts=DEFAULT_OPTIONS) -> float:
    """Single train/test split evaluation."""
    lv = as_labels(labels)
    test = np.asarray(test_mask, dtype=bool)
    plan = FoldPlan(folds=2, assignments=np.where(lv.known, np.where(test, 1, 2), 0), seed=0, stratified=False)
    _, tr, te, z = next(fold_embeddings(graph, lv, plan, opts))
    pred = _classify(classifier, k, z[tr], lv.labels[tr], z[te], lv.K)
    return float(np.mean(pred != lv.labels[te]))


def repeat_cv(
    graph,
    labels,
    folds: int = 5,
    reps: int = 50,
    base_seed: int = 0,
    classifier: str = "lda",
    k: int = 5,
    opts: EncodeOptions = DEFAULT_OPTIONS,
    stratified: bool = True,
):
    """Repeat :func:`cv_error` with fold seeds ``base_seed + r``.

    Returns ``(mean, std, per_rep_means)`` across repetitions.
    """
    if reps < 1:
        raise ValueError("reps must be positive")
    means = []
    for r in range(reps):
        plan = kfold_split(labels, folds, base_seed + r, stratified)
        means.append(cv_error(graph, labels, plan, classifier, k, opts).mean)
    arr = np.array(means)
    return float(arr.mean()), float(arr.std()), arr
