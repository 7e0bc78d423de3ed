"""Linear discriminant analysis and k-nearest-neighbour classifiers.

Labels are integers 1..K.  Both classifiers break ties deterministically
toward the smallest label.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

DEFAULT_RIDGE = 1e-8


class SingularCovarianceError(np.linalg.LinAlgError):
    pass


@dataclass(frozen=True, eq=False)
class LdaModel:
    means: np.ndarray  # K x d
    pooled_cov: np.ndarray  # d x d
    priors: np.ndarray  # K
    ridge: float = DEFAULT_RIDGE

    @property
    def n_classes(self) -> int:
        return self.means.shape[0]

    def coefficients(self):
        """``(W, log_prior)``; column k of W is the precision times mean k."""
        try:
            prec_means = np.linalg.solve(self.pooled_cov, self.means.T)
        except np.linalg.LinAlgError as exc:
            raise SingularCovarianceError("pooled covariance is singular") from exc
        if not np.all(np.isfinite(prec_means)):
            raise SingularCovarianceError("pooled covariance is singular")
        with np.errstate(divide="ignore"):
            log_prior = np.log(self.priors)
        return prec_means, log_prior

    def decision_function(self, points) -> np.ndarray:
        """Scores ``(x - mu_k / 2)' S^-1 mu_k + log pi_k``, one column per class.

        Centering on mu_k / 2 before the product avoids cancellation between
        two large terms when the covariance is tiny.
        """
        x = np.atleast_2d(np.asarray(points, dtype=float))
        w, log_prior = self.coefficients()
        half = x[:, None, :] - 0.5 * self.means[None, :, :]
        return np.einsum("nkd,dk->nk", half, w) + log_prior

    def predict(self, points) -> np.ndarray:
        return np.argmax(self.decision_function(points), axis=1) + 1


def _check_xy(points, labels):
    x = np.asarray(points, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    y = np.asarray(labels, dtype=np.int64).reshape(-1)
    if x.shape[0] != y.size:
        raise ValueError(f"{x.shape[0]} points but {y.size} labels")
    return x, y


def lda_fit(points, labels, n_classes=None, ridge: float = DEFAULT_RIDGE) -> LdaModel:
    """Fit a shared-covariance Gaussian classifier.

    The pooled covariance is the within-class scatter over ``n - K`` plus
    ``ridge * trace / d`` on the diagonal (``ridge`` alone if the scatter
    is zero).
    """
    x, y = _check_xy(points, labels)
    n, d = x.shape
    if d < 1:
        raise ValueError("points need at least one dimension")
    K = int(n_classes) if n_classes is not None else int(y.max())
    if y.min() < 1 or y.max() > K:
        raise ValueError(f"labels must lie in 1..{K}")
    counts = np.bincount(y, minlength=K + 1)[1:]
    if np.any(counts == 0):
        missing = ", ".join(str(k + 1) for k in np.flatnonzero(counts == 0))
        raise ValueError(f"class(es) {missing} absent from training labels")
    if n <= K:
        raise ValueError(f"need more points than classes (n={n}, K={K})")
    sums = np.zeros((K, d))
    np.add.at(sums, y - 1, x)
    means = sums / counts[:, None]
    centered = x - means[y - 1]
    cov = centered.T @ centered / (n - K)
    cov = 0.5 * (cov + cov.T)
    scale = np.trace(cov) / d
    if not scale > 0:
        scale = 1.0
    cov = cov + ridge * scale * np.eye(d)
    return LdaModel(means=means, pooled_cov=cov, priors=counts / n, ridge=ridge)


def lda_predict(model: LdaModel, point) -> int:
    """Class in 1..K maximizing the linear discriminant score."""
    return int(model.predict(np.asarray(point, dtype=float).reshape(1, -1))[0])


def _vote(neigh_labels, k_classes):
    counts = np.zeros((neigh_labels.shape[0], k_classes + 1), dtype=np.int64)
    rows = np.repeat(np.arange(neigh_labels.shape[0]), neigh_labels.shape[1])
    np.add.at(counts, (rows, neigh_labels.reshape(-1)), 1)
    counts[:, 0] = -1
    return np.argmax(counts, axis=1)


def knn_predict_many(train_points, train_labels, queries, k: int = 5) -> np.ndarray:
    """Vectorised k-NN over many query rows."""
    x, y = _check_xy(train_points, train_labels)
    if x.shape[0] == 0:
        raise ValueError("empty training set")
    if not 1 <= k <= x.shape[0]:
        raise ValueError(f"k={k} must be in 1..{x.shape[0]}")
    q = np.atleast_2d(np.asarray(queries, dtype=float))
    if q.shape[1] != x.shape[1]:
        q = q.reshape(-1, x.shape[1])
    dist = cdist(q, x, "sqeuclidean")
    # Stable sort: equal distances keep training order (smaller index wins).
    order = np.argsort(dist, axis=1, kind="stable")[:, :k]
    return _vote(y[order], int(y.max()))


def knn_predict(train_points, train_labels, query, k: int = 5) -> int:
    """Majority label among the ``k`` nearest training points."""
    return int(knn_predict_many(train_points, train_labels, np.reshape(query, (1, -1)), k)[0])
