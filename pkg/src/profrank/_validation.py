"""Input checks shared by the estimator and the search."""

import numpy as np

from .config import SIGNAL_TYPES
from .evaluation import gold_vector
from .graph import VoteDataset, signal_count_matrices


def check_counts(X):
    """Return ``(counts, dataset)`` for a dataset or a dict of count matrices.

    ``dataset`` is ``None`` when raw matrices were passed.
    """
    if isinstance(X, VoteDataset):
        if X.n_users == 0:
            raise ValueError("dataset has no users")
        return signal_count_matrices(X), X
    if not isinstance(X, dict):
        raise TypeError(
            f"expected a VoteDataset or a dict of count matrices, got {type(X).__name__}"
        )
    missing = [t for t in SIGNAL_TYPES if t not in X]
    if missing:
        raise ValueError(f"count matrices missing for {missing}")
    counts = {}
    n = None
    for t in SIGNAL_TYPES:
        m = np.asarray(X[t])
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"{t}: expected a square matrix, got shape {m.shape}")
        if n is None:
            n = m.shape[0]
        elif m.shape[0] != n:
            raise ValueError(f"{t}: size {m.shape[0]} differs from {n}")
        if np.any(m < 0) or np.any(np.diag(m) != 0):
            raise ValueError(f"{t}: counts must be nonnegative with a zero diagonal")
        counts[t] = m
    if n == 0:
        raise ValueError("count matrices are empty")
    return counts, None


def check_gold(y, dataset, n):
    """Gold levels as a float vector of length ``n`` with NaN for unlabeled users."""
    if y is None:
        if dataset is None:
            raise ValueError("gold labels required when fitting on count matrices")
        return gold_vector(dataset)
    if isinstance(y, dict):
        if dataset is None:
            raise ValueError("gold given by user id needs a VoteDataset")
        return gold_vector(dataset, y)
    y = np.asarray(y, dtype=np.float64).ravel()
    if y.shape[0] != n:
        raise ValueError(f"gold has {y.shape[0]} entries for {n} users")
    labeled = y[~np.isnan(y)]
    if not np.all(np.isin(labeled, [1, 2, 3, 4, 5])):
        raise ValueError("gold levels must be integers in 1..5 (NaN for unlabeled)")
    return y
