"""Signed PageRank over explicit and implicit vote graphs."""

from dataclasses import dataclass

import numpy as np

from .graph import signal_count_matrices

__all__ = [
    "DEFAULT_TOL",
    "DEFAULT_MAX_ITER",
    "PowerResult",
    "ProficiencyRankResult",
    "column_normalize",
    "damp",
    "power_iterate",
    "build_positive_matrix",
    "build_negative_matrix",
    "proficiency_rank",
    "combine",
]

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 1000


@dataclass(frozen=True)
class PowerResult:
    """Stationary vector of a damped matrix and how it was reached."""

    scores: np.ndarray
    iterations: int
    converged: bool


@dataclass(frozen=True)
class ProficiencyRankResult:
    pr: np.ndarray
    pr_plus: np.ndarray
    pr_minus: np.ndarray
    plus_info: PowerResult
    minus_info: PowerResult

    @property
    def converged(self):
        return self.plus_info.converged and self.minus_info.converged


def column_normalize(counts):
    """Turn a nonnegative count matrix into a column-stochastic matrix.

    Nonzero columns are divided by their sum. All-zero (dangling) columns
    become the uniform column ``1/n``.
    """
    counts = np.asarray(counts, dtype=np.float64)
    if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {counts.shape}")
    n = counts.shape[0]
    if n == 0:
        raise ValueError("cannot normalize an empty matrix")
    if np.any(counts < 0):
        raise ValueError("counts must be nonnegative")
    sums = counts.sum(axis=0)
    dangling = sums == 0
    out = np.divide(counts, sums, out=np.zeros_like(counts), where=~dangling)
    out[:, dangling] = 1.0 / n
    return out


def damp(m, d):
    """Mix a stochastic matrix with uniform teleportation: ``d*m + (1-d)/n``."""
    if not 0.0 <= d <= 1.0:
        raise ValueError(f"damping factor must lie in [0, 1], got {d!r}")
    m = np.asarray(m, dtype=np.float64)
    n = m.shape[0]
    return d * m + (1.0 - d) / n


def power_iterate(m_hat, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Repeatedly apply a damped matrix to the uniform vector.

    Stops once the L1 change between consecutive iterates drops below
    ``tol``. Hitting ``max_iter`` is reported through ``converged=False``
    instead of raising.
    """
    m_hat = np.asarray(m_hat, dtype=np.float64)
    n = m_hat.shape[0]
    r = np.full(n, 1.0 / n)
    for t in range(1, max_iter + 1):
        nxt = m_hat @ r
        delta = np.abs(nxt - r).sum()
        r = nxt
        if delta < tol:
            return PowerResult(r, t, True)
    return PowerResult(r, max_iter, False)


def _counts(source):
    if isinstance(source, dict):
        return source
    return signal_count_matrices(source)


def _mix(counts, explicit, implicit, weight):
    if not implicit:
        return column_normalize(counts[explicit])
    implicit_m = column_normalize(sum(counts[t] for t in implicit))
    if explicit is None:
        return implicit_m
    return (1.0 - weight) * column_normalize(counts[explicit]) + weight * implicit_m


def build_positive_matrix(source, config):
    """Column-stochastic matrix of positive signals.

    Explicit positive votes and the selected implicit agreement votes are
    normalized separately and blended with weight ``config.beta`` on the
    implicit side. Selected iav types are summed as raw counts first.

    Parameters
    ----------
    source : VoteDataset or dict
        A dataset or precomputed :func:`signal_count_matrices`.
    config : RankConfig
    """
    counts = _counts(source)
    explicit = "exp+" if config.use_exp_plus else None
    implicit = [t for t in ("iav+", "iav-") if t in config.types]
    if explicit is None and not implicit:
        raise ValueError("config selects no positive signal type")
    return _mix(counts, explicit, implicit, config.beta)


def build_negative_matrix(source, config):
    """Negative counterpart of :func:`build_positive_matrix`, weighted by delta."""
    counts = _counts(source)
    explicit = "exp-" if config.use_exp_minus else None
    implicit = [t for t in ("iov+", "iov-") if t in config.types]
    if explicit is None and not implicit:
        raise ValueError("config selects no negative signal type")
    return _mix(counts, explicit, implicit, config.delta)


def _side_rank(build, selected, counts, config, n, tol, max_iter):
    if not selected:
        # An unselected side is the empty graph, whose PageRank is uniform.
        return PowerResult(np.full(n, 1.0 / n), 0, True)
    m = build(counts, config)
    return power_iterate(damp(m, config.d), tol=tol, max_iter=max_iter)


def proficiency_rank(source, config, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Signed combination ``(1 - alpha) * PR+ - alpha * PR-``.

    Parameters
    ----------
    source : VoteDataset or dict
        A dataset or precomputed :func:`signal_count_matrices`.
    config : RankConfig
    tol, max_iter
        Passed to :func:`power_iterate` for both runs.

    Returns
    -------
    ProficiencyRankResult
    """
    counts = _counts(source)
    n = next(iter(counts.values())).shape[0]
    plus = _side_rank(
        build_positive_matrix, config.has_positive, counts, config, n, tol, max_iter
    )
    minus = _side_rank(
        build_negative_matrix, config.has_negative, counts, config, n, tol, max_iter
    )
    pr = combine(plus.scores, minus.scores, config.alpha)
    return ProficiencyRankResult(pr, plus.scores, minus.scores, plus, minus)


def combine(pr_plus, pr_minus, alpha):
    return (1.0 - alpha) * pr_plus - alpha * pr_minus
