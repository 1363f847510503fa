"""Correlation of rankings with self-reported proficiency levels."""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

__all__ = [
    "GOLD_SCALE",
    "SIGNIFICANCE_LEVEL",
    "MIN_SUBSET_SIZE",
    "CorrelationResult",
    "SweepRecord",
    "SweepReport",
    "gold_numeric",
    "gold_labels",
    "gold_vector",
    "spearman",
    "theta_sweep",
    "objective",
]

GOLD_SCALE = {"Native": 5, "Fluid": 4, "Advanced": 3, "Intermediate": 2, "Beginner": 1}
SIGNIFICANCE_LEVEL = 0.01
MIN_SUBSET_SIZE = 5


@dataclass(frozen=True)
class CorrelationResult:
    """Spearman coefficient with its two-sided p-value.

    ``r`` is ``None`` when the correlation is undefined (a constant input);
    ``p`` is ``None`` when ``r`` is undefined or ``n < 4``.
    """

    r: float | None
    p: float | None
    n: int

    @property
    def defined(self):
        return self.r is not None

    def to_dict(self):
        return {"r": self.r, "p": self.p, "n": self.n}


@dataclass(frozen=True)
class SweepRecord:
    theta: int
    n_users: int
    result: CorrelationResult
    significant: bool

    def to_dict(self):
        return {
            "theta": self.theta,
            "n_users": self.n_users,
            "r": self.result.r,
            "p": self.result.p,
            "significant": self.significant,
        }


@dataclass(frozen=True)
class SweepReport:
    records: list = field(default_factory=list)

    @property
    def objective(self):
        return objective(self)

    def to_dict(self):
        return {
            "records": [r.to_dict() for r in self.records],
            "objective": self.objective,
        }


def gold_numeric(label):
    """Map a self-reported level to 1 (Beginner) .. 5 (Native). Matching is strict."""
    try:
        return GOLD_SCALE[label]
    except (KeyError, TypeError):
        raise ValueError(f"unknown proficiency label {label!r}") from None


def gold_labels(dataset):
    """``{user_id: level}`` for every user that reported a level."""
    return {u.id: gold_numeric(u.self_level) for u in dataset.users if u.self_level}


def gold_vector(dataset, gold=None):
    """Gold levels aligned with the dataset's user index, NaN where unlabeled."""
    if gold is None:
        gold = gold_labels(dataset)
    out = np.full(dataset.n_users, np.nan)
    for uid, level in gold.items():
        if level not in (1, 2, 3, 4, 5):
            raise ValueError(f"gold level for {uid!r} must be in 1..5, got {level!r}")
        try:
            out[dataset.user_index[uid]] = level
        except KeyError:
            raise ValueError(f"gold label for unknown user {uid!r}") from None
    return out


def spearman(x, y):
    """Tie-aware Spearman rank correlation.

    Pearson correlation of the average ranks of ``x`` and ``y``. The
    p-value uses the t approximation with ``n - 2`` degrees of freedom.

    Parameters
    ----------
    x, y : array-like of shape (n,)

    Returns
    -------
    CorrelationResult
        With ``r=None`` if either input is constant.
    """
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.size} != {y.size}")
    n = x.size
    if n < 2:
        raise ValueError("spearman needs at least 2 observations")
    if np.all(x == x[0]) or np.all(y == y[0]):
        return CorrelationResult(None, None, n)

    rx = stats.rankdata(x) - (n + 1) / 2.0
    ry = stats.rankdata(y) - (n + 1) / 2.0
    r = float(np.dot(rx, ry) / math.sqrt(np.dot(rx, rx) * np.dot(ry, ry)))
    r = min(1.0, max(-1.0, r))

    p = None
    if n >= 4:
        if abs(r) == 1.0:
            p = 0.0
        else:
            t = r * math.sqrt((n - 2) / (1.0 - r * r))
            p = float(2.0 * stats.t.sf(abs(t), n - 2))
    return CorrelationResult(r, p, n)


def theta_sweep(scores, counts, gold, min_size=MIN_SUBSET_SIZE, alpha=SIGNIFICANCE_LEVEL):
    """Correlate scores with gold levels over users with at least theta votes.

    Parameters
    ----------
    scores : array-like of shape (n_users,)
        Ranking to evaluate; NaN entries are treated as unscored.
    counts : array-like of int, shape (n_users,)
        Incoming vote counts used for the threshold.
    gold : array-like of shape (n_users,)
        Gold levels, NaN for unlabeled users.
    min_size : int
        Subsets smaller than this produce an undefined record.
    alpha : float
        Significance threshold on the p-value.

    Returns
    -------
    SweepReport
        One record for each theta from 1 to ``max(counts)``.
    """
    scores = np.asarray(scores, dtype=np.float64)
    counts = np.asarray(counts)
    gold = np.asarray(gold, dtype=np.float64)
    if not scores.shape == counts.shape == gold.shape:
        raise ValueError("scores, counts and gold must have the same length")

    usable = ~np.isnan(gold) & ~np.isnan(scores)
    top = int(counts.max()) if counts.size else 0
    if top < 1 or not np.any(usable & (counts >= 1)):
        raise ValueError("no labeled user has at least one incoming vote")

    records = []
    result = None
    for theta in range(1, top + 1):
        mask = usable & (counts >= theta)
        k = int(mask.sum())
        if result is not None and result.n == k:
            # subsets are nested, so equal size means the same users
            pass
        elif k < min_size:
            result = CorrelationResult(None, None, k)
        else:
            result = spearman(scores[mask], gold[mask])
        significant = result.p is not None and result.p < alpha
        records.append(SweepRecord(theta, k, result, significant))
    return SweepReport(records)


def objective(report):
    """Mean Spearman r over the significant records, or None if there are none."""
    rs = [rec.result.r for rec in report.records if rec.significant]
    if not rs:
        return None
    return math.fsum(rs) / len(rs)
