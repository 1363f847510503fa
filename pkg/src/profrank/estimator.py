"""scikit-learn style wrapper around the signed ranking."""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_counts, check_gold
from .config import RankConfig
from .evaluation import theta_sweep
from .graph import incoming_vote_counts
from .rank import DEFAULT_MAX_ITER, DEFAULT_TOL, proficiency_rank

__all__ = ["ProficiencyRank"]


class ProficiencyRank(BaseEstimator):
    """Rank users of a vote network by signed PageRank.

    The ranking is transductive: it scores the users of the graph it was
    fitted on, so there is no separate ``predict`` on unseen data.

    Parameters
    ----------
    signals : tuple of str, default=("exp+", "exp-")
        Selected signal types among ``exp+``, ``iav+``, ``iav-``, ``exp-``,
        ``iov+`` and ``iov-``.
    d : float, default=0.85
        Damping factor.
    alpha : float, default=0.5
        Weight of the negative ranking.
    beta : float, default=0.0
        Weight of implicit agreement votes in the positive graph.
    delta : float, default=0.0
        Weight of implicit opposition votes in the negative graph.
    tol : float, default=1e-9
        L1 convergence tolerance of the power iteration.
    max_iter : int, default=1000

    Attributes
    ----------
    config_ : RankConfig
    pr_ : ndarray of shape (n_users,)
        Signed score; larger means more proficient.
    pr_plus_, pr_minus_ : ndarray of shape (n_users,)
        Stationary distributions of the positive and negative graphs.
    incoming_votes_ : ndarray of shape (n_users,)
        Raw incoming votes over the selected signal types.
    n_iter_ : tuple of int
        Power iterations of the positive and negative runs.
    converged_ : bool
    user_ids_ : list of str or None
        Row labels when fitted on a :class:`VoteDataset`.

    Examples
    --------
    >>> from profrank.synth import GenParams, generate_network
    >>> data, gold = generate_network(GenParams(n_users=40, n_answers=30, seed=1))
    >>> model = ProficiencyRank(d=0.85, alpha=0.7).fit(data)
    >>> model.pr_.shape
    (40,)
    """

    def __init__(
        self,
        signals=("exp+", "exp-"),
        d=0.85,
        alpha=0.5,
        beta=0.0,
        delta=0.0,
        tol=DEFAULT_TOL,
        max_iter=DEFAULT_MAX_ITER,
    ):
        self.signals = signals
        self.d = d
        self.alpha = alpha
        self.beta = beta
        self.delta = delta
        self.tol = tol
        self.max_iter = max_iter

    @classmethod
    def from_config(cls, config, **kwargs):
        return cls(
            signals=config.types,
            d=config.d,
            alpha=config.alpha,
            beta=config.beta,
            delta=config.delta,
            **kwargs,
        )

    def _make_config(self):
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        if int(self.max_iter) < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter!r}")
        return RankConfig.from_types(
            self.signals,
            d=self.d,
            alpha=self.alpha,
            beta=self.beta,
            delta=self.delta,
            name="estimator",
        )

    def fit(self, X, y=None):
        """Compute the ranking of every user in ``X``.

        Parameters
        ----------
        X : VoteDataset or dict
            Dataset or the six raw count matrices keyed by signal type.
        y : None
            Ignored.

        Returns
        -------
        self
        """
        config = self._make_config()
        counts, dataset = check_counts(X)
        result = proficiency_rank(counts, config, tol=self.tol, max_iter=int(self.max_iter))
        self.config_ = config
        self.pr_ = result.pr
        self.pr_plus_ = result.pr_plus
        self.pr_minus_ = result.pr_minus
        self.n_iter_ = (result.plus_info.iterations, result.minus_info.iterations)
        self.converged_ = result.converged
        self.incoming_votes_ = incoming_vote_counts(counts, config)
        self.user_ids_ = dataset.user_ids if dataset is not None else None
        self._dataset = dataset
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).pr_

    def sweep(self, y=None):
        """Theta sweep of the fitted scores against gold levels."""
        check_is_fitted(self, "pr_")
        gold = check_gold(y, self._dataset, self.pr_.shape[0])
        return theta_sweep(self.pr_, self.incoming_votes_, gold)

    def score(self, X=None, y=None):
        """Mean significant Spearman r over the theta sweep.

        ``X`` is accepted for API compatibility and must be the fitted data
        or ``None``. Returns ``-inf`` when no threshold gives a significant
        correlation, so the worst-possible value sorts last.
        """
        check_is_fitted(self, "pr_")
        if X is not None and X is not self._dataset:
            counts, _ = check_counts(X)
            if next(iter(counts.values())).shape[0] != self.pr_.shape[0]:
                raise ValueError("score must be called on the data the model was fitted on")
        value = self.sweep(y).objective
        return -np.inf if value is None else value
