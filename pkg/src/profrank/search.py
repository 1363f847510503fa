"""Coarse-to-fine grid search over (d, alpha, beta, delta)."""

import itertools
import logging
from dataclasses import dataclass, field

import numpy as np
from joblib import Parallel, delayed

from .config import NEGATIVE_TYPES, POSITIVE_TYPES, RankConfig
from ._validation import check_counts, check_gold
from .evaluation import objective, theta_sweep
from .graph import incoming_vote_counts
from .rank import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    build_negative_matrix,
    build_positive_matrix,
    combine,
    damp,
    power_iterate,
)

__all__ = [
    "PARAMS",
    "DEFAULT_STAGES",
    "TraceEntry",
    "SearchResult",
    "grid_search",
    "stage_grid",
    "sort_key",
]

logger = logging.getLogger(__name__)

PARAMS = ("d", "alpha", "beta", "delta")
DEFAULT_STAGES = (0.1, 0.05, 0.01)
_SCALE = 10**6


@dataclass(frozen=True)
class TraceEntry:
    stage: int
    params: tuple
    objective: float | None

    def to_dict(self):
        return {
            "stage": self.stage,
            **dict(zip(PARAMS, self.params)),
            "objective": self.objective,
        }


@dataclass
class SearchResult:
    """Outcome of :func:`grid_search`.

    ``best`` is ``None`` and ``no_signal`` is set when no coarse grid point
    produced a single significant correlation.
    """

    best: RankConfig | None
    best_objective: float | None
    trace: list = field(default_factory=list)
    stage_objectives: list = field(default_factory=list)

    @property
    def no_signal(self):
        return self.best is None

    def to_dict(self):
        return {
            "best": self.best.to_dict() if self.best is not None else None,
            "objective": self.best_objective,
            "no_signal": self.no_signal,
            "stage_objectives": self.stage_objectives,
            "trace": [t.to_dict() for t in self.trace],
        }


def sort_key(objective_value, params):
    """Key whose minimum is the preferred grid point.

    Higher objectives win, absent objectives lose to every real one, and
    ties go to the lexicographically smaller parameter tuple.
    """
    if objective_value is None:
        return (1, 0.0, params)
    return (0, -objective_value, params)


def _fixed_values(base):
    alpha = base.alpha
    if not base.has_negative:
        alpha = 0.0
    elif not base.has_positive:
        alpha = 1.0
    return {"d": base.d, "alpha": alpha, "beta": 0.0, "delta": 0.0}


def stage_grid(active, step, center=None, radius=None):
    """Integer grid (units of 1e-6) for one search stage.

    Parameters
    ----------
    active : sequence of str
        Parameter names to vary.
    step : float
        Resolution of this stage.
    center : dict, optional
        Incumbent integer values; when given the grid is the box
        ``center +/- radius`` clipped to [0, 1].
    radius : float, optional
        Half-width of the box, normally the previous stage's step.

    Returns
    -------
    dict mapping parameter name to a list of integer values.
    """
    s = round(step * _SCALE)
    if s <= 0:
        raise ValueError(f"grid step must be positive, got {step!r}")
    axes = {}
    for p in active:
        if center is None:
            lo, hi = 0, _SCALE
        else:
            rad = round(radius * _SCALE)
            lo, hi = max(0, center[p] - rad), min(_SCALE, center[p] + rad)
        first = -(-lo // s) * s
        axes[p] = list(range(first, hi + 1, s))
    return axes


def _to_float(v):
    return v / _SCALE


class _Evaluator:
    """Scores grid points; caches the positive/negative PageRank runs."""

    def __init__(self, counts, gold, votes, base, tol, max_iter):
        self.counts = counts
        self.gold = gold
        self.votes = votes
        self.base = base
        self.tol = tol
        self.max_iter = max_iter
        self._plus = {}
        self._minus = {}

    def _side(self, cache, key, build, selected, config):
        if key not in cache:
            if not selected:
                n = self.gold.shape[0]
                cache[key] = np.full(n, 1.0 / n)
            else:
                m = damp(build(self.counts, config), config.d)
                cache[key] = power_iterate(m, self.tol, self.max_iter).scores
        return cache[key]

    def config(self, params):
        d, alpha, beta, delta = (_to_float(v) for v in params)
        return self.base.with_params(d=d, alpha=alpha, beta=beta, delta=delta)

    def __call__(self, params):
        cfg = self.config(params)
        d, _, beta, delta = params
        plus = self._side(
            self._plus, (d, beta), build_positive_matrix, cfg.has_positive, cfg
        )
        minus = self._side(
            self._minus, (d, delta), build_negative_matrix, cfg.has_negative, cfg
        )
        pr = combine(plus, minus, cfg.alpha)
        return objective(theta_sweep(pr, self.votes, self.gold))


def _evaluate_batch(evaluator, batch):
    return [evaluator(p) for p in batch]


def _points(axes, fixed):
    names = [p for p in PARAMS if p in axes]
    for combo in itertools.product(*(axes[p] for p in names)):
        values = dict(fixed)
        values.update(zip(names, combo))
        yield tuple(values[p] for p in PARAMS)


def grid_search(
    dataset,
    types,
    stages=DEFAULT_STAGES,
    gold=None,
    n_jobs=None,
    tol=DEFAULT_TOL,
    max_iter=DEFAULT_MAX_ITER,
):
    """Search the parameters of a fixed signal-type selection.

    Stage one covers the full unit grid at ``stages[0]`` over the active
    parameters (``d`` always, ``alpha`` when both sides are selected,
    ``beta``/``delta`` when an iav/iov type is selected). Every later stage
    evaluates the box of half-width equal to the previous step around the
    incumbent, at its own step.

    Parameters
    ----------
    dataset : VoteDataset or dict
        A dataset, or a precomputed mapping from :func:`signal_count_matrices`
        (then ``gold`` must be a vector).
    types : sequence of str or RankConfig
        Selected signal types.
    stages : sequence of float
        Grid resolutions, coarse to fine.
    gold : dict or array-like, optional
        Gold labels; read from the dataset's users if omitted.
    n_jobs : int, optional
        Parallel workers for grid evaluation. Results do not depend on it.

    Returns
    -------
    SearchResult
    """
    if isinstance(types, RankConfig):
        base = types
    else:
        types = set(types)
        has_pos = bool(types & set(POSITIVE_TYPES))
        has_neg = bool(types & set(NEGATIVE_TYPES))
        if not has_pos and not has_neg:
            raise ValueError("no signal type selected")
        alpha = 0.5 if has_pos and has_neg else float(has_neg)
        base = RankConfig.from_types(types, alpha=alpha, name="search")
    counts, data = check_counts(dataset)
    gold = check_gold(gold, data, next(iter(counts.values())).shape[0])

    active = base.active_params()
    fixed = {p: round(v * _SCALE) for p, v in _fixed_values(base).items()}
    votes = incoming_vote_counts(counts, base)
    evaluator = _Evaluator(counts, gold, votes, base, tol, max_iter)

    trace = []
    stage_objectives = []
    incumbent = None
    incumbent_obj = None
    prev_step = None
    for stage, step in enumerate(stages, start=1):
        if incumbent is None:
            axes = stage_grid(active, step)
        else:
            axes = stage_grid(
                active, step, center=dict(zip(PARAMS, incumbent)), radius=prev_step
            )
        points = list(_points(axes, fixed))
        values = _run(evaluator, points, n_jobs)
        for p, v in zip(points, values):
            trace.append(TraceEntry(stage, tuple(_to_float(x) for x in p), v))

        best_p, best_v = min(zip(points, values), key=lambda pv: sort_key(pv[1], pv[0]))
        logger.info(
            "stage %d: %d points, step %g, best %s -> %s",
            stage, len(points), step, best_p, best_v,
        )
        if best_v is None:
            return SearchResult(None, None, trace, stage_objectives)
        incumbent, incumbent_obj = best_p, best_v
        stage_objectives.append(best_v)
        prev_step = step

    return SearchResult(evaluator.config(incumbent), incumbent_obj, trace, stage_objectives)


def _run(evaluator, points, n_jobs):
    if n_jobs is None or n_jobs == 1 or len(points) < 2:
        return [evaluator(p) for p in points]
    # group points sharing (d, beta, delta) so each batch reuses its PageRank runs
    groups = {}
    for i, p in enumerate(points):
        groups.setdefault((p[0], p[2], p[3]), []).append(i)
    batches = list(groups.values())
    results = Parallel(n_jobs=n_jobs)(
        delayed(_evaluate_batch)(evaluator, [points[i] for i in b]) for b in batches
    )
    out = [None] * len(points)
    for b, vals in zip(batches, results):
        for i, v in zip(b, vals):
            out[i] = v
    return out
