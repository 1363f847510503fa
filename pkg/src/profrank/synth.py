"""Seedable synthetic collaborative networks with planted proficiency levels."""

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from .evaluation import GOLD_SCALE
from .graph import Answer, User, VoteDataset, VoteEvent

__all__ = ["GenParams", "SynthesisError", "generate_network", "load_params"]

_LABEL_FOR_LEVEL = {v: k for k, v in GOLD_SCALE.items()}

# Native, Fluid, Advanced, Intermediate, Beginner as observed on the source network
_REFERENCE_LEVEL_MIX = (69, 52, 66, 140, 50)


class SynthesisError(ValueError):
    pass


@dataclass(frozen=True)
class GenParams:
    """Generator settings.

    Parameters
    ----------
    n_users : int
        Number of users, at least 10.
    level_counts : tuple of 5 ints, optional
        Exact number of users per level, ordered Native, Fluid, Advanced,
        Intermediate, Beginner. Must sum to ``n_users``. Overrides
        ``level_probs``.
    level_probs : tuple of 5 floats
        Level distribution in the same order, used when ``level_counts``
        is not given.
    n_answers : int
        Number of answers to post.
    answerer_fraction : float
        Fraction of users allowed to answer.
    level_bias : float
        Exponent on the level when drawing who may answer; 0 disables it.
    skew : float
        Power-law exponent over answerers' activity ranks.
    votes_per_answer : tuple of 2 ints
        Inclusive range of the uniform number of voters per answer.
    quality_noise : float
        Standard deviation of answer quality around the author's level.
    p_correct : float
        Probability that a voter judges an answer correctly, in [0.5, 1].
    max_answers_per_user : int, optional
        Cap on answers per author.
    seed : int
    """

    n_users: int = 377
    level_counts: tuple | None = None
    level_probs: tuple = tuple(c / sum(_REFERENCE_LEVEL_MIX) for c in _REFERENCE_LEVEL_MIX)
    n_answers: int = 412
    answerer_fraction: float = 0.3
    level_bias: float = 1.0
    skew: float = 1.0
    votes_per_answer: tuple = (2, 8)
    quality_noise: float = 0.5
    p_correct: float = 0.9
    max_answers_per_user: int | None = None
    seed: int = 0

    def __post_init__(self):
        if self.n_users < 10:
            raise SynthesisError("n_users must be at least 10")
        if self.level_counts is not None:
            counts = tuple(int(c) for c in self.level_counts)
            if len(counts) != 5 or min(counts) < 0 or sum(counts) != self.n_users:
                raise SynthesisError("level_counts must be 5 nonnegative ints summing to n_users")
            object.__setattr__(self, "level_counts", counts)
        probs = tuple(float(p) for p in self.level_probs)
        if len(probs) != 5 or min(probs) < 0 or not np.isclose(sum(probs), 1.0):
            raise SynthesisError("level_probs must be 5 probabilities summing to 1")
        object.__setattr__(self, "level_probs", probs)
        lo, hi = (int(v) for v in self.votes_per_answer)
        if lo < 0 or hi < lo:
            raise SynthesisError("votes_per_answer must be an increasing pair of ints >= 0")
        if hi > self.n_users - 1:
            raise SynthesisError("votes_per_answer exceeds the number of possible voters")
        object.__setattr__(self, "votes_per_answer", (lo, hi))
        if not 0.5 <= self.p_correct <= 1.0:
            raise SynthesisError("p_correct must lie in [0.5, 1]")
        if not 0.0 < self.answerer_fraction <= 1.0:
            raise SynthesisError("answerer_fraction must lie in (0, 1]")
        if self.n_answers < 0 or self.quality_noise < 0 or self.skew < 0:
            raise SynthesisError("n_answers, quality_noise and skew must be nonnegative")
        if self.max_answers_per_user is not None and (
            self.n_answers > self.n_answerers * self.max_answers_per_user
        ):
            raise SynthesisError(
                f"{self.n_answers} answers exceed the capacity of {self.n_answerers} "
                f"answerers with at most {self.max_answers_per_user} answers each"
            )

    @property
    def n_answerers(self):
        return max(1, round(self.answerer_fraction * self.n_users))

    def to_dict(self):
        out = asdict(self)
        for k, v in out.items():
            if isinstance(v, tuple):
                out[k] = list(v)
        return out

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise SynthesisError(f"unknown generator parameters: {sorted(extra)}")
        data = {k: tuple(v) if isinstance(v, list) else v for k, v in data.items()}
        return cls(**data)


def load_params(path):
    with open(path, encoding="utf-8") as f:
        return GenParams.from_dict(json.load(f))


def _assign_levels(params, rng):
    if params.level_counts is not None:
        levels = np.repeat([5, 4, 3, 2, 1], params.level_counts)
        rng.shuffle(levels)
        return levels
    return rng.choice([5, 4, 3, 2, 1], size=params.n_users, p=params.level_probs)


def _draw_authors(params, levels, rng):
    n = params.n_users
    weight = levels.astype(np.float64) ** params.level_bias
    answerers = rng.choice(n, size=params.n_answerers, replace=False, p=weight / weight.sum())
    activity = (rng.permutation(len(answerers)) + 1.0) ** -params.skew
    cap = params.max_answers_per_user
    posted = np.zeros(len(answerers), dtype=np.int64)
    authors = np.empty(params.n_answers, dtype=np.intp)
    for k in range(params.n_answers):
        w = activity if cap is None else np.where(posted < cap, activity, 0.0)
        pick = rng.choice(len(answerers), p=w / w.sum())
        posted[pick] += 1
        authors[k] = answerers[pick]
    return authors


def generate_network(params):
    """Sample a vote dataset whose gold labels are the planted levels.

    Each answer gets a quality equal to its author's level plus Gaussian
    noise. A voter judges it good when the quality reaches the median level
    of that answer's voters, and votes +1 for good / -1 for bad with
    probability ``p_correct`` (the opposite otherwise).

    Returns
    -------
    dataset : VoteDataset
    gold : dict
        ``{user_id: level}`` with levels 1 (Beginner) .. 5 (Native).
    """
    rng = np.random.default_rng(params.seed)
    n = params.n_users
    width = len(str(n - 1))
    ids = [f"u{i:0{width}d}" for i in range(n)]
    levels = _assign_levels(params, rng)
    authors = _draw_authors(params, levels, rng)

    lo, hi = params.votes_per_answer
    answers = []
    votes = []
    awidth = len(str(max(params.n_answers - 1, 0)))
    for k, author in enumerate(authors):
        aid = f"a{k:0{awidth}d}"
        answers.append(Answer(aid, ids[author]))
        quality = levels[author] + params.quality_noise * rng.standard_normal()
        n_votes = int(rng.integers(lo, hi + 1))
        if n_votes == 0:
            continue
        candidates = np.delete(np.arange(n), author)
        voters = np.sort(rng.choice(candidates, size=n_votes, replace=False))
        good = quality >= np.median(levels[voters])
        correct = rng.random(n_votes) < params.p_correct
        for voter, ok in zip(voters, correct):
            polarity = 1 if good == ok else -1
            votes.append(VoteEvent(aid, ids[voter], polarity))

    users = [User(uid, _LABEL_FOR_LEVEL[int(lvl)]) for uid, lvl in zip(ids, levels)]
    gold = {uid: int(lvl) for uid, lvl in zip(ids, levels)}
    return VoteDataset.from_records(users, answers, votes), gold
