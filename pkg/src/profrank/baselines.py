"""Comparison measures: raw incoming vote counts and CEFR vocabulary level."""

import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .evaluation import gold_vector, spearman, theta_sweep
from .graph import explicit_count_matrices, incoming_vote_counts

__all__ = [
    "CEFR_LEVELS",
    "CefrProfileSet",
    "CefrScore",
    "votes_baseline",
    "load_cefr_profiles",
    "tokenize",
    "tokenize_answers",
    "cefr_score",
    "cefr_scores",
    "cefr_baseline_correlation",
]

CEFR_LEVELS = ("A1", "A2", "B1", "B2", "C1", "C2")

# letter runs, joined by single internal apostrophes or hyphens
_TOKEN = re.compile(r"[^\W\d_]+(?:['’-][^\W\d_]+)*")


@dataclass(frozen=True)
class CefrProfileSet:
    """Word lists of the six CEFR levels, A1 first."""

    levels: tuple

    def __post_init__(self):
        if len(self.levels) != len(CEFR_LEVELS):
            raise ValueError(f"expected {len(CEFR_LEVELS)} word sets")
        for name, words in zip(CEFR_LEVELS, self.levels):
            if not words:
                raise ValueError(f"empty vocabulary profile for {name}")

    @property
    def sizes(self):
        return {name: len(w) for name, w in zip(CEFR_LEVELS, self.levels)}

    def overlaps(self):
        """Symmetric 6x6 matrix of common-word counts; diagonal holds sizes."""
        k = len(self.levels)
        out = np.zeros((k, k), dtype=np.int64)
        for i in range(k):
            for j in range(i, k):
                out[i, j] = out[j, i] = len(self.levels[i] & self.levels[j])
        return out

    def report(self):
        return {
            "sizes": self.sizes,
            "overlaps": self.overlaps().tolist(),
            "multiword_entries": {
                name: sum(1 for w in words if len(w.split()) > 1)
                for name, words in zip(CEFR_LEVELS, self.levels)
            },
        }


@dataclass(frozen=True)
class CefrScore:
    overlaps: tuple
    level: float | None

    @property
    def defined(self):
        return self.level is not None


def votes_baseline(dataset, config, gold=None):
    """Spearman between incoming vote counts and gold over all labeled users."""
    g = gold_vector(dataset, gold)
    if not np.any(~np.isnan(g)):
        raise ValueError("no labeled users")
    counts = incoming_vote_counts(dataset, config)
    mask = ~np.isnan(g)
    return spearman(counts[mask], g[mask])


def load_cefr_profiles(directory):
    """Read ``A1.txt`` .. ``C2.txt``, one word per line, into lowercase sets."""
    directory = Path(directory)
    levels = []
    for name in CEFR_LEVELS:
        path = directory / f"{name}.txt"
        if not path.is_file():
            raise FileNotFoundError(f"missing vocabulary profile: {path}")
        with open(path, encoding="utf-8") as f:
            words = {line.strip().lower() for line in f}
        words.discard("")
        if not words:
            raise ValueError(f"empty vocabulary profile: {path}")
        levels.append(frozenset(words))
    return CefrProfileSet(tuple(levels))


def tokenize(text):
    return {m.group(0).lower() for m in _TOKEN.finditer(text or "")}


def tokenize_answers(dataset, user):
    """Distinct lowercase word types across all answers written by ``user``."""
    words = set()
    for a in dataset.answers:
        if a.author == user:
            words |= tokenize(a.text)
    return words


def cefr_score(words, profiles):
    """Weighted average CEFR level (1 = A1 .. 6 = C2) of a word-type set.

    A word listed under several levels counts toward each of them. The
    level is ``None`` when no word appears in any list.
    """
    words = set(words)
    overlaps = tuple(len(words & level) for level in profiles.levels)
    total = sum(overlaps)
    if total == 0:
        return CefrScore(overlaps, None)
    level = math.fsum(i * w for i, w in enumerate(overlaps, start=1)) / total
    return CefrScore(overlaps, level)


def cefr_scores(dataset, profiles):
    """Per-user CEFR level for authors of at least one answer, NaN otherwise."""
    by_author = {}
    for a in dataset.answers:
        by_author.setdefault(a.author, set()).update(tokenize(a.text))
    out = np.full(dataset.n_users, np.nan)
    for uid, words in by_author.items():
        s = cefr_score(words, profiles)
        if s.defined:
            out[dataset.user_index[uid]] = s.level
    return out


def cefr_baseline_correlation(dataset, profiles, gold=None, counts=None):
    """Theta-swept Spearman between CEFR levels and gold.

    Parameters
    ----------
    counts : array-like, optional
        Incoming vote counts driving the threshold. Defaults to explicit
        votes only, the only signal comparable with answer authorship.
    """
    scores = cefr_scores(dataset, profiles)
    if np.all(np.isnan(scores)):
        raise ValueError("no user could be scored against the vocabulary profiles")
    if counts is None:
        plus, minus = explicit_count_matrices(dataset)
        counts = plus.sum(axis=1) + minus.sum(axis=1)
    return theta_sweep(scores, counts, gold_vector(dataset, gold))
