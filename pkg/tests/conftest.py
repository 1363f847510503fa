import numpy as np
import pytest

from profrank.evaluation import objective, theta_sweep
from profrank.graph import (
    LEVELS,
    Answer,
    User,
    VoteDataset,
    VoteEvent,
    incoming_vote_counts,
)
from profrank.rank import proficiency_rank


def make_dataset(answers, votes, users=None, levels=None):
    """Build a dataset from ``{answer_id: author}`` and ``(answer, voter, polarity)`` rows."""
    levels = levels or {}
    ids = set(answers.values()) | {v for _, v, _ in votes} | set(users or ())
    user_objs = [User(u, levels.get(u)) for u in sorted(ids)]
    answer_objs = [Answer(a, author) for a, author in answers.items()]
    vote_objs = [VoteEvent(a, v, p) for a, v, p in votes]
    return VoteDataset.from_records(user_objs, answer_objs, vote_objs)


def random_dataset(rng, n_users=12, n_answers=10, max_voters=8, p_plus=0.6, labeled=True):
    """Random valid dataset with at most ``max_voters`` votes per answer."""
    ids = [f"u{i:02d}" for i in range(n_users)]
    users = [
        User(u, LEVELS[rng.integers(len(LEVELS))] if labeled else None) for u in ids
    ]
    answers = []
    votes = []
    for k in range(n_answers):
        aid = f"a{k:02d}"
        author = int(rng.integers(n_users))
        answers.append(Answer(aid, ids[author]))
        others = [i for i in range(n_users) if i != author]
        m = int(rng.integers(0, min(max_voters, len(others)) + 1))
        for v in rng.choice(others, size=m, replace=False):
            votes.append(VoteEvent(aid, ids[v], 1 if rng.random() < p_plus else -1))
    return VoteDataset.from_records(users, answers, votes)


def pair_enumeration_oracle(dataset):
    """Implicit count matrices by walking every ordered voter pair per answer."""
    n = dataset.n_users
    idx = dataset.user_index
    out = {k: [[0] * n for _ in range(n)] for k in ("iav+", "iav-", "iov+", "iov-")}
    by_answer = {}
    for v in dataset.votes:
        by_answer.setdefault(v.answer, []).append((v.voter, v.polarity))
    for voters in by_answer.values():
        for src, ps in voters:
            for dst, pd in voters:
                if src == dst:
                    continue
                if ps == pd:
                    key = "iav+" if ps > 0 else "iav-"
                else:
                    key = "iov+" if ps > 0 else "iov-"
                out[key][idx[dst]][idx[src]] += 1
    return {k: np.array(v, dtype=np.int64) for k, v in out.items()}


def dense_pagerank_oracle(m_hat, iterations=10_000):
    n = m_hat.shape[0]
    r = np.full(n, 1.0 / n)
    for _ in range(iterations):
        r = m_hat @ r
    return r


def exhaustive_d_oracle(counts, gold, base):
    """Objective at every d on the 0.01 grid; best by value then smallest d."""
    votes = incoming_vote_counts(counts, base)
    values = {}
    for k in range(101):
        cfg = base.with_params(d=k / 100)
        values[k] = objective(theta_sweep(proficiency_rank(counts, cfg).pr, votes, gold))
    best = min(values, key=lambda k: (values[k] is None, -(values[k] or 0.0), k))
    return best / 100, values[best]


# Five-node example graph: E -> A, A -> B, A -> C, B -> D, B -> E, C -> D, D -> E
EXAMPLE_NODES = ("A", "B", "C", "D", "E")
EXAMPLE_EDGES = (
    ("E", "A"),
    ("A", "B"),
    ("A", "C"),
    ("B", "D"),
    ("B", "E"),
    ("C", "D"),
    ("D", "E"),
)
EXAMPLE_RANKS = (0.254, 0.137, 0.137, 0.207, 0.265)


def example_adjacency():
    """Raw adjacency of the example graph, row = target, column = source."""
    pos = {name: i for i, name in enumerate(EXAMPLE_NODES)}
    m = np.zeros((5, 5))
    for src, dst in EXAMPLE_EDGES:
        m[pos[dst], pos[src]] = 1.0
    return m


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def csn_dataset():
    """Answer by D voted +1 by A and C, -1 by E and F."""
    return make_dataset(
        {"ans": "D"},
        [("ans", "A", 1), ("ans", "C", 1), ("ans", "E", -1), ("ans", "F", -1)],
        users=["B"],
    )
