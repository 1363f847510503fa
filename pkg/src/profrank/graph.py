"""Vote log ingestion and explicit vote count matrices.

Count matrices follow the column-voter convention: entry ``(i, j)`` is the
number of votes cast by user ``j`` toward user ``i``.
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = [
    "LEVELS",
    "DatasetError",
    "User",
    "Answer",
    "VoteEvent",
    "VoteDataset",
    "load_dataset",
    "load_dataset_dir",
    "write_dataset",
    "explicit_count_matrices",
    "signal_count_matrices",
    "incoming_vote_counts",
]

LEVELS = ("Native", "Fluid", "Advanced", "Intermediate", "Beginner")

USERS_FILE = "users.csv"
ANSWERS_FILE = "answers.csv"
VOTES_FILE = "votes.csv"


class DatasetError(ValueError):
    """Raised when a vote log is missing, malformed or inconsistent."""


@dataclass(frozen=True)
class User:
    id: str
    self_level: str | None = None


@dataclass(frozen=True)
class Answer:
    id: str
    author: str
    text: str = ""


@dataclass(frozen=True)
class VoteEvent:
    answer: str
    voter: str
    polarity: int


@dataclass(frozen=True, eq=False)
class VoteDataset:
    """Users, answers and signed votes of a collaborative network.

    Users are indexed in lexicographic order of their identifier, so every
    matrix and rank vector derived from the dataset is reproducible.
    Construct through :meth:`from_records` or :func:`load_dataset`.
    """

    users: tuple
    answers: tuple
    votes: tuple
    user_index: dict = field(repr=False)
    answer_index: dict = field(repr=False)

    @classmethod
    def from_records(cls, users, answers, votes):
        users = tuple(users)
        answers = tuple(answers)
        votes = tuple(votes)

        ids = [u.id for u in users]
        for uid in ids:
            if not isinstance(uid, str) or not uid:
                raise DatasetError("user id must be a non-empty string")
        if len(set(ids)) != len(ids):
            raise DatasetError("duplicate user id")
        for u in users:
            if u.self_level is not None and u.self_level not in LEVELS:
                raise DatasetError(f"user {u.id!r}: unknown level {u.self_level!r}")
        users = tuple(sorted(users, key=lambda u: u.id))
        user_index = {u.id: i for i, u in enumerate(users)}

        answer_index = {}
        for i, a in enumerate(answers):
            if not a.id:
                raise DatasetError("answer id must be a non-empty string")
            if a.id in answer_index:
                raise DatasetError(f"duplicate answer id {a.id!r}")
            if a.author not in user_index:
                raise DatasetError(f"answer {a.id!r}: unknown author {a.author!r}")
            answer_index[a.id] = i

        seen = set()
        for v in votes:
            _check_vote(v, answers, answer_index, user_index, seen)

        return cls(users, answers, votes, user_index, answer_index)

    @property
    def n_users(self):
        return len(self.users)

    @property
    def user_ids(self):
        return [u.id for u in self.users]

    def author_of(self, answer_id):
        return self.answers[self.answer_index[answer_id]].author

    def vote_arrays(self):
        """Return ``(recipient, voter, polarity)`` index arrays, one entry per vote."""
        recipient = np.fromiter(
            (self.user_index[self.author_of(v.answer)] for v in self.votes),
            dtype=np.intp,
            count=len(self.votes),
        )
        voter = np.fromiter(
            (self.user_index[v.voter] for v in self.votes),
            dtype=np.intp,
            count=len(self.votes),
        )
        polarity = np.fromiter(
            (v.polarity for v in self.votes), dtype=np.int8, count=len(self.votes)
        )
        return recipient, voter, polarity


def _check_vote(v, answers, answer_index, user_index, seen, where=""):
    if v.polarity not in (1, -1):
        raise DatasetError(f"{where}polarity must be 1 or -1, got {v.polarity!r}")
    if v.answer not in answer_index:
        raise DatasetError(f"{where}vote references unknown answer {v.answer!r}")
    if v.voter not in user_index:
        raise DatasetError(f"{where}vote references unknown user {v.voter!r}")
    if answers[answer_index[v.answer]].author == v.voter:
        raise DatasetError(f"{where}self-vote by {v.voter!r} on answer {v.answer!r}")
    key = (v.voter, v.answer)
    if key in seen:
        raise DatasetError(
            f"{where}duplicate vote by {v.voter!r} on answer {v.answer!r}"
        )
    seen.add(key)


def _read_rows(path, header):
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"missing file: {path}")
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        first = next(reader, None)
        if first is None or [h.strip() for h in first] != list(header):
            raise DatasetError(
                f"{path}:1: expected header {','.join(header)!r}, got {first!r}"
            )
        for row in reader:
            if not row:
                continue
            yield reader.line_num, row


def load_dataset(votes_path, answers_path, users_path):
    """Read and validate the three CSV files of a vote log.

    Parameters
    ----------
    votes_path, answers_path, users_path : path-like
        ``votes.csv`` (``answer_id,voter_id,polarity``), ``answers.csv``
        (``answer_id,author_id,text``) and ``users.csv`` (``user_id,level``).

    Returns
    -------
    VoteDataset

    Raises
    ------
    DatasetError
        On a missing file, a malformed row (with its line number), a
        duplicate or self vote, or a reference to an unknown user/answer.
    """
    users = []
    for line, row in _read_rows(users_path, ("user_id", "level")):
        if len(row) != 2 or not row[0]:
            raise DatasetError(f"{users_path}:{line}: malformed row {row!r}")
        level = row[1] or None
        if level is not None and level not in LEVELS:
            raise DatasetError(f"{users_path}:{line}: unknown level {level!r}")
        users.append(User(row[0], level))
    known_users = set()
    for u in users:
        if u.id in known_users:
            raise DatasetError(f"{users_path}: duplicate user id {u.id!r}")
        known_users.add(u.id)

    answers = []
    answer_ids = {}
    for line, row in _read_rows(answers_path, ("answer_id", "author_id", "text")):
        if len(row) not in (2, 3) or not row[0] or not row[1]:
            raise DatasetError(f"{answers_path}:{line}: malformed row {row!r}")
        if row[0] in answer_ids:
            raise DatasetError(f"{answers_path}:{line}: duplicate answer id {row[0]!r}")
        if row[1] not in known_users:
            raise DatasetError(f"{answers_path}:{line}: unknown author {row[1]!r}")
        answer_ids[row[0]] = len(answers)
        answers.append(Answer(row[0], row[1], row[2] if len(row) == 3 else ""))

    votes = []
    seen = set()
    for line, row in _read_rows(votes_path, ("answer_id", "voter_id", "polarity")):
        if len(row) != 3 or row[2].strip() not in ("1", "-1", "+1"):
            raise DatasetError(f"{votes_path}:{line}: malformed row {row!r}")
        v = VoteEvent(row[0], row[1], int(row[2]))
        _check_vote(
            v, answers, answer_ids, known_users, seen, where=f"{votes_path}:{line}: "
        )
        votes.append(v)

    return VoteDataset.from_records(users, answers, votes)


def load_dataset_dir(directory):
    """Load ``votes.csv``, ``answers.csv`` and ``users.csv`` from one directory."""
    directory = Path(directory)
    if not directory.is_dir():
        raise DatasetError(f"missing data directory: {directory}")
    return load_dataset(
        directory / VOTES_FILE, directory / ANSWERS_FILE, directory / USERS_FILE
    )


def write_dataset(dataset, directory):
    """Write a dataset as the three CSV files, rows in a fixed order."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    with open(directory / USERS_FILE, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["user_id", "level"])
        for u in dataset.users:
            w.writerow([u.id, u.self_level or ""])
    with open(directory / ANSWERS_FILE, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["answer_id", "author_id", "text"])
        for a in dataset.answers:
            w.writerow([a.id, a.author, a.text])
    with open(directory / VOTES_FILE, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["answer_id", "voter_id", "polarity"])
        for v in dataset.votes:
            w.writerow([v.answer, v.voter, v.polarity])


def explicit_count_matrices(dataset):
    """Count positive and negative explicit votes between users.

    Returns
    -------
    plus, minus : ndarray of shape (n_users, n_users), dtype int64
        ``plus[a, b]`` is the number of +1 votes user ``b`` gave to answers
        written by user ``a``. Votes on different answers accumulate.
    """
    n = dataset.n_users
    plus = np.zeros((n, n), dtype=np.int64)
    minus = np.zeros((n, n), dtype=np.int64)
    recipient, voter, polarity = dataset.vote_arrays()
    pos = polarity > 0
    np.add.at(plus, (recipient[pos], voter[pos]), 1)
    np.add.at(minus, (recipient[~pos], voter[~pos]), 1)
    return plus, minus


def signal_count_matrices(dataset):
    """All six raw count matrices keyed by signal type name."""
    from .implicit import implicit_count_matrices

    exp_plus, exp_minus = explicit_count_matrices(dataset)
    iav_plus, iav_minus, iov_plus, iov_minus = implicit_count_matrices(dataset)
    return {
        "exp+": exp_plus,
        "iav+": iav_plus,
        "iav-": iav_minus,
        "exp-": exp_minus,
        "iov+": iov_plus,
        "iov-": iov_minus,
    }


def incoming_vote_counts(counts, config):
    """Raw incoming votes per user over the signal types ``config`` selects.

    Parameters
    ----------
    counts : VoteDataset or dict
        Either a dataset or the output of :func:`signal_count_matrices`.
    config : RankConfig

    Returns
    -------
    ndarray of shape (n_users,), dtype int64
    """
    if isinstance(counts, VoteDataset):
        counts = signal_count_matrices(counts)
    n = next(iter(counts.values())).shape[0]
    total = np.zeros(n, dtype=np.int64)
    for t in config.types:
        total += counts[t].sum(axis=1)
    return total
