"""Implicit votes derived from users who voted on the same answer.

Two voters that agree on an answer exchange mutual agreement votes (iav);
two voters that disagree exchange one opposition vote each way (iov), where
the sign of an iov edge is the polarity of its source voter.
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["VoterPool", "voter_pools", "implicit_count_matrices"]


@dataclass(frozen=True)
class VoterPool:
    answer: str
    positives: frozenset
    negatives: frozenset

    @property
    def size(self):
        return len(self.positives) + len(self.negatives)


def voter_pools(dataset):
    """Group vote events by answer.

    Returns one pool per answer that received at least one vote, in the
    order answers appear in the dataset.
    """
    pos = {}
    neg = {}
    for v in dataset.votes:
        (pos if v.polarity > 0 else neg).setdefault(v.answer, set()).add(v.voter)
    pools = []
    for a in dataset.answers:
        if a.id in pos or a.id in neg:
            pools.append(
                VoterPool(a.id, frozenset(pos.get(a.id, ())), frozenset(neg.get(a.id, ())))
            )
    return pools


def implicit_count_matrices(dataset):
    """Raw implicit vote counts accumulated over all voter pools.

    Returns
    -------
    iav_plus, iav_minus, iov_plus, iov_minus : ndarray of shape (n, n), int64
        Row is the recipient, column the source voter. ``iav_*`` are
        symmetric. ``iov_plus[q, p]`` counts answers on which ``p`` voted +1
        and ``q`` voted -1; ``iov_minus`` is its transpose.
    """
    n = dataset.n_users
    index = dataset.user_index
    iav_plus = np.zeros((n, n), dtype=np.int64)
    iav_minus = np.zeros((n, n), dtype=np.int64)
    iov_plus = np.zeros((n, n), dtype=np.int64)

    for pool in voter_pools(dataset):
        p = np.array(sorted(index[u] for u in pool.positives), dtype=np.intp)
        q = np.array(sorted(index[u] for u in pool.negatives), dtype=np.intp)
        # indices within a pool are unique, so fancy-indexed += does not drop hits
        if len(p) > 1:
            iav_plus[np.ix_(p, p)] += 1
            iav_plus[p, p] -= 1
        if len(q) > 1:
            iav_minus[np.ix_(q, q)] += 1
            iav_minus[q, q] -= 1
        if len(p) and len(q):
            iov_plus[np.ix_(q, p)] += 1

    return iav_plus, iav_minus, iov_plus, iov_plus.T.copy()
