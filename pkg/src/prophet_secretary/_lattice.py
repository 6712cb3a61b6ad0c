"""Count lattice over groups of identical distributions.

A subset of the instance is summarised by how many members of each group it
holds. States are mixed-radix integers with digit c_j in 0..N_j; when every
group is a singleton this is exactly the bitmask over distributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAX_STATES = 1 << 20


class BudgetExceededError(RuntimeError):
    """The requested exact computation is too large to run."""


@dataclass
class Lattice:
    dists: list          # one representative per group
    sizes: list[int]     # N_j
    members: list[list[int]]  # instance indices per group
    strides: np.ndarray
    total: np.ndarray    # |c| per state

    @property
    def n_states(self) -> int:
        return len(self.total)

    def count(self, j: int, states: np.ndarray | None = None) -> np.ndarray:
        """c_j for each state (all states by default)."""
        if states is None:
            states = np.arange(self.n_states, dtype=np.int64)
        return (states // self.strides[j]) % (self.sizes[j] + 1)

    def layer(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.total == k)

    def multiplicity(self, drop_group: int | None = None) -> np.ndarray:
        """Number of concrete subsets behind each state.

        With ``drop_group=j`` it counts subsets avoiding one fixed member of
        group j (zero where c_j = N_j).
        """
        m = np.ones(self.n_states)
        for j, N in enumerate(self.sizes):
            top = N - 1 if j == drop_group else N
            c = self.count(j)
            m *= np.array([math.comb(top, int(x)) if x <= top else 0 for x in range(N + 1)])[c]
        return m


def group_distributions(distributions) -> Lattice:
    reps, members = [], []
    for i, d in enumerate(distributions):
        for j, r in enumerate(reps):
            if r == d:
                members[j].append(i)
                break
        else:
            reps.append(d)
            members.append([i])
    sizes = [len(m) for m in members]
    n_states = math.prod(N + 1 for N in sizes)
    if n_states > MAX_STATES:
        raise BudgetExceededError(
            f"exact DP needs {n_states} states (limit {MAX_STATES}); "
            "too many distinct distributions"
        )
    strides = np.cumprod([1] + [N + 1 for N in sizes[:-1]]).astype(np.int64)
    idx = np.arange(n_states, dtype=np.int64)
    total = np.zeros(n_states, dtype=np.int64)
    for s, N in zip(strides, sizes):
        total += (idx // s) % (N + 1)
    return Lattice(reps, sizes, members, strides, total)
