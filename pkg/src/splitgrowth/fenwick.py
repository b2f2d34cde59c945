"""Binary indexed (Fenwick) tree over non-negative integer weights.

The free functions are numba-compiled so the growth kernels can call them
in their inner loop; ``FenwickTree`` wraps them for use from Python.
Trees are stored 1-indexed in an int64 array of length ``capacity + 1``;
item ``i`` (0-based) lives at tree position ``i + 1``.
"""

import numba
import numpy as np


@numba.njit(cache=True)
def fw_add(tree, i, delta):
    j = i + 1
    n = tree.shape[0]
    while j < n:
        tree[j] += delta
        j += j & -j


@numba.njit(cache=True)
def fw_prefix(tree, i):
    """Sum of weights of items ``0..i`` inclusive."""
    j = i + 1
    s = 0
    while j > 0:
        s += tree[j]
        j -= j & -j
    return s


@numba.njit(cache=True)
def fw_find(tree, x):
    """Smallest item index whose inclusive prefix sum exceeds ``x``.

    With ``0 <= x < total`` this selects item ``i`` with probability
    ``weight[i] / total`` when ``x`` is uniform on ``{0..total-1}``.
    """
    n = tree.shape[0]
    bit = 1
    while bit * 2 < n:
        bit *= 2
    pos = 0
    while bit > 0:
        nxt = pos + bit
        if nxt < n and tree[nxt] <= x:
            pos = nxt
            x -= tree[nxt]
        bit >>= 1
    return pos


@numba.njit(cache=True)
def fw_build(tree, weights, count):
    tree[:] = 0
    n = tree.shape[0]
    for i in range(count):
        tree[i + 1] = weights[i]
    for j in range(1, n):
        p = j + (j & -j)
        if p < n:
            tree[p] += tree[j]


class FenwickTree:
    """Cumulative-weight tree with O(log n) update and weighted search."""

    def __init__(self, capacity, weights=None):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.tree = np.zeros(capacity + 1, dtype=np.int64)
        self.capacity = capacity
        if weights is not None:
            weights = np.asarray(weights, dtype=np.int64)
            if len(weights) > capacity:
                raise ValueError("more weights than capacity")
            if np.any(weights < 0):
                raise ValueError("weights must be non-negative")
            fw_build(self.tree, weights, len(weights))

    def add(self, i, delta):
        if not 0 <= i < self.capacity:
            raise IndexError(i)
        fw_add(self.tree, i, delta)

    def prefix(self, i):
        if not 0 <= i < self.capacity:
            raise IndexError(i)
        return int(fw_prefix(self.tree, i))

    @property
    def total(self):
        return self.prefix(self.capacity - 1)

    def find(self, x):
        if not 0 <= x < self.total:
            raise ValueError(f"x={x} outside [0, {self.total})")
        return int(fw_find(self.tree, x))

    def sample(self, rng):
        """Draw an index with probability proportional to its weight."""
        total = self.total
        return self.find(min(int(rng.random() * total), total - 1))
