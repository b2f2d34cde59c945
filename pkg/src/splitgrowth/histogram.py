"""Degree histograms: (degree, count) pairs with derived node and edge totals."""

from collections.abc import Mapping

import numpy as np


class HistogramError(ValueError):
    pass


class DegreeHistogram:
    """Immutable histogram of node degrees.

    Degrees are positive integers and counts positive integers; zero-degree
    entries given at construction are removed and tallied in
    ``dropped_zeros``, because the model assigns them no probability.

    Attributes:
        degrees: sorted int64 array of distinct degrees.
        counts: int64 array, number of nodes at each degree.
        dropped_zeros: nodes of degree 0 removed at ingestion.
    """

    __slots__ = ("degrees", "counts", "dropped_zeros")

    def __init__(self, degrees, counts, dropped_zeros=0):
        d = np.asarray(degrees, dtype=np.int64).ravel()
        c = np.asarray(counts, dtype=np.int64).ravel()
        if d.shape != c.shape:
            raise HistogramError("degrees and counts differ in length")
        if np.any(d < 0):
            raise HistogramError("negative degree")
        if np.any(c < 0):
            raise HistogramError("negative count")
        zero = d == 0
        dropped = int(dropped_zeros) + int(c[zero].sum())
        d, c = d[~zero], c[~zero]
        keep = c > 0
        d, c = d[keep], c[keep]
        order = np.argsort(d, kind="stable")
        d, c = d[order], c[order]
        if len(d) > 1 and np.any(np.diff(d) == 0):
            # merge repeated degrees
            d, inv = np.unique(d, return_inverse=True)
            c = np.bincount(inv, weights=c).astype(np.int64)
        d.setflags(write=False)
        c.setflags(write=False)
        object.__setattr__(self, "degrees", d)
        object.__setattr__(self, "counts", c)
        object.__setattr__(self, "dropped_zeros", dropped)

    def __setattr__(self, name, value):
        raise AttributeError("DegreeHistogram is immutable")

    @classmethod
    def from_mapping(cls, bins: Mapping, dropped_zeros=0):
        items = sorted(bins.items())
        return cls([d for d, _ in items], [c for _, c in items], dropped_zeros)

    @classmethod
    def from_degrees(cls, degrees):
        """Histogram a sequence of per-node degrees (zeros are dropped)."""
        x = np.asarray(degrees, dtype=np.int64).ravel()
        if x.size == 0:
            return cls([], [])
        d, c = np.unique(x, return_counts=True)
        return cls(d, c)

    @property
    def k(self):
        return int(self.counts.sum())

    @property
    def t(self):
        return int((self.degrees * self.counts).sum())

    @property
    def bins(self):
        return {int(d): int(c) for d, c in zip(self.degrees, self.counts)}

    @property
    def max_degree(self):
        return int(self.degrees[-1]) if len(self.degrees) else 0

    def is_empty(self):
        return len(self.degrees) == 0

    def scaled(self, factor):
        """Histogram with every count multiplied by ``factor``."""
        return DegreeHistogram(self.degrees, self.counts * int(factor),
                               self.dropped_zeros * int(factor))

    def with_node(self, degree):
        b = self.bins
        b[degree] = b.get(degree, 0) + 1
        return DegreeHistogram.from_mapping(b, self.dropped_zeros)

    def expand(self):
        """Per-node degree array (sorted)."""
        return np.repeat(self.degrees, self.counts)

    def __eq__(self, other):
        if not isinstance(other, DegreeHistogram):
            return NotImplemented
        return (np.array_equal(self.degrees, other.degrees)
                and np.array_equal(self.counts, other.counts)
                and self.dropped_zeros == other.dropped_zeros)

    def __hash__(self):
        return hash((self.degrees.tobytes(), self.counts.tobytes(), self.dropped_zeros))

    def __len__(self):
        return len(self.degrees)

    def __repr__(self):
        b = self.bins
        if len(b) > 8:
            head = ", ".join(f"{d}: {c}" for d, c in list(b.items())[:8])
            shown = "{" + head + ", ...}"
        else:
            shown = repr(b)
        return f"DegreeHistogram({shown}, k={self.k}, t={self.t}, dropped_zeros={self.dropped_zeros})"
