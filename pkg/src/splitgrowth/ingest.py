"""Reading and writing degree data.

File formats
------------
Histogram CSV
    header ``degree,count`` then one ``<int>,<int>`` row per degree,
    ascending. Degree 0 is accepted on input and counted as dropped; on
    output a ``0,<n>`` row records ``dropped_zeros`` so files round-trip.
Edge list TSV
    ``source<TAB>target`` per line; blank lines and lines starting with
    ``#`` are ignored. Repeated edges and self-loops are kept.
CCDF CSV
    header ``degree,ccdf`` (or ``degree,pmf,cdf,ccdf`` for model tables).

Floats are written with Python's shortest round-trip ``repr``, which is
locale independent and stable across platforms.
"""

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .histogram import DegreeHistogram


class ParseError(ValueError):
    def __init__(self, path, lineno, msg):
        self.path = str(path)
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {msg}")


def fmt_float(x):
    return repr(float(x))


# -- histograms ---------------------------------------------------------------


def parse_histogram(lines, path="<input>"):
    bins = {}
    dropped = 0
    header_seen = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line:
            continue
        if not header_seen:
            if [p.strip() for p in line.split(",")] != ["degree", "count"]:
                raise ParseError(path, lineno, "expected header 'degree,count'")
            header_seen = True
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise ParseError(path, lineno, f"expected 2 fields, got {len(parts)}")
        try:
            d, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(path, lineno, f"non-integer field in {line!r}") from None
        if d < 0 or c < 0:
            raise ParseError(path, lineno, "negative degree or count")
        if d == 0:
            dropped += c
            continue
        if d in bins:
            raise ParseError(path, lineno, f"degree {d} listed twice")
        if c:
            bins[d] = c
    if not header_seen:
        raise ParseError(path, 1, "empty file, expected header 'degree,count'")
    return DegreeHistogram.from_mapping(bins, dropped)


def read_histogram(path):
    with open(path, encoding="utf-8") as fh:
        return parse_histogram(fh, path)


def format_histogram(hist):
    rows = ["degree,count"]
    if hist.dropped_zeros:
        rows.append(f"0,{hist.dropped_zeros}")
    rows.extend(f"{d},{c}" for d, c in zip(hist.degrees.tolist(), hist.counts.tolist()))
    return "\n".join(rows) + "\n"


def write_histogram(hist, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_histogram(hist))


# -- edge lists ---------------------------------------------------------------


@dataclass(frozen=True)
class EdgeList:
    """Directed multigraph as an ordered list of ``(source, target)`` names.

    ``extra_nodes`` lists nodes that may have no edges at all (they count
    as zero-degree nodes in histograms). ``skipped`` is a tally of constructs an extractor
    chose not to turn into edges.
    """

    edges: tuple
    extra_nodes: tuple = ()
    skipped: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for s, t in self.edges:
            if not s or not t:
                raise ValueError("node names must be non-empty")

    @property
    def nodes(self):
        seen = {}
        for s, t in self.edges:
            seen.setdefault(s, None)
            seen.setdefault(t, None)
        for n in self.extra_nodes:
            seen.setdefault(n, None)
        return tuple(seen)

    def __len__(self):
        return len(self.edges)


def parse_edge_list(lines, path="<input>"):
    edges = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ParseError(path, lineno, f"expected 'source<TAB>target', got {len(parts)} field(s)")
        s, t = parts[0].strip(), parts[1].strip()
        if not s or not t:
            raise ParseError(path, lineno, "empty node name")
        edges.append((s, t))
    return EdgeList(tuple(edges))


def read_edge_list(path):
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, path)


def format_edge_list(el):
    return "".join(f"{s}\t{t}\n" for s, t in el.edges)


def write_edge_list(el, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_edge_list(el))


def histograms_from_edges(el):
    """Out- and in-degree histograms of an edge list.

    Nodes with no out-edges (or no in-edges) are tallied in the
    corresponding histogram's ``dropped_zeros``.
    """
    out_deg = Counter(s for s, _ in el.edges)
    in_deg = Counter(t for _, t in el.edges)
    nodes = el.nodes
    out_zero = sum(1 for n in nodes if n not in out_deg)
    in_zero = sum(1 for n in nodes if n not in in_deg)
    out_h = DegreeHistogram.from_mapping(Counter(out_deg.values()), out_zero)
    in_h = DegreeHistogram.from_mapping(Counter(in_deg.values()), in_zero)
    return out_h, in_h


# -- cumulative distributions -------------------------------------------------


@dataclass(frozen=True)
class CcdfTable:
    """Points ``(degree, fraction of nodes with degree >= degree)``."""

    degrees: np.ndarray
    fractions: np.ndarray

    def __post_init__(self):
        d, f = self.degrees, self.fractions
        if len(d) != len(f):
            raise ValueError("length mismatch")
        if len(d) and (np.any(np.diff(d) <= 0) or np.any(np.diff(f) > 0)
                       or f[0] > 1.0 or np.any(f <= 0.0)):
            raise ValueError("CCDF must have increasing degrees and non-increasing fractions in (0, 1]")

    @property
    def points(self):
        return list(zip(self.degrees.tolist(), self.fractions.tolist()))


def ccdf(hist):
    """Empirical CCDF evaluated at every observed degree."""
    c = hist.counts
    at_least = np.cumsum(c[::-1])[::-1]
    return CcdfTable(hist.degrees.copy(), at_least / hist.k)


def format_ccdf(table):
    rows = ["degree,ccdf"]
    rows.extend(f"{d},{fmt_float(f)}" for d, f in zip(table.degrees.tolist(), table.fractions.tolist()))
    return "\n".join(rows) + "\n"


def write_ccdf(table, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_ccdf(table))


def format_dist_table(degrees, pmf, cdf, sf):
    """Model table; ``ccdf`` is ``P(X >= degree)`` to match the empirical CCDF."""
    rows = ["degree,pmf,cdf,ccdf"]
    for d, p, c, s in zip(np.asarray(degrees).tolist(), pmf, cdf, sf):
        rows.append(f"{d},{fmt_float(p)},{fmt_float(c)},{fmt_float(s)}")
    return "\n".join(rows) + "\n"
