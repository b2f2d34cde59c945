"""Simulation of the node-splitting growth process and its variants.

Baseline process: start from one node with a self-loop. At every step
pick a parent node with probability proportional to its out-degree. With
probability ``1 - gamma`` add an edge from the parent to a target picked
in proportion to in-degree. Otherwise split the parent: the new node
takes ``r`` of its out-edges and ``s`` of its in-edges and receives a
connecting edge from the parent.

Variants:

``UNIFORM_ATTACH``
    edge targets are drawn uniformly over nodes instead of by in-degree.
``COPY_SPLIT``
    the new node receives duplicates of ``r`` of the parent's out-edges;
    the parent keeps all of its edges.
``BINOMIAL_SPLIT``
    each of the parent's out- and in-edges moves to the new node with
    probability 1/2, redrawn until the new node gets an out-edge and the
    parent keeps an in-edge.

The baseline and uniform-attachment processes only track degree counts.
The copy and binomial variants keep an explicit edge list (a multigraph:
self-loops and parallel edges are counted).
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .histogram import DegreeHistogram
from .rng import make_rng


class Variant(str, enum.Enum):
    BASELINE = "baseline"
    UNIFORM_ATTACH = "uniform"
    COPY_SPLIT = "copy"
    BINOMIAL_SPLIT = "binomial"

    @property
    def explicit(self):
        return self in (Variant.COPY_SPLIT, Variant.BINOMIAL_SPLIT)


_FORCE = {None: _kernels.FORCE_NONE, "edge": _kernels.FORCE_EDGE, "split": _kernels.FORCE_SPLIT}
_EXPLICIT_CODE = {Variant.COPY_SPLIT: _kernels.VAR_COPY,
                  Variant.BINOMIAL_SPLIT: _kernels.VAR_BINOMIAL}


@dataclass(frozen=True)
class ModelParams:
    gamma: float
    steps: int
    variant: Variant = Variant.BASELINE
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.gamma < 1.0:
            raise ValueError(f"gamma must lie in (0, 1), got {self.gamma}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ValueError(f"steps must be a positive integer, got {self.steps}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "variant", Variant(self.variant))


@dataclass
class GrowthState:
    """Degree sequences of a run.

    ``t`` is the total number of edges, equal to ``sum(v) == sum(w)``. For
    the baseline it also equals steps completed plus one (the initial
    self-loop). ``src``/``dst`` hold the explicit edge list for the copy
    and binomial variants and are ``None`` otherwise.
    """

    v: np.ndarray
    w: np.ndarray
    t: int
    src: np.ndarray = None
    dst: np.ndarray = None
    steps_done: int = 0
    n_splits: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def k(self):
        return len(self.v)

    @property
    def explicit(self):
        return self.src is not None

    def out_targets(self):
        """Per-node list of out-edge targets (explicit states only)."""
        if not self.explicit:
            raise ValueError("state carries no explicit edges")
        targets = [[] for _ in range(self.k)]
        for a, b in zip(self.src.tolist(), self.dst.tolist()):
            targets[a].append(b)
        return targets

    def check(self):
        """Raise ``AssertionError`` if a structural invariant is broken."""
        assert len(self.v) == len(self.w)
        assert int(self.v.sum()) == self.t == int(self.w.sum())
        assert self.k == 0 or (self.v.min() >= 1 and self.w.min() >= 1)
        if self.explicit:
            assert len(self.src) == len(self.dst) == self.t
            assert np.array_equal(np.bincount(self.src, minlength=self.k), self.v)
            assert np.array_equal(np.bincount(self.dst, minlength=self.k), self.w)
        return self

    def copy(self):
        return GrowthState(self.v.copy(), self.w.copy(), self.t,
                           None if self.src is None else self.src.copy(),
                           None if self.dst is None else self.dst.copy(),
                           self.steps_done, self.n_splits, dict(self.extra))

    def __eq__(self, other):
        if not isinstance(other, GrowthState):
            return NotImplemented
        same_edges = (self.src is None) == (other.src is None)
        if same_edges and self.src is not None:
            same_edges = (np.array_equal(self.src, other.src)
                          and np.array_equal(self.dst, other.dst))
        return (same_edges and self.t == other.t
                and np.array_equal(self.v, other.v)
                and np.array_equal(self.w, other.w))


def init_state(explicit=False):
    """One node carrying a single self-referencing edge."""
    one = np.ones(1, dtype=np.int64)
    if explicit:
        zero = np.zeros(1, dtype=np.int64)
        return GrowthState(one.copy(), one.copy(), 1, zero.copy(), zero.copy())
    return GrowthState(one.copy(), one.copy(), 1)


def _pick(weights, total, rng):
    # linear scan over cumulative weights; consumes one draw, same rule as
    # the Fenwick search in the compiled kernel
    x = min(int(rng.random() * total), total - 1)
    return int(np.searchsorted(np.cumsum(weights), x, side="right"))


def _draw_int(rng, n):
    return min(int(rng.random() * n), n - 1)


def apply_split(state, m, r, s):
    """Split node ``m`` with explicit proportions ``r`` (out) and ``s`` (in)."""
    vm, wm = int(state.v[m]), int(state.w[m])
    if not 1 <= r <= vm:
        raise ValueError(f"r must lie in 1..{vm}")
    if not 0 <= s <= wm - 1:
        raise ValueError(f"s must lie in 0..{wm - 1}")
    v = np.append(state.v, r)
    w = np.append(state.w, s + 1)
    v[m] = vm - r + 1
    w[m] = wm - s
    return GrowthState(v, w, state.t + 1, steps_done=state.steps_done,
                       n_splits=state.n_splits + 1)


def split_node(state, m, rng=None, *, r=None, s=None):
    """Split node ``m`` of a degree-only state.

    ``r`` is drawn uniformly from ``1..v_m`` and ``s`` from ``0..w_m-1``
    unless given. The new node gets out-degree ``r`` and in-degree
    ``s + 1``; the parent keeps ``v_m - r + 1`` and ``w_m - s``; one edge
    (the parent-to-child link) is added.
    """
    if not 0 <= m < state.k:
        raise IndexError(m)
    if r is None:
        r = 1 + _draw_int(rng, int(state.v[m]))
    if s is None:
        s = _draw_int(rng, int(state.w[m]))
    return apply_split(state, m, r, s)


def step(state, params, rng, force=None):
    """Apply one growth step and return the new state.

    ``force`` ("edge" or "split") overrides the branch coin after it is
    drawn, so forced and unforced runs stay aligned on the random stream.
    The degree-only path here selects nodes by a linear scan and serves as
    the reference for the compiled simulator.
    """
    if force not in _FORCE:
        raise ValueError(f"unknown force {force!r}")
    if params.variant.explicit:
        if not state.explicit:
            raise ValueError(f"{params.variant.value} needs an explicit-edge state")
        return _advance_explicit(state, params, rng, 1, force)
    m = _pick(state.v, state.t, rng)
    split = rng.random() < params.gamma
    if force is not None:
        split = force == "split"
    if split:
        new = split_node(state, m, rng)
        new.steps_done = state.steps_done + 1
        return new
    if params.variant is Variant.UNIFORM_ATTACH:
        n = _draw_int(rng, state.k)
    else:
        n = _pick(state.w, state.t, rng)
    v = state.v.copy()
    w = state.w.copy()
    v[m] += 1
    w[n] += 1
    return GrowthState(v, w, state.t + 1, steps_done=state.steps_done + 1,
                       n_splits=state.n_splits)


def variant_split(state, m, params, rng):
    """Split node ``m`` under the copy or binomial rule."""
    if not params.variant.explicit:
        raise ValueError(f"variant_split does not apply to {params.variant.value}")
    if not state.explicit:
        raise ValueError("variant_split needs an explicit-edge state")
    if not 0 <= m < state.k:
        raise IndexError(m)
    # worst case the copy rule adds v_m + 1 edges
    cap_e = state.t + int(state.v[m]) + 1
    src, dst, v, w = _grow(state, cap_e, state.k + 1)
    t = _kernels.split_explicit(src, dst, v, w, state.k, state.t, m,
                                _EXPLICIT_CODE[params.variant], rng)
    k = state.k + 1
    return GrowthState(v[:k].copy(), w[:k].copy(), int(t), src[:t].copy(), dst[:t].copy(),
                       state.steps_done, state.n_splits + 1)


def _grow(state, cap_e, cap_n):
    src = np.zeros(cap_e, dtype=np.int64)
    dst = np.zeros(cap_e, dtype=np.int64)
    v = np.zeros(cap_n, dtype=np.int64)
    w = np.zeros(cap_n, dtype=np.int64)
    src[:state.t] = state.src
    dst[:state.t] = state.dst
    v[:state.k] = state.v
    w[:state.k] = state.w
    return src, dst, v, w


def _advance_explicit(state, params, rng, n_steps, force=None):
    code = _EXPLICIT_CODE[params.variant]
    k, t = state.k, state.t
    src, dst, v, w = _grow(state, max(4 * t, 64), k + n_steps + 1)
    remaining = n_steps
    splits = 0
    while True:
        k, t, done, ns = _kernels.run_explicit(src, dst, v, w, k, t, remaining,
                                               params.gamma, code, _FORCE[force], rng)
        remaining -= done
        splits += ns
        if remaining == 0:
            break
        grown = GrowthState(v[:k], w[:k], t, src[:t], dst[:t])
        src, dst, _, _ = _grow(grown, 4 * t, len(v))
    return GrowthState(v[:k].copy(), w[:k].copy(), int(t), src[:t].copy(), dst[:t].copy(),
                       state.steps_done + n_steps, state.n_splits + splits)


def advance(state, params, rng, n_steps, force=None):
    """Apply ``n_steps`` steps with the compiled simulator."""
    if params.variant.explicit:
        if not state.explicit:
            raise ValueError(f"{params.variant.value} needs an explicit-edge state")
        return _advance_explicit(state, params, rng, n_steps, force)
    k = state.k
    v = np.zeros(k + n_steps, dtype=np.int64)
    w = np.zeros(k + n_steps, dtype=np.int64)
    v[:k] = state.v
    w[:k] = state.w
    k, t, ns = _kernels.run_degree(v, w, k, state.t, n_steps, params.gamma,
                                   params.variant is Variant.UNIFORM_ATTACH,
                                   _FORCE[force], rng)
    return GrowthState(v[:k].copy(), w[:k].copy(), int(t),
                       steps_done=state.steps_done + n_steps,
                       n_splits=state.n_splits + int(ns))


def simulate(params):
    """Run ``params.steps`` steps from the initial state; deterministic in ``params.seed``."""
    rng = make_rng(params.seed)
    return advance(init_state(params.variant.explicit), params, rng, params.steps)


def degree_histograms(state):
    """Return ``(out_hist, in_hist)`` counting nodes by out- and in-degree."""
    return DegreeHistogram.from_degrees(state.v), DegreeHistogram.from_degrees(state.w)
