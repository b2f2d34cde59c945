"""Compiled inner loops for the growth simulators.

Random draw order is part of the contract: the pure-Python ``step`` in
``growth`` consumes ``rng.random()`` in exactly the same sequence, so the
two paths produce identical states from identical generators.

Per degree-only step:
    parent draw, branch draw, then either a target draw (edge) or the
    r and s draws (split).
Per explicit-edge step:
    parent draw (uniform edge, take its source), branch draw, then either
    a target draw (uniform edge, take its destination) or the variant's
    split draws.
"""

import numba
import numpy as np

from .fenwick import fw_add, fw_build, fw_find

FORCE_NONE = 0
FORCE_EDGE = 1
FORCE_SPLIT = 2

VAR_COPY = 0
VAR_BINOMIAL = 1


@numba.njit(cache=True)
def _draw_index(rng, n):
    i = int(rng.random() * n)
    if i >= n:
        i = n - 1
    return i


@numba.njit(cache=True)
def run_degree(v, w, k, t, n_steps, gamma, uniform_attach, force, rng):
    """Advance a degree-only state in place; returns ``(k, t, n_splits)``.

    ``v`` and ``w`` must have room for ``k + n_steps`` nodes.
    """
    cap = v.shape[0]
    tv = np.zeros(cap + 1, dtype=np.int64)
    tw = np.zeros(cap + 1, dtype=np.int64)
    fw_build(tv, v, k)
    fw_build(tw, w, k)
    n_splits = 0
    for _ in range(n_steps):
        m = fw_find(tv, _draw_index(rng, t))
        b = rng.random()
        split = b < gamma
        if force == FORCE_EDGE:
            split = False
        elif force == FORCE_SPLIT:
            split = True
        if not split:
            if uniform_attach:
                n = _draw_index(rng, k)
            else:
                n = fw_find(tw, _draw_index(rng, t))
            v[m] += 1
            w[n] += 1
            fw_add(tv, m, 1)
            fw_add(tw, n, 1)
        else:
            vm = v[m]
            wm = w[m]
            r = 1 + _draw_index(rng, vm)
            s = _draw_index(rng, wm)
            v[k] = r
            w[k] = s + 1
            v[m] = vm - r + 1
            w[m] = wm - s
            fw_add(tv, k, r)
            fw_add(tw, k, s + 1)
            fw_add(tv, m, 1 - r)
            fw_add(tw, m, -s)
            k += 1
            n_splits += 1
        t += 1
    return k, t, n_splits


# -- explicit-edge multigraph -------------------------------------------------
#
# Edges live in parallel arrays src/dst. Each node keeps two doubly linked
# lists threaded through the edge arrays: its out-edges (by src) and its
# in-edges (by dst). This gives O(1) edge moves and O(degree) enumeration.


@numba.njit(cache=True)
def _link(head, tail, nxt, prv, e, node):
    # append: edge ids are allocated in increasing order, so every list
    # stays sorted by edge id however it was built
    last = tail[node]
    nxt[e] = -1
    prv[e] = last
    if last != -1:
        nxt[last] = e
    else:
        head[node] = e
    tail[node] = e


@numba.njit(cache=True)
def _unlink(head, tail, nxt, prv, e, node):
    p = prv[e]
    n = nxt[e]
    if p != -1:
        nxt[p] = n
    else:
        head[node] = n
    if n != -1:
        prv[n] = p
    else:
        tail[node] = p


@numba.njit(cache=True)
def _collect(head, nxt, node, buf):
    c = 0
    e = head[node]
    while e != -1:
        buf[c] = e
        c += 1
        e = nxt[e]
    return c


@numba.njit(cache=True)
def _build_lists(src, dst, n_edges, n_nodes_cap, n_edges_cap):
    out_head = np.full(n_nodes_cap, -1, dtype=np.int64)
    out_tail = np.full(n_nodes_cap, -1, dtype=np.int64)
    in_head = np.full(n_nodes_cap, -1, dtype=np.int64)
    in_tail = np.full(n_nodes_cap, -1, dtype=np.int64)
    out_next = np.full(n_edges_cap, -1, dtype=np.int64)
    out_prev = np.full(n_edges_cap, -1, dtype=np.int64)
    in_next = np.full(n_edges_cap, -1, dtype=np.int64)
    in_prev = np.full(n_edges_cap, -1, dtype=np.int64)
    for e in range(n_edges):
        _link(out_head, out_tail, out_next, out_prev, e, src[e])
        _link(in_head, in_tail, in_next, in_prev, e, dst[e])
    return out_head, out_tail, out_next, out_prev, in_head, in_tail, in_next, in_prev


@numba.njit(cache=True)
def _add_edge(src, dst, v, w, lists, e, a, b):
    out_head, out_tail, out_next, out_prev, in_head, in_tail, in_next, in_prev = lists
    src[e] = a
    dst[e] = b
    _link(out_head, out_tail, out_next, out_prev, e, a)
    _link(in_head, in_tail, in_next, in_prev, e, b)
    v[a] += 1
    w[b] += 1


@numba.njit(cache=True)
def _split_binomial(src, dst, v, w, lists, k, t, m, rng, buf_o, buf_i, flip_o, flip_i):
    out_head, out_tail, out_next, out_prev, in_head, in_tail, in_next, in_prev = lists
    no = _collect(out_head, out_next, m, buf_o)
    ni = _collect(in_head, in_next, m, buf_i)
    while True:
        moved = 0
        for j in range(no):
            f = rng.random() < 0.5
            flip_o[j] = f
            if f:
                moved += 1
        kept = 0
        for j in range(ni):
            f = rng.random() < 0.5
            flip_i[j] = f
            if not f:
                kept += 1
        if moved >= 1 and kept >= 1:
            break
    new = k
    for j in range(no):
        if flip_o[j]:
            e = buf_o[j]
            _unlink(out_head, out_tail, out_next, out_prev, e, m)
            src[e] = new
            _link(out_head, out_tail, out_next, out_prev, e, new)
            v[m] -= 1
            v[new] += 1
    for j in range(ni):
        if flip_i[j]:
            e = buf_i[j]
            _unlink(in_head, in_tail, in_next, in_prev, e, m)
            dst[e] = new
            _link(in_head, in_tail, in_next, in_prev, e, new)
            w[m] -= 1
            w[new] += 1
    _add_edge(src, dst, v, w, lists, t, m, new)
    return t + 1


@numba.njit(cache=True)
def _split_copy(src, dst, v, w, lists, k, t, m, rng, buf_o):
    out_head, out_tail, out_next, out_prev, in_head, in_tail, in_next, in_prev = lists
    no = _collect(out_head, out_next, m, buf_o)
    r = 1 + _draw_index(rng, no)
    new = k
    # partial Fisher-Yates: first r slots become a uniform r-subset
    for j in range(r):
        idx = j + _draw_index(rng, no - j)
        tmp = buf_o[j]
        buf_o[j] = buf_o[idx]
        buf_o[idx] = tmp
    for j in range(r):
        _add_edge(src, dst, v, w, lists, t, new, dst[buf_o[j]])
        t += 1
    _add_edge(src, dst, v, w, lists, t, m, new)
    return t + 1


@numba.njit(cache=True)
def run_explicit(src, dst, v, w, k, t, n_steps, gamma, variant, force, rng):
    """Advance an explicit-edge state in place.

    Returns ``(k, t, steps_done, n_splits)``. Stops early (``steps_done <
    n_steps``) when the arrays may be too small for the next step; the
    caller grows them and resumes. No random draws are consumed for a step
    that is not executed.
    """
    n_edges_cap = src.shape[0]
    n_nodes_cap = v.shape[0]
    lists = _build_lists(src, dst, t, n_nodes_cap, n_edges_cap)
    buf_o = np.empty(n_edges_cap, dtype=np.int64)
    buf_i = np.empty(n_edges_cap, dtype=np.int64)
    flip_o = np.empty(n_edges_cap, dtype=np.bool_)
    flip_i = np.empty(n_edges_cap, dtype=np.bool_)
    n_splits = 0
    done = 0
    while done < n_steps:
        # a copy split adds at most v_m + 1 <= t + 1 edges
        if n_edges_cap - t < t + 1 or k >= n_nodes_cap:
            break
        m = src[_draw_index(rng, t)]
        b = rng.random()
        split = b < gamma
        if force == FORCE_EDGE:
            split = False
        elif force == FORCE_SPLIT:
            split = True
        if not split:
            n = dst[_draw_index(rng, t)]
            _add_edge(src, dst, v, w, lists, t, m, n)
            t += 1
        else:
            if variant == VAR_BINOMIAL:
                t = _split_binomial(src, dst, v, w, lists, k, t, m, rng,
                                    buf_o, buf_i, flip_o, flip_i)
            else:
                t = _split_copy(src, dst, v, w, lists, k, t, m, rng, buf_o)
            k += 1
            n_splits += 1
        done += 1
    return k, t, done, n_splits


@numba.njit(cache=True)
def split_explicit(src, dst, v, w, k, t, m, variant, rng):
    """Apply one variant split of node ``m``; returns the new edge count."""
    lists = _build_lists(src, dst, t, v.shape[0], src.shape[0])
    n_edges_cap = src.shape[0]
    buf_o = np.empty(n_edges_cap, dtype=np.int64)
    if variant == VAR_BINOMIAL:
        buf_i = np.empty(n_edges_cap, dtype=np.int64)
        flip_o = np.empty(n_edges_cap, dtype=np.bool_)
        flip_i = np.empty(n_edges_cap, dtype=np.bool_)
        return _split_binomial(src, dst, v, w, lists, k, t, m, rng,
                               buf_o, buf_i, flip_o, flip_i)
    return _split_copy(src, dst, v, w, lists, k, t, m, rng, buf_o)
