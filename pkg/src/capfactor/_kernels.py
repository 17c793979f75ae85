"""Inner loops over the index arrays built by ``netmodel``.

Every kernel is written as plain Python over numpy arrays so it runs
unchanged without numba.  When numba imports and ``CAPFACTOR_DISABLE_NUMBA``
is unset (or ``0``), each one is compiled with ``numba.njit``.

Conventions shared by all kernels:

* ``dead[p] > 0`` removes edge position ``p`` (a count, so overlapping
  vertex deletions can be undone independently);
* ``used[p] == 1`` marks an edge carrying one unit of flow;
* the residual graph traverses unused live edges tail->head and used edges
  head->tail, scanning incident edges of a vertex in position order, which
  makes augmenting paths deterministic.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("CAPFACTOR_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _flag not in ("", "0", "false", "no")

numba = None
if not _DISABLED:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        numba = None

NUMBA_ENABLED = numba is not None


def _jit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


@_jit
def residual_search(inc_ptr, inc_edge, inc_dir, tails, heads, dead, used, src, dst, pred):
    """BFS in the residual graph from ``src``; stops when ``dst`` is labelled.

    ``pred[v]`` receives the incidence slot used to enter ``v`` (-1 for
    ``src``, -2 if unreached).  Returns whether ``dst`` was reached.
    """
    nv = inc_ptr.shape[0] - 1
    for v in range(nv):
        pred[v] = -2
    pred[src] = -1
    if src == dst:
        return True
    queue = np.empty(nv, np.int64)
    queue[0] = src
    qh = 0
    qt = 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        for j in range(inc_ptr[u], inc_ptr[u + 1]):
            p = inc_edge[j]
            if dead[p] != 0:
                continue
            if inc_dir[j] > 0:
                if used[p] != 0:
                    continue
                w = heads[p]
            else:
                if used[p] == 0:
                    continue
                w = tails[p]
            if pred[w] == -2:
                pred[w] = j
                if w == dst:
                    return True
                queue[qt] = w
                qt += 1
    return False


@_jit
def augment(inc_ptr, inc_edge, inc_dir, tails, heads, dead, used, src, dst, limit):
    """Shortest-augmenting-path max flow, starting from the flow in ``used``.

    Returns the number of augmentations performed; stops early once that
    number reaches ``limit`` (ignored when negative).
    """
    nv = inc_ptr.shape[0] - 1
    pred = np.empty(nv, np.int64)
    value = 0
    while limit < 0 or value < limit:
        if not residual_search(inc_ptr, inc_edge, inc_dir, tails, heads, dead, used, src, dst, pred):
            break
        v = dst
        while v != src:
            j = pred[v]
            p = inc_edge[j]
            if inc_dir[j] > 0:
                used[p] = 1
                v = tails[p]
            else:
                used[p] = 0
                v = heads[p]
        value += 1
    return value


@_jit
def flow_value(inc_ptr, inc_edge, inc_dir, tails, heads, dead, src, dst, limit):
    used = np.zeros(tails.shape[0], np.int8)
    return augment(inc_ptr, inc_edge, inc_dir, tails, heads, dead, used, src, dst, limit)


@_jit
def reach_mask(inc_ptr, inc_edge, inc_dir, tails, heads, dead, used, src, out):
    """Mark in ``out`` every vertex residual-reachable from ``src``."""
    nv = inc_ptr.shape[0] - 1
    pred = np.empty(nv, np.int64)
    residual_search(inc_ptr, inc_edge, inc_dir, tails, heads, dead, used, src, -1, pred)
    for v in range(nv):
        out[v] = pred[v] != -2


@_jit
def classify_all(inc_ptr, inc_edge, inc_dir, tails, heads, dead, used, out):
    """Per edge: -1 dead, 1 carries flow, 2 on a residual cycle, 0 otherwise.

    An unused edge ``<u, v>`` lies on a residual cycle iff ``v`` reaches
    ``u`` in the residual graph.
    """
    nv = inc_ptr.shape[0] - 1
    pred = np.empty(nv, np.int64)
    for p in range(tails.shape[0]):
        if dead[p] != 0:
            out[p] = -1
        elif used[p] != 0:
            out[p] = 1
        elif residual_search(inc_ptr, inc_edge, inc_dir, tails, heads, dead, used, heads[p], tails[p], pred):
            out[p] = 2
        else:
            out[p] = 0


@_jit
def _toggle(group_ptr, group_item, dead, element, delta):
    for q in range(group_ptr[element], group_ptr[element + 1]):
        dead[group_item[q]] += delta


@_jit
def scan_level(
    inc_ptr, inc_edge, inc_dir, tails, heads, base_dead, src, dst,
    group_ptr, group_item, cand, size, threshold, found_ptr, found_item, required,
):
    """All minimal removal sets of exactly ``size`` candidate elements.

    An element deletes the edge positions of its group.  A combination
    ``S`` of ``cand`` is reported when deleting it leaves flow
    ``<= threshold`` while restoring any single element lifts the flow above
    ``threshold``.  Supersets of earlier factors (CSR ``found_ptr`` /
    ``found_item``, element ids) are skipped without a flow computation.
    With ``required >= 0`` only combinations containing that element are
    tried.  Returns a ``(count, size)`` array of element ids.
    """
    m = cand.shape[0]
    n_elem = group_ptr.shape[0] - 1
    out = np.empty((16, size), np.int64)
    count = 0
    if size > m or size <= 0:
        return out[:0]
    dead = base_dead.copy()
    member = np.zeros(n_elem, np.bool_)
    idx = np.arange(size)
    n_found = found_ptr.shape[0] - 1
    while True:
        for i in range(size):
            member[cand[idx[i]]] = True
        ok = required < 0 or member[required]
        if ok:
            for f in range(n_found):
                inside = True
                for q in range(found_ptr[f], found_ptr[f + 1]):
                    if not member[found_item[q]]:
                        inside = False
                        break
                if inside:
                    ok = False
                    break
        if ok:
            for i in range(size):
                _toggle(group_ptr, group_item, dead, cand[idx[i]], 1)
            if flow_value(inc_ptr, inc_edge, inc_dir, tails, heads, dead, src, dst, threshold + 1) <= threshold:
                minimal = True
                for i in range(size):
                    el = cand[idx[i]]
                    _toggle(group_ptr, group_item, dead, el, -1)
                    fv = flow_value(inc_ptr, inc_edge, inc_dir, tails, heads, dead, src, dst, threshold + 1)
                    _toggle(group_ptr, group_item, dead, el, 1)
                    if fv <= threshold:
                        minimal = False
                        break
                if minimal:
                    if count == out.shape[0]:
                        grown = np.empty((2 * count, size), np.int64)
                        grown[:count] = out
                        out = grown
                    for i in range(size):
                        out[count, i] = cand[idx[i]]
                    count += 1
            for i in range(size):
                _toggle(group_ptr, group_item, dead, cand[idx[i]], -1)
        for i in range(size):
            member[cand[idx[i]]] = False
        # next combination in lexicographic order
        i = size - 1
        while i >= 0 and idx[i] == m - size + i:
            i -= 1
        if i < 0:
            break
        idx[i] += 1
        for r in range(i + 1, size):
            idx[r] = idx[r - 1] + 1
    return out[:count]


@_jit
def scan_bipartitions(inc_ptr, inc_edge, inc_dir, tails, heads, src, dst, free):
    """Every partially connected source/sink cut over the ``free`` vertices.

    Bit ``i`` of a mask puts ``free[i]`` on the source side.  For each mask
    the cut ``[V1, V1c]`` qualifies when every cut edge's tail is reachable
    from ``src`` inside ``V1`` and ``dst`` is reachable from its head inside
    ``V1c``.  Returns ``(masks, sizes)`` for the qualifying bipartitions.
    """
    nv = inc_ptr.shape[0] - 1
    ne = tails.shape[0]
    nf = free.shape[0]
    total = 1 << nf
    masks = np.empty(total, np.int64)
    sizes = np.empty(total, np.int64)
    count = 0
    side = np.zeros(nv, np.bool_)
    from_s = np.zeros(nv, np.bool_)
    to_t = np.zeros(nv, np.bool_)
    stack = np.empty(nv, np.int64)
    for mask in range(total):
        for v in range(nv):
            side[v] = False
            from_s[v] = False
            to_t[v] = False
        side[src] = True
        for i in range(nf):
            if (mask >> i) & 1:
                side[free[i]] = True
        # forward search from src inside V1
        top = 0
        stack[0] = src
        top = 1
        from_s[src] = True
        while top > 0:
            top -= 1
            u = stack[top]
            for j in range(inc_ptr[u], inc_ptr[u + 1]):
                if inc_dir[j] > 0:
                    w = heads[inc_edge[j]]
                    if side[w] and not from_s[w]:
                        from_s[w] = True
                        stack[top] = w
                        top += 1
        # backward search from dst inside V1c
        stack[0] = dst
        top = 1
        to_t[dst] = True
        while top > 0:
            top -= 1
            u = stack[top]
            for j in range(inc_ptr[u], inc_ptr[u + 1]):
                if inc_dir[j] < 0:
                    w = tails[inc_edge[j]]
                    if not side[w] and not to_t[w]:
                        to_t[w] = True
                        stack[top] = w
                        top += 1
        ok = True
        size = 0
        for p in range(ne):
            if side[tails[p]] and not side[heads[p]]:
                if not (from_s[tails[p]] and to_t[heads[p]]):
                    ok = False
                    break
                size += 1
        if ok:
            masks[count] = mask
            sizes[count] = size
            count += 1
    return masks[:count], sizes[:count]
