"""Backtracking kernels assigning grid paths (edge bitmasks) to graph vertices.

Both backends implement the same depth-first search: placing a path filters
the candidate domain of every unplaced position down to the paths that
intersect exactly the already-placed neighbours, then the domains are made
arc consistent (every remaining candidate has a compatible partner in every
other live domain).
The numba kernel is resumable: all search state lives in a :class:`KernelState`
so the driver can stop after a node quota or a full output buffer, check the
wall clock, and continue.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ._accel import njit, numba_enabled

# status codes written to ``KernelState.scalars[2]``
RUNNING, DONE, NODE_QUOTA, BUFFER_FULL = 0, 1, 2, 3


@dataclass
class SearchProblem:
    """Arrays describing one search, indexed by vertex position.

    Positions are the vertices sorted by descending degree; the search always
    branches on the unassigned position with the smallest live domain, ties
    going to the lowest position.

    adjacency[i, j]   1 if the paths at positions i and j must share an edge
    first             candidate indices allowed at position 0 (symmetry breaking)
    twin_class[i]     positions with equal class carry interchangeable vertices;
                      their candidate indices must increase with position
    twin_strict[i]    1 if that increase is strict (non-adjacent twins)
    symmetry[s, c]    image of candidate c under grid symmetry s
    """

    masks: np.ndarray
    adjacency: np.ndarray
    first: np.ndarray
    twin_class: np.ndarray
    twin_strict: np.ndarray
    symmetry: np.ndarray
    helly: bool = False
    canonical_only: bool = False

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]


@dataclass
class KernelState:
    dom: np.ndarray     # dom[depth, position, k]
    cnt: np.ndarray     # cnt[depth, position]
    ptr: np.ndarray     # next domain slot to try at each depth
    var: np.ndarray     # position branched on at each depth
    assign: np.ndarray  # candidate per position
    isset: np.ndarray
    scalars: np.ndarray  # depth, nodes, status

    @classmethod
    def fresh(cls, prob: SearchProblem) -> "KernelState":
        n, size = max(prob.n, 1), prob.masks.shape[0]
        dom = np.empty((n, n, size), dtype=np.int32)
        cnt = np.zeros((n, n), dtype=np.int32)
        if prob.n:
            dom[0, 0, : prob.first.size] = prob.first
            cnt[0, 0] = prob.first.size
            for j in range(1, n):
                dom[0, j, :] = np.arange(size, dtype=np.int32)
                cnt[0, j] = size
        return cls(dom, cnt, np.zeros(n, np.int64), np.zeros(n, np.int64), np.zeros(n, np.int32),
                   np.zeros(n, np.int8), np.zeros(3, np.int64))

    @property
    def nodes(self) -> int:
        return int(self.scalars[1])

    @property
    def status(self) -> int:
        return int(self.scalars[2])


# --------------------------------------------------------------------------
# shared scalar helpers (compiled when numba is active)
# --------------------------------------------------------------------------


@njit(cache=True)
def _intersects(masks, a, b):
    for w in range(masks.shape[1]):
        if masks[a, w] & masks[b, w]:
            return True
    return False


@njit(cache=True)
def _helly_ok(masks, adjacency, assign, isset, v):
    """Every clique of placed vertices containing position v has a common edge."""
    n = adjacency.shape[0]
    nb = np.empty(n, np.int64)
    k = 0
    for i in range(n):
        if i != v and isset[i] and adjacency[v, i]:
            nb[k] = i
            k += 1
    if k < 2:
        return True
    nw = masks.shape[1]
    acc = np.empty(nw, np.uint64)
    for subset in range(3, 1 << k):
        if subset & (subset - 1) == 0:
            continue
        clique = True
        for a in range(k):
            if not (subset >> a) & 1:
                continue
            for b in range(a + 1, k):
                if (subset >> b) & 1 and not adjacency[nb[a], nb[b]]:
                    clique = False
                    break
            if not clique:
                break
        if not clique:
            continue
        for w in range(nw):
            acc[w] = masks[assign[v], w]
        for a in range(k):
            if (subset >> a) & 1:
                for w in range(nw):
                    acc[w] &= masks[assign[nb[a]], w]
        empty = True
        for w in range(nw):
            if acc[w]:
                empty = False
                break
        if empty:
            return False
    return True


@njit(cache=True)
def _is_canonical(assign, symmetry, twin_class):
    """True when ``assign`` is lexicographically least among its images under
    grid symmetries followed by re-sorting inside each twin class."""
    n = assign.size
    img = np.empty(n, np.int32)
    for s in range(1, symmetry.shape[0]):
        for i in range(n):
            img[i] = symmetry[s, assign[i]]
        # sort inside twin classes (classes are small: insertion sort)
        for i in range(n):
            for j in range(i + 1, n):
                if twin_class[j] == twin_class[i] and img[j] < img[i]:
                    t = img[i]
                    img[i] = img[j]
                    img[j] = t
        for i in range(n):
            if img[i] < assign[i]:
                return False
            if img[i] > assign[i]:
                break
    return True


@njit(cache=True)
def _twin_ok(twin_class, twin_strict, v, c, j, q):
    """Order constraint between interchangeable positions v (value c) and j (value q)."""
    if twin_class[j] != twin_class[v]:
        return True
    if j > v:
        return q > c or (q == c and twin_strict[v] == 0)
    return q < c or (q == c and twin_strict[v] == 0)


@njit(cache=True)
def _revise(masks, adjacency, twin_class, twin_strict, dom, cnt, d, j, k):
    """Drop candidates of j with no compatible partner left in k; returns the drop count."""
    want = adjacency[j, k] == 1
    m = 0
    ck = cnt[d, k]
    before = cnt[d, j]
    if want and twin_class[j] != twin_class[k]:
        # some partner shares an edge iff the candidate meets the union of k's paths
        nw = masks.shape[1]
        cover = np.zeros(nw, np.uint64)
        for b in range(ck):
            r = dom[d, k, b]
            for w in range(nw):
                cover[w] |= masks[r, w]
        for a in range(before):
            q = dom[d, j, a]
            for w in range(nw):
                if masks[q, w] & cover[w]:
                    dom[d, j, m] = q
                    m += 1
                    break
        cnt[d, j] = m
        return before - m
    if twin_class[j] == twin_class[k]:
        # domains are sorted: walk k's values from the side the order allows
        # and stop at the first one on the wrong side of q
        loose = twin_strict[j] == 0
        for a in range(before):
            q = dom[d, j, a]
            if k > j:
                for b in range(ck - 1, -1, -1):
                    r = dom[d, k, b]
                    if r < q or (r == q and not loose):
                        break
                    if _intersects(masks, q, r) == want:
                        dom[d, j, m] = q
                        m += 1
                        break
            else:
                for b in range(ck):
                    r = dom[d, k, b]
                    if r > q or (r == q and not loose):
                        break
                    if _intersects(masks, q, r) == want:
                        dom[d, j, m] = q
                        m += 1
                        break
        cnt[d, j] = m
        return before - m
    for a in range(before):
        q = dom[d, j, a]
        for b in range(ck):
            r = dom[d, k, b]
            if _intersects(masks, q, r) == want:
                dom[d, j, m] = q
                m += 1
                break
    cnt[d, j] = m
    return before - m


@njit(cache=True)
def _arc_consistent(masks, adjacency, twin_class, twin_strict, dom, cnt, d, isset):
    """AC-3 over the unplaced positions at depth d; False on a domain wipe-out."""
    n = adjacency.shape[0]
    dirty = np.zeros(n, np.bool_)
    pending = 0
    for j in range(n):
        if not isset[j]:
            dirty[j] = True
            pending += 1
    while pending:
        k = 0
        while not dirty[k]:
            k += 1
        dirty[k] = False
        pending -= 1
        for j in range(n):
            if j == k or isset[j]:
                continue
            if _revise(masks, adjacency, twin_class, twin_strict, dom, cnt, d, j, k):
                if cnt[d, j] == 0:
                    return False
                if not dirty[j]:
                    dirty[j] = True
                    pending += 1
    return True


@njit(cache=True)
def _run(masks, adjacency, twin_class, twin_strict, symmetry, helly, canonical_only,
         dom, cnt, ptr, var, assign, isset, scalars, node_quota, out):
    n = adjacency.shape[0]
    found = 0
    d = scalars[0]
    nodes = scalars[1]
    stop_at = nodes + node_quota
    while True:
        v = var[d]
        if ptr[d] >= cnt[d, v]:
            isset[v] = 0
            if d == 0:
                scalars[0] = 0
                scalars[1] = nodes
                scalars[2] = 1
                return found
            d -= 1
            isset[var[d]] = 0
            ptr[d] += 1
            continue
        c = dom[d, v, ptr[d]]
        if nodes >= stop_at:
            scalars[0] = d
            scalars[1] = nodes
            scalars[2] = 2
            return found
        nodes += 1
        assign[v] = c
        isset[v] = 1
        if helly and not _helly_ok(masks, adjacency, assign, isset, v):
            isset[v] = 0
            ptr[d] += 1
            continue
        if d == n - 1:
            if (not canonical_only) or _is_canonical(assign, symmetry, twin_class):
                for i in range(n):
                    out[found, i] = assign[i]
                found += 1
            isset[v] = 0
            ptr[d] += 1
            if found == out.shape[0]:
                scalars[0] = d
                scalars[1] = nodes
                scalars[2] = 3
                return found
            continue
        ok = True
        for j in range(n):
            if isset[j]:
                continue
            want = adjacency[v, j] == 1
            m = 0
            for k in range(cnt[d, j]):
                q = dom[d, j, k]
                if _intersects(masks, c, q) == want and _twin_ok(twin_class, twin_strict, v, c, j, q):
                    dom[d + 1, j, m] = q
                    m += 1
            cnt[d + 1, j] = m
            if m == 0:
                ok = False
                break
        if ok:
            ok = _arc_consistent(masks, adjacency, twin_class, twin_strict, dom, cnt, d + 1, isset)
        best = -1
        best_size = 1 << 30
        if ok:
            for j in range(n):
                if not isset[j] and cnt[d + 1, j] < best_size:
                    best_size = cnt[d + 1, j]
                    best = j
        if not ok:
            isset[v] = 0
            ptr[d] += 1
            continue
        d += 1
        var[d] = best
        ptr[d] = 0


def run_jit(prob: SearchProblem, state: KernelState, node_quota: int, out: np.ndarray) -> int:
    """Advance the compiled search; returns how many rows of ``out`` were filled."""
    if prob.n == 0:
        state.scalars[2] = DONE
        return 0
    return int(
        _run(
            prob.masks, prob.adjacency, prob.twin_class, prob.twin_strict, prob.symmetry,
            prob.helly, prob.canonical_only,
            state.dom, state.cnt, state.ptr, state.var, state.assign, state.isset, state.scalars,
            np.int64(node_quota), out,
        )
    )


# --------------------------------------------------------------------------
# numpy fallback
# --------------------------------------------------------------------------


class BudgetHit(Exception):
    pass


def _compatible(prob: SearchProblem, j: int, dj: np.ndarray, k: int, dk: np.ndarray) -> np.ndarray:
    """Boolean mask over ``dj``: candidates with at least one partner in ``dk``."""
    masks = prob.masks
    want = bool(prob.adjacency[j, k])
    same = prob.twin_class[j] == prob.twin_class[k]
    keep = np.zeros(dj.size, bool)
    step = max(1, (1 << 21) // max(dk.size, 1))
    mk = masks[dk]
    for lo in range(0, dj.size, step):
        q = dj[lo:lo + step]
        hit = (masks[q][:, None, :] & mk[None, :, :]).any(axis=2) == want
        if same:
            a, b = q[:, None], dk[None, :]
            loose = prob.twin_strict[j] == 0
            hit &= ((b > a) | ((b == a) & loose)) if k > j else ((b < a) | ((b == a) & loose))
        keep[lo:lo + step] = hit.any(axis=1)
    return keep


def _arc_consistent_np(prob: SearchProblem, domains: list, isset: np.ndarray) -> bool:
    live = [j for j in range(prob.n) if not isset[j]]
    dirty = set(live)
    while dirty:
        k = min(dirty)
        dirty.discard(k)
        for j in live:
            if j == k:
                continue
            keep = _compatible(prob, j, domains[j], k, domains[k])
            if not keep.all():
                domains[j] = domains[j][keep]
                if domains[j].size == 0:
                    return False
                dirty.add(j)
    return True


def iter_numpy(prob: SearchProblem, counter: list[int], max_nodes: int,
               deadline: float | None = None) -> Iterator[np.ndarray]:
    """Generator twin of :func:`_run`; ``counter[0]`` tracks expanded nodes.

    Domain filtering is vectorised with numpy instead of compiled loops.
    Raises :class:`BudgetHit` once ``max_nodes`` or ``deadline`` is passed.
    """
    import time

    n = prob.n
    if n == 0:
        return
    masks = prob.masks
    size = masks.shape[0]
    assign = np.zeros(n, np.int32)
    isset = np.zeros(n, np.int8)
    helly_ok = getattr(_helly_ok, "py_func", _helly_ok)
    canonical = getattr(_is_canonical, "py_func", _is_canonical)
    klass, strict = prob.twin_class, prob.twin_strict

    def rec(depth: int, v: int, domains: list[np.ndarray | None]) -> Iterator[np.ndarray]:
        for c in domains[v]:
            if counter[0] >= max_nodes:
                raise BudgetHit
            counter[0] += 1
            if deadline is not None and counter[0] % 4096 == 0 and time.monotonic() > deadline:
                raise BudgetHit
            assign[v] = c
            isset[v] = 1
            try:
                if prob.helly and not helly_ok(masks, prob.adjacency, assign, isset, v):
                    continue
                if depth == n - 1:
                    if not prob.canonical_only or canonical(assign, prob.symmetry, klass):
                        yield assign.copy()
                    continue
                row = masks[c]
                nxt: list[np.ndarray | None] = [None] * n
                best, best_size = -1, 1 << 30
                for j in range(n):
                    if isset[j]:
                        continue
                    dj = domains[j]
                    hit = (masks[dj] & row).any(axis=1)
                    keep = hit if prob.adjacency[v, j] else ~hit
                    if klass[j] == klass[v]:
                        if j > v:
                            keep &= (dj > c) | ((dj == c) & (strict[v] == 0))
                        else:
                            keep &= (dj < c) | ((dj == c) & (strict[v] == 0))
                    nxt[j] = dj[keep]
                    if nxt[j].size == 0:
                        break
                else:
                    if _arc_consistent_np(prob, nxt, isset):
                        for j in range(n):
                            if not isset[j] and nxt[j].size < best_size:
                                best, best_size = j, nxt[j].size
                        yield from rec(depth + 1, best, nxt)
            finally:
                isset[v] = 0

    start: list[np.ndarray | None] = [prob.first.astype(np.int32)]
    start += [np.arange(size, dtype=np.int32) for _ in range(n - 1)]
    yield from rec(0, 0, start)


# --------------------------------------------------------------------------
# driver used by the search module
# --------------------------------------------------------------------------


class Solver:
    """Iterate solutions of a :class:`SearchProblem` with either backend."""

    def __init__(self, prob: SearchProblem, max_nodes: int, deadline: float | None = None,
                 jit: bool | None = None, buffer: int = 1024):
        self.prob = prob
        self.buffer = buffer
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.jit = numba_enabled() if jit is None else jit
        self.nodes = 0
        self.complete = False  # True once the whole space was explored

    def __iter__(self) -> Iterator[np.ndarray]:
        if self.jit:
            for block in self.blocks():
                yield from block
            return
        counter = [0]
        try:
            for row in iter_numpy(self.prob, counter, self.max_nodes, self.deadline):
                self.nodes = counter[0]
                yield row
        except BudgetHit:
            self.nodes = counter[0]
            return
        self.nodes = counter[0]
        self.complete = True

    def blocks(self) -> Iterator[np.ndarray]:
        """Solutions in 2-D arrays of up to ``buffer`` rows; cheaper than row-by-row for bulk checks."""
        import time

        if self.jit:
            state = KernelState.fresh(self.prob)
            out = np.empty((self.buffer, max(self.prob.n, 1)), np.int32)
            chunk = 1 if self.deadline is not None else 1 << 20
            while True:
                quota = min(chunk, self.max_nodes - state.nodes)
                if quota <= 0:
                    return
                started = time.monotonic()
                filled = run_jit(self.prob, state, quota, out)
                self.nodes = state.nodes
                if self.deadline is not None:
                    # aim for ~0.1 s per chunk so the deadline is checked often
                    spent = max(time.monotonic() - started, 1e-4)
                    chunk = int(min(max(chunk * 0.1 / spent, 1), 1 << 22))
                if filled:
                    yield out[:filled].copy()
                if state.status == DONE:
                    self.complete = True
                    return
                if self.deadline is not None and time.monotonic() > self.deadline:
                    return
        else:
            counter = [0]
            buf: list[np.ndarray] = []
            try:
                for row in iter_numpy(self.prob, counter, self.max_nodes, self.deadline):
                    self.nodes = counter[0]
                    buf.append(row)
                    if len(buf) == self.buffer:
                        yield np.array(buf)
                        buf = []
            except BudgetHit:
                self.nodes = counter[0]
                if buf:
                    yield np.array(buf)
                return
            self.nodes = counter[0]
            if buf:
                yield np.array(buf)
            self.complete = True
