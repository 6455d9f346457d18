"""Skeleton-based symbolic SCC decomposition.

The decomposition repeatedly runs a forward search from a start vertex while
recording a *skeleton*: one vertex per BFS level, together forming a shortest
path from the start to a vertex of maximum distance.  The SCC of the start
vertex is grown backwards inside the forward set and emitted.  What remains
splits into two independent subproblems.  The skeleton picks the next
start vertex so that forward searches are charged to SCC diameters, giving
``O(sum over SCCs C of (diam_C + 1))`` one-step operations in total.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import ContractError, Mask, OpCounter, VertexSet, post, pre


@dataclass(frozen=True)
class Skeleton:
    """Vertex set inducing a shortest path, plus the path's last vertex.

    ``path_set`` is ``None`` for the empty skeleton.
    """

    path_set: Optional[VertexSet] = None
    endpoint: Optional[int] = None

    @property
    def empty(self):
        return self.path_set is None


@dataclass
class SccReport:
    components: list
    counters: dict = field(default_factory=dict)

    def partition(self):
        return [c.to_frozenset() for c in self.components]


@dataclass(frozen=True)
class SccStep:
    """One processed subproblem, as reported to the ``trace`` hook.

    All sets are detached copies, so tracing does not distort ``peak_sets``.
    """

    domain: VertexSet
    skeleton_set: Optional[VertexSet]
    skeleton_endpoint: Optional[int]
    start: int
    component: VertexSet
    loop_one_step: int


def _domain_of(mask, n, ctr):
    if mask is None:
        return VertexSet.full(n, ctr)
    if isinstance(mask, Mask):
        return mask.domain
    return mask


def _level(fw, planes, i):
    # vertices of fw whose BFS level equals i, decoded from the bit planes
    out = fw
    for b, plane in enumerate(planes):
        out = out & plane if (i >> b) & 1 else out - plane
    return out


def skel_forward(G, mask, v, ctr=None):
    """Forward set of ``v`` inside the mask, with a skeleton of it.

    Uses ``d + 1`` post and ``d`` pre operations for search depth ``d``.
    Instead of storing every level, the level index of each reached vertex is
    kept in binary across ``bit_length(d)`` sets; a level is recovered with
    set operations only.
    """
    if ctr is None:
        ctr = OpCounter()
    domain = _domain_of(mask, G.n, ctr)
    if v not in domain:
        raise ContractError(f"start vertex {v} not in domain")
    fw = VertexSet.singleton(G.n, v, ctr)
    level = fw
    planes = []
    depth = 0
    while True:
        new = post(G, level, domain, ctr) - fw
        if not new:
            break
        depth += 1
        fw = fw | new
        for b in range(depth.bit_length()):
            if (depth >> b) & 1:
                if b == len(planes):
                    planes.append(new)
                else:
                    planes[b] = planes[b] | new
        level = new
    del new
    endpoint = level.pick_min()
    cur = VertexSet.singleton(G.n, endpoint, ctr)
    path_set = cur
    for i in range(depth - 1, -1, -1):
        cand = pre(G, cur, domain, ctr) & _level(fw, planes, i)
        cur = VertexSet.singleton(G.n, cand.pick_min(), ctr)
        path_set = path_set | cur
    return fw, Skeleton(path_set, endpoint)


def _grow_scc(G, v, fw, ctr):
    scc = VertexSet.singleton(G.n, v, ctr)
    while True:
        grown = pre(G, scc, fw, ctr) - scc
        if not grown:
            return scc
        scc = scc | grown


def _process(G, domain, skel, ctr, emit, trace):
    # One SCC-Find frame; returns the non-empty subproblems (outer, inner).
    v = domain.pick_min() if skel.empty else skel.endpoint
    fw, new_skel = skel_forward(G, domain, v, ctr)
    before = ctr.one_step
    scc = _grow_scc(G, v, fw, ctr)
    loop_ops = ctr.one_step - before
    if trace is not None:
        trace(SccStep(domain.detached(),
                      None if skel.empty else skel.path_set.detached(),
                      skel.endpoint, v, scc.detached(), loop_ops))
    emit(scc)

    subs = []
    outer = domain - fw
    if outer:
        outer_skel = Skeleton()
        if not skel.empty:
            rest = skel.path_set - scc
            if rest:
                tail = pre(G, skel.path_set & scc, ctr=ctr) - scc
                ends = tail & skel.path_set
                if ends:
                    outer_skel = Skeleton(rest, ends.pick_min())
        subs.append((outer, outer_skel))
    inner = fw - scc
    if inner:
        rest = new_skel.path_set - scc
        subs.append((inner, Skeleton(rest, new_skel.endpoint) if rest else Skeleton()))
    return subs


def scc_find(G, mask, skel, ctr, emit: Callable[[VertexSet], None],
             trace: Optional[Callable[[SccStep], None]] = None):
    """Emit every SCC of the subgraph induced by the mask, each exactly once.

    Recursion runs on an explicit stack; of the two subproblems the smaller
    one is processed first, which keeps ``O(log n)`` sets stored.
    """
    if ctr is None:
        ctr = OpCounter()
    domain = _domain_of(mask, G.n, ctr)
    if skel is None:
        skel = Skeleton()
    stack = [(domain, skel)] if domain else []
    del domain, skel
    while stack:
        domain, skel = stack.pop()
        subs = _process(G, domain, skel, ctr, emit, trace)
        del domain, skel
        if len(subs) == 2 and len(subs[0][0]) < len(subs[1][0]):
            subs.reverse()
        stack.extend(subs)
        del subs


def scc_decomposition(G, ctr=None, trace=None):
    """Partition of ``G`` into SCCs, in emission order."""
    if ctr is None:
        ctr = OpCounter()
    components = []
    scc_find(G, None, Skeleton(), ctr, lambda c: components.append(c.detached()), trace)
    return SccReport(components, ctr.snapshot())


def sum_diam_plus_one(per_scc_diameters):
    return sum(d + 1 for d in per_scc_diameters.values())
