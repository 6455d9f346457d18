"""Winning sets for reachability, safety, Büchi and co-Büchi objectives.

Semantics are existential: a vertex wins if *some* infinite path from it
satisfies the objective.  A vertex with no successor has no infinite path.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import OpCounter, VertexSet, post, pre
from .scc import Skeleton, scc_find

KINDS = ("reach", "safe", "buchi", "cobuchi")


@dataclass(frozen=True)
class ObjectiveQuery:
    kind: str
    target: VertexSet

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown objective {self.kind!r}; expected one of {KINDS}")


def _counter(ctr):
    return OpCounter() if ctr is None else ctr


def reach(G, T, ctr=None, mask=None):
    """Vertices with a path to ``T`` (inside ``mask`` when given)."""
    ctr = _counter(ctr)
    win = T.tracked(ctr)
    if not win:
        return win
    frontier = win
    while True:
        new = pre(G, frontier, mask, ctr) - win
        if not new:
            return win
        win = win | new
        frontier = new


def _nontrivial(G, comp, ctr):
    # an SCC carries a cycle iff it has two members or a self-loop
    if len(comp) > 1:
        return True
    return bool(post(G, comp, ctr=ctr) & comp)


def _cycle_sccs(G, domain, ctr, keep=None):
    """Union of the SCCs of ``G[domain]`` that contain a cycle (and meet ``keep``)."""
    found = [VertexSet.empty(G.n, ctr)]

    def collect(comp):
        if keep is not None and not (comp & keep):
            return
        if _nontrivial(G, comp, ctr):
            found[0] = found[0] | comp

    scc_find(G, domain, Skeleton(), ctr, collect)
    return found[0]


def safe(G, T, ctr=None, method="fixpoint"):
    """Vertices of ``T`` with an infinite path that never leaves ``T``."""
    ctr = _counter(ctr)
    T = T.tracked(ctr)
    if method == "fixpoint":
        F = T
        while True:
            shrunk = F & pre(G, F, ctr=ctr)
            if shrunk == F:
                return F
            F = shrunk
    if method == "via_scc":
        core = _cycle_sccs(G, T, ctr)
        return reach(G, core, ctr, mask=T)
    raise ValueError(f"unknown safety method {method!r}")


def buchi(G, T, ctr=None, method="via_scc"):
    """Vertices with an infinite path visiting ``T`` infinitely often."""
    ctr = _counter(ctr)
    T = T.tracked(ctr)
    if method == "via_scc":
        return reach(G, _cycle_sccs(G, None, ctr, keep=T), ctr)
    if method == "per_target":
        recurrent = VertexSet.empty(G.n, ctr)
        rest = T
        while rest:
            t = rest.pick_min()
            single = VertexSet.singleton(G.n, t, ctr)
            rest = rest - single
            succ = post(G, single, ctr=ctr)
            if not succ:
                continue
            fw = succ
            frontier = succ
            while t not in fw:
                new = post(G, frontier, ctr=ctr) - fw
                if not new:
                    break
                fw = fw | new
                frontier = new
            if t in fw:
                recurrent = recurrent | single
        return reach(G, recurrent, ctr)
    raise ValueError(f"unknown Büchi method {method!r}")


def cobuchi(G, T, ctr=None):
    """Vertices with an infinite path that eventually stays in ``T``."""
    ctr = _counter(ctr)
    T = T.tracked(ctr)
    return reach(G, _cycle_sccs(G, T, ctr), ctr)


def solve(G, query, ctr=None, method=None):
    """Dispatch an :class:`ObjectiveQuery`."""
    kind, T = query.kind, query.target
    if kind == "reach":
        return reach(G, T, ctr)
    if kind == "safe":
        return safe(G, T, ctr, method or "fixpoint")
    if kind == "buchi":
        return buchi(G, T, ctr, method or "via_scc")
    return cobuchi(G, T, ctr)
