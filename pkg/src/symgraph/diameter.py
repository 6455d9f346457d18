"""Exact and approximate diameter in the symbolic model.

The diameter ``D`` is the largest finite distance ``dist(u, v)`` over pairs
where ``u`` reaches ``v``.  Three estimators are provided:

* exact: ``max_u depth+(u)``, about ``n * (D + 1)`` post operations;
* 2-approximation for strongly connected graphs from one forward and one
  backward search;
* additive-``x`` approximation: BFS depths from a greedy out-dominating set of
  the radius-``x`` neighbourhoods, ``~n * x * log n + |S| * D`` operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import ContractError, OpCounter, VertexSet, _search, forward_search, post


class NotStronglyConnectedError(ContractError):
    def __init__(self):
        super().__init__("requires strong connectivity")


@dataclass
class DiameterEstimate:
    value: int
    mode: str
    x_used: int = 0
    counters: dict = field(default_factory=dict)

    def to_dict(self):
        return {"mode": self.mode, "value": self.value, "x_used": self.x_used, **self.counters}


@dataclass
class DominatingSetResult:
    S: VertexSet
    x: int
    covered_target: VertexSet


def harmonic(n):
    return sum(1.0 / i for i in range(1, n + 1))


def dominating_set_size_bound(n, x):
    """Size guarantee ``2 * H_n * n / x`` of the greedy out-dominating set."""
    return 2.0 * harmonic(n) * n / x


def _counter(ctr):
    return OpCounter() if ctr is None else ctr


def _depth_out(G, u, ctr):
    return forward_search(G, VertexSet.singleton(G.n, u, ctr), ctr=ctr)[1]


def diameter_exact(G, ctr=None):
    """``max_u depth+(u)`` over all vertices."""
    ctr = _counter(ctr)
    best = 0
    for u in range(G.n):
        best = max(best, _depth_out(G, u, ctr))
    return DiameterEstimate(best, "exact", 0, ctr.snapshot())


def diameter_2approx(G, ctr=None):
    """``ceil((depth+(u) + depth-(u)) / 2)`` for ``u`` the smallest vertex.

    Raises :class:`NotStronglyConnectedError` unless both searches cover V.
    """
    ctr = _counter(ctr)
    V = VertexSet.full(G.n, ctr)
    u = V.pick_min()
    start = VertexSet.singleton(G.n, u, ctr)
    fw, d_out = _search(G, start, None, ctr, True)
    if not fw == V:
        raise NotStronglyConnectedError()
    bw, d_in = _search(G, start, None, ctr, False)
    if not bw == V:
        raise NotStronglyConnectedError()
    return DiameterEstimate(-(-(d_out + d_in) // 2), "two_approx", 0, ctr.snapshot())


def neighborhood(G, v, x, direction="out", ctr=None):
    """Vertices within distance ``x`` from (``out``) or to (``in``) ``v``.

    Costs ``min(x, depth + 1)`` one-step operations: the search stops after
    ``x`` steps or when a step adds nothing.
    """
    if x < 0:
        raise ContractError("radius must be non-negative")
    if direction not in ("out", "in"):
        raise ValueError(f"direction must be 'out' or 'in', not {direction!r}")
    ctr = _counter(ctr)
    seed = VertexSet.singleton(G.n, v, ctr)
    return _search(G, seed, None, ctr, direction == "out", limit=x)[0]


def greedy_dominating_set(G, x, ctr=None):
    """Set ``S`` meeting ``N_x+(v)`` for every ``v`` with ``|N_x+(v)| >= x``.

    Greedy cover with geometrically decreasing thresholds ``2^j``; the
    neighbourhoods are recomputed on demand so only O(1) sets are stored.
    """
    if x < 1:
        raise ContractError("radius must be at least 1")
    ctr = _counter(ctr)
    n = G.n
    S = VertexSet.empty(n, ctr)
    low = VertexSet.empty(n, ctr)
    for v in range(n):
        if len(neighborhood(G, v, x, "out", ctr)) < x:
            low = low | VertexSet.singleton(n, v, ctr)
    covered = low
    for j in range(n.bit_length() - 1 if n else -1, -1, -1):
        threshold = 1 << j
        for v in range(n):
            if v in S:
                continue
            ball = neighborhood(G, v, x, "in", ctr)
            if len(ball - covered) >= threshold:
                S = S | VertexSet.singleton(n, v, ctr)
                covered = covered | ball
    return DominatingSetResult(S, x, ~low)


def diameter_approx_with_x(G, x, ctr=None):
    """``max depth+(u)`` over a greedy dominating set for radius ``x``.

    The value never exceeds ``D`` and is at least ``D - x`` when ``x < D`` on
    strongly connected graphs.
    """
    ctr = _counter(ctr)
    dom = greedy_dominating_set(G, x, ctr)
    S = dom.S
    del dom
    if not S:
        # every vertex reaches fewer than x vertices, so D < x - 1
        if not post(G, VertexSet.full(G.n, ctr), ctr=ctr):
            return DiameterEstimate(0, "eps_approx", x, ctr.snapshot())
        est = diameter_exact(G, ctr)
        return DiameterEstimate(est.value, "eps_approx", x, ctr.snapshot())
    best = 0
    rest = S
    while rest:
        u = rest.pick_min()
        rest = rest - VertexSet.singleton(G.n, u, ctr)
        best = max(best, _depth_out(G, u, ctr))
    return DiameterEstimate(best, "eps_approx", x, ctr.snapshot())


def x_for_eps(eps, upper):
    """Neighbourhood radius for an upper bound ``upper >= D`` and accuracy ``eps``."""
    eps = Fraction(eps)
    by_eps = math.floor(eps * upper / (2 * (1 + eps)))
    return max(1, min(math.isqrt(upper), by_eps))


def diameter_approx(G, eps, ctr=None, method="auto"):
    """(1 + eps)-style estimate with ``~n * sqrt(D) * log n`` operations.

    ``method="auto"`` sizes ``x`` from the 2-approximation when the graph is
    strongly connected and falls back to doubling search otherwise;
    ``method="doubling"`` forces the doubling search.
    """
    if Fraction(eps) <= 0:
        raise ContractError("eps must be positive")
    if method not in ("auto", "doubling"):
        raise ValueError(f"unknown method {method!r}")
    ctr = _counter(ctr)
    if G.n == 0:
        return DiameterEstimate(0, "eps_approx", 0, ctr.snapshot())
    if method == "auto":
        try:
            upper = 2 * diameter_2approx(G, ctr).value
        except NotStronglyConnectedError:
            pass
        else:
            return diameter_approx_with_x(G, x_for_eps(eps, upper), ctr)
    g = 1
    while True:
        xg = max(1, math.isqrt(g))
        est = diameter_approx_with_x(G, xg, ctr)
        if est.value < g - xg or g > G.n:
            return est
        g *= 2
