"""Graph constructions from Set Disjointness instances.

Each generator returns the realized :class:`~symgraph.core.Graph` together
with an :class:`EdgePartition` separating *definite* edges (independent of
the input bits) from *possible* edges, whose presence is a predicate of
Alice's bit ``x_i`` and/or Bob's bit ``y_i``.

Vertex layouts are fixed:

* layered SCC graph: ``v_{i,j}`` at index ``i * (kbar + 1) + j``;
* chain graphs (trivial-SCC and loop variants): ``v_j`` at index ``j``;
* diameter gadget: ``u, t, a_0..a_{s-1}, b_0..b_{s-1}, c_0..c_{s-1}``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .core import ContractError, Graph

REDUCTIONS = {
    1: "scc_layered",
    2: "scc_trivial",
    3: "buchi_loops",
    4: "diameter_gadget",
}


@dataclass(frozen=True)
class DisjointnessInstance:
    k: int
    x: tuple
    y: tuple

    def __post_init__(self):
        if len(self.x) != self.k or len(self.y) != self.k:
            raise ContractError("bit vectors must have length k")
        if any(b not in (0, 1) for b in self.x + self.y):
            raise ContractError("bit vectors must be 0/1")

    @classmethod
    def from_sets(cls, k, sx, sy):
        sx, sy = set(sx), set(sy)
        for s in (sx, sy):
            if any(not 0 <= i < k for i in s):
                raise ContractError(f"set elements must lie in 0..{k - 1}")
        return cls(k, tuple(int(i in sx) for i in range(k)), tuple(int(i in sy) for i in range(k)))

    @classmethod
    def random(cls, k, seed, mode="uniform"):
        """Seeded uniform bits; ``mode`` may force a disjoint or intersecting pair."""
        rng = random.Random(seed)
        x = [rng.randint(0, 1) for _ in range(k)]
        y = [rng.randint(0, 1) for _ in range(k)]
        if mode == "disjoint":
            for i in range(k):
                if x[i] and y[i]:
                    if rng.random() < 0.5:
                        x[i] = 0
                    else:
                        y[i] = 0
        elif mode == "intersecting":
            if k == 0:
                raise ContractError("an empty universe cannot intersect")
            i = rng.randrange(k)
            x[i] = y[i] = 1
        elif mode != "uniform":
            raise ValueError(f"unknown mode {mode!r}")
        return cls(k, tuple(x), tuple(y))

    @property
    def sx(self):
        return frozenset(i for i, b in enumerate(self.x) if b)

    @property
    def sy(self):
        return frozenset(i for i, b in enumerate(self.y) if b)

    @property
    def disjoint(self):
        """The Set Disjointness value f(x, y)."""
        return not (self.sx & self.sy)


# rule -> (parties consulted, presence predicate on (x_i, y_i))
RULES = {
    "either_zero": ("both", lambda a, b: a == 0 or b == 0),
    "both_one": ("both", lambda a, b: a == 1 and b == 1),
    "alice_zero": ("alice", lambda a, b: a == 0),
    "bob_zero": ("bob", lambda a, b: b == 0),
}


@dataclass(frozen=True)
class PossibleEdge:
    u: int
    v: int
    index: int
    rule: str

    @property
    def party(self):
        return RULES[self.rule][0]

    def present(self, inst):
        return RULES[self.rule][1](inst.x[self.index], inst.y[self.index])


@dataclass(frozen=True)
class EdgePartition:
    n: int
    definite: frozenset
    possible: tuple

    def realized(self, inst):
        return {(e.u, e.v) for e in self.possible if e.present(inst)}

    def all_edges(self, inst):
        return set(self.definite) | self.realized(inst)

    def definite_graph(self):
        return Graph(self.n, sorted(self.definite))


def _build(n, definite, possible, inst):
    definite = frozenset(definite)
    possible = tuple(possible)
    overlap = definite & {(e.u, e.v) for e in possible}
    assert not overlap, f"edges both definite and possible: {sorted(overlap)}"
    part = EdgePartition(n, definite, possible)
    return Graph(n, list(part.all_edges(inst))), part


def layered_index(i, j, kbar):
    return i * (kbar + 1) + j


def gen_scc_layered(inst, ell, kbar=None, add_loop_v0=False):
    """Layered construction: ``ell`` blocks of ``kbar + 1`` vertices.

    Every edge from a lower to a higher index is definite; the backward edge
    ``v_{i,j+1} -> v_{i,j}`` exists iff ``x_l = 0`` or ``y_l = 0`` with
    ``l = i * kbar + j``.  The graph has exactly ``ell`` SCCs iff the sets are
    disjoint.  ``add_loop_v0`` adds a definite loop at ``v_{0,0}``.
    """
    k = inst.k
    if kbar is None:
        if ell <= 0 or k % ell:
            raise ContractError(f"divisibility: k={k} is not a multiple of ell={ell}")
        kbar = k // ell
    if ell <= 0 or kbar <= 0 or ell * kbar != k:
        raise ContractError(f"divisibility: ell * kbar must equal k={k}")
    n = k + ell
    definite = {(a, b) for a in range(n) for b in range(a + 1, n)}
    if add_loop_v0:
        definite.add((0, 0))
    possible = []
    for i in range(ell):
        for j in range(kbar):
            hi, lo = layered_index(i, j + 1, kbar), layered_index(i, j, kbar)
            possible.append(PossibleEdge(hi, lo, i * kbar + j, "either_zero"))
    return _build(n, definite, possible, inst)


def gen_scc_trivial(inst):
    """Chain ``v_0..v_k`` with all forward edges; ``v_{j+1} -> v_j`` iff ``j`` in both sets."""
    k = inst.k
    n = k + 1
    definite = {(a, b) for a in range(n) for b in range(a + 1, n)}
    possible = [PossibleEdge(j + 1, j, j, "both_one") for j in range(k)]
    return _build(n, definite, possible, inst)


def gen_buchi_loops(inst, replace_top_loop_with_back_edge=False, add_loop_v0=False):
    """Chain ``v_0..v_k`` with all forward edges and loops on common elements.

    The loop at ``v_j`` (``j < k``) exists iff ``x_j = y_j = 1``; ``v_k`` has a
    definite loop.  Variants:

    * ``replace_top_loop_with_back_edge``: ``(v_k, v_0)`` instead of the top
      loop, making the graph strongly connected with diameter 2;
    * ``add_loop_v0``: the layered graph with a single block plus a definite
      loop at ``v_0`` (co-Büchi with ``T = {v_0}`` then equals reachability).
    """
    if add_loop_v0:
        if replace_top_loop_with_back_edge:
            raise ContractError("variants are mutually exclusive")
        return gen_scc_layered(inst, 1, add_loop_v0=True)
    k = inst.k
    n = k + 1
    definite = {(a, b) for a in range(n) for b in range(a + 1, n)}
    definite.add((k, 0) if replace_top_loop_with_back_edge else (k, k))
    possible = [PossibleEdge(j, j, j, "both_one") for j in range(k)]
    return _build(n, definite, possible, inst)


def gadget_layout(s):
    """Indices of ``u``, ``t`` and the lists ``A``, ``B``, ``C``."""
    A = list(range(2, 2 + s))
    B = list(range(2 + s, 2 + 2 * s))
    C = list(range(2 + 2 * s, 2 + 3 * s))
    return 0, 1, A, B, C


def gen_diameter_gadget(inst):
    """Undirected gadget on ``3s + 2`` vertices (``k = s^2``), diameter 2 iff disjoint.

    ``a_i - c_j`` exists iff ``x_l = 0`` and ``b_i - c_j`` iff ``y_l = 0``,
    with ``l = i * s + j``.  Both directions of each edge are stored.
    """
    k = inst.k
    s = math.isqrt(k)
    if s * s != k or k == 0:
        raise ContractError(f"k={k} is not a positive perfect square")
    u, t, A, B, C = gadget_layout(s)
    n = 3 * s + 2
    und = [(u, t)] + [(u, a) for a in A] + [(u, b) for b in B] + [(t, c) for c in C]
    und += [(A[i], B[i]) for i in range(s)]
    definite = set()
    for p, q in und:
        definite.add((p, q))
        definite.add((q, p))
    possible = []
    for i in range(s):
        for j in range(s):
            idx = i * s + j
            for p, q in ((A[i], C[j]), (C[j], A[i])):
                possible.append(PossibleEdge(p, q, idx, "alice_zero"))
            for p, q in ((B[i], C[j]), (C[j], B[i])):
                possible.append(PossibleEdge(p, q, idx, "bob_zero"))
    return _build(n, definite, possible, inst)


def generate(reduction, inst, ell=None, **variant):
    """Dispatch by reduction number (1-4)."""
    if reduction == 1:
        if ell is None:
            raise ContractError("reduction 1 needs ell")
        return gen_scc_layered(inst, ell, add_loop_v0=variant.get("add_loop_v0", False))
    if reduction == 2:
        return gen_scc_trivial(inst)
    if reduction == 3:
        return gen_buchi_loops(inst, **variant)
    if reduction == 4:
        return gen_diameter_gadget(inst)
    raise ContractError(f"unknown reduction {reduction!r}; expected 1-4")
