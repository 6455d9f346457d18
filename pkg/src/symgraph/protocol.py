"""Two-party communication accounting for symbolic algorithms.

Alice holds ``x`` and Bob holds ``y``; both know every vertex and the
definite edges of a reduction graph, and both run the same symbolic
algorithm in lock-step.  Set operations are free.  Each one-step operation
is answered by a local protocol whose bit cost is charged here:

* chain/layered reductions (1-3): a possible edge is queried only when its
  presence can change the output, i.e. (for ``post``) its source lies in
  ``S`` and its target is not already a definite successor of ``S``
  (symmetrically for ``pre``).  Each query costs 2 bits, one per party.
* diameter gadget (4): Alice knows every edge except those between ``B``
  and ``C``.  When ``S`` meets ``B`` or ``C``, the parties exchange
  ``2s``-bit vectors over ``B`` and ``C`` in each direction, ``4s`` bits.

Every simulated image is checked against the realized graph, and the
final answer against an uninstrumented run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .core import ContractError, Graph, OpCounter, VertexSet, _nwords
from .diameter import diameter_exact
from .objectives import buchi, cobuchi, reach, safe
from .reductions import generate, gadget_layout
from .scc import scc_decomposition

ALGORITHMS = ("scc", "reach", "buchi", "safe", "cobuchi", "diameter_exact")


class ProtocolError(RuntimeError):
    """A simulated answer disagreed with the realized graph."""


@dataclass
class ProtocolTranscript:
    reduction: int
    algorithm: str
    total_bits: int = 0
    per_op_bits: list = field(default_factory=list)
    op_count: int = 0
    answer: object = None

    @property
    def max_bits_per_op(self):
        return max(self.per_op_bits, default=0)

    def charge(self, bits):
        self.per_op_bits.append(bits)
        self.total_bits += bits
        self.op_count += 1

    def to_dict(self):
        return {
            "reduction": self.reduction,
            "algorithm": self.algorithm,
            "op_count": self.op_count,
            "total_bits": self.total_bits,
            "max_bits_per_op": self.max_bits_per_op,
        }


def _bools(words, n):
    return np.unpackbits(words.view(np.uint8), count=n, bitorder="little").astype(bool)


def _pack(flags):
    out = np.zeros(_nwords(len(flags)), dtype=np.uint64)
    packed = np.packbits(flags, bitorder="little")
    out.view(np.uint8)[: len(packed)] = packed
    return out


def _rows(n, edges):
    adj = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        adj[u, v] = True
    g = Graph.from_adjacency(adj)
    return g._succ, g._pred


def _apply(rows, words, n):
    out = np.empty(_nwords(n), dtype=np.uint64)
    kernels.image(rows, words, out)
    return out


class ProtocolGraph(Graph):
    """Realized reduction graph whose one-step images are computed by protocol."""

    __slots__ = ("reduction", "transcript", "_local")

    def __init__(self, reduction, graph, part, inst, transcript):
        Graph._setup(self, graph.n, graph.adjacency())
        self.reduction = reduction
        self.transcript = transcript
        n = graph.n
        if reduction in (1, 2, 3):
            poss = part.possible
            self._local = {
                "definite": _rows(n, part.definite),
                "src": np.array([e.u for e in poss], dtype=np.int64),
                "dst": np.array([e.v for e in poss], dtype=np.int64),
                "present": np.array([e.present(inst) for e in poss], dtype=bool),
            }
        else:
            s = math.isqrt(inst.k)
            _, _, _, B, C = gadget_layout(s)
            realized = part.realized(inst)
            alice = set(part.definite) | {(e.u, e.v) for e in part.possible
                                          if e.party == "alice" and (e.u, e.v) in realized}
            bob = {(e.u, e.v) for e in part.possible
                   if e.party == "bob" and (e.u, e.v) in realized}
            bc = np.zeros(n, dtype=bool)
            bc[B + C] = True
            self._local = {"s": s, "alice": _rows(n, alice), "bob": _rows(n, bob),
                           "bc": _pack(bc)}

    def _chain_image(self, words, forward):
        n, loc = self.n, self._local
        succ, pred = loc["definite"]
        known = _apply(succ if forward else pred, words, n)
        s_in = _bools(words, n)
        known_in = _bools(known, n)
        near, far = (loc["src"], loc["dst"]) if forward else (loc["dst"], loc["src"])
        queried = s_in[near] & ~known_in[far]
        self.transcript.charge(2 * int(queried.sum()))
        known_in[far[queried & loc["present"]]] = True
        return _pack(known_in)

    def _gadget_image(self, words, forward):
        loc = self._local
        a_succ, a_pred = loc["alice"]
        b_succ, b_pred = loc["bob"]
        touches = bool(np.any(words & loc["bc"]))
        self.transcript.charge(4 * loc["s"] if touches else 0)
        out = _apply(a_succ if forward else a_pred, words, self.n)
        if touches:
            out |= _apply(b_succ if forward else b_pred, words & loc["bc"], self.n)
        return out

    def _image(self, words, forward, domain=None):
        src = words if domain is None else words & domain
        if self.reduction in (1, 2, 3):
            out = self._chain_image(src, forward)
        else:
            out = self._gadget_image(src, forward)
        if domain is not None:
            out &= domain
        truth = super()._image(words, forward, domain)
        if not np.array_equal(out, truth):
            raise ProtocolError(f"protocol image disagrees with the graph (forward={forward})")
        return out


def default_target(reduction, inst, n):
    if reduction == 3:
        return list(range(inst.k))
    return [0]


def run_algorithm(G, algorithm, target, ctr):
    """Run a solver and return a JSON-friendly answer."""
    if algorithm == "scc":
        rep = scc_decomposition(G, ctr)
        return sorted(sorted(c) for c in rep.partition())
    if algorithm == "diameter_exact":
        return diameter_exact(G, ctr).value
    T = VertexSet(G.n, target, ctr)
    solver = {"reach": reach, "buchi": buchi, "safe": safe, "cobuchi": cobuchi}[algorithm]
    return solver(G, T, ctr).to_list()


def simulate(reduction, inst, algorithm, ell=None, target=None, **variant):
    """Replay ``algorithm`` on the reduction graph of ``inst`` and charge bits."""
    if reduction not in (1, 2, 3, 4):
        raise ContractError(f"unsupported reduction {reduction!r}")
    if algorithm not in ALGORITHMS:
        raise ContractError(f"unsupported algorithm {algorithm!r}; expected one of {ALGORITHMS}")
    G, part = generate(reduction, inst, ell, **variant)
    if target is None:
        target = default_target(reduction, inst, G.n)

    plain = OpCounter()
    expected = run_algorithm(G, algorithm, target, plain)

    transcript = ProtocolTranscript(reduction, algorithm)
    PG = ProtocolGraph(reduction, G, part, inst, transcript)
    ctr = OpCounter()
    transcript.answer = run_algorithm(PG, algorithm, target, ctr)
    if transcript.answer != expected:
        raise ProtocolError("instrumented answer differs from the plain run")
    if ctr.one_step != transcript.op_count or plain.one_step != ctr.one_step:
        raise ProtocolError("operation count mismatch")
    return transcript
