"""Symbolic computation model: graphs, vertex sets, one-step and set operations.

A symbolic algorithm touches the graph only through ``pre`` and ``post``
(one-step operations) and manipulates :class:`VertexSet` values with basic set
operations.  Every operation is tallied on an :class:`OpCounter`; sets created
under a counter also register as *alive* so that the peak number of stored
sets can be measured.

Sets are dense bit vectors packed into ``uint64`` words.  A :class:`Graph`
stores both the successor rows and the transposed (predecessor) rows, so
``pre`` and ``post`` are the same kernel over different matrices.
"""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import kernels

_WORD = 64


class ContractError(ValueError):
    """A precondition of a symbolic operation was violated."""


class EmptyPickError(ContractError):
    def __init__(self):
        super().__init__("empty pick")


class GraphFormatError(ValueError):
    """Malformed graph or vertex-set file; carries a 1-based line/column."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "") + ": "
        super().__init__(where + message)


def _nwords(n):
    return max(1, (n + _WORD - 1) // _WORD)


class OpCounter:
    """Tallies of one-step operations, set operations and stored sets."""

    __slots__ = ("one_step", "set_ops", "peak_sets", "_alive")

    def __init__(self):
        self.one_step = 0
        self.set_ops = 0
        self.peak_sets = 0
        self._alive = 0

    @property
    def alive(self):
        return self._alive

    def _acquire(self):
        self._alive += 1
        if self._alive > self.peak_sets:
            self.peak_sets = self._alive

    def reset(self):
        self.one_step = 0
        self.set_ops = 0
        self.peak_sets = self._alive

    def snapshot(self):
        return {"one_step": self.one_step, "set_ops": self.set_ops, "peak_sets": self.peak_sets}

    def __repr__(self):
        return (f"OpCounter(one_step={self.one_step}, set_ops={self.set_ops}, "
                f"peak_sets={self.peak_sets})")


class VertexSet:
    """Immutable subset of ``{0, ..., n-1}``.

    Operators ``|``, ``&``, ``-``, ``~``, ``<=``, ``==``, ``len``, ``bool`` and
    ``in`` are basic set operations and are charged to the set's counter.
    Iteration (ascending) is free; it is meant for reporting, not algorithms.
    """

    __slots__ = ("n", "_words", "_ctr")

    def __init__(self, n, members=(), ctr=None):
        words = np.zeros(_nwords(n), dtype=np.uint64)
        for v in members:
            v = int(v)
            if not 0 <= v < n:
                raise ContractError(f"vertex {v} outside universe of size {n}")
            words[v >> 6] |= np.uint64(1 << (v & 63))
        self._init(n, words, ctr)

    def _init(self, n, words, ctr):
        words.flags.writeable = False
        self.n = n
        self._words = words
        self._ctr = ctr
        if ctr is not None:
            ctr._acquire()

    @classmethod
    def _wrap(cls, n, words, ctr):
        obj = object.__new__(cls)
        obj._init(n, words, ctr)
        return obj

    def __del__(self):
        ctr = getattr(self, "_ctr", None)
        if ctr is not None:
            ctr._alive -= 1

    # constructors ---------------------------------------------------------
    @classmethod
    def empty(cls, n, ctr=None):
        return cls._wrap(n, np.zeros(_nwords(n), dtype=np.uint64), ctr)

    @classmethod
    def full(cls, n, ctr=None):
        return cls._wrap(n, _full_words(n), ctr)

    @classmethod
    def singleton(cls, n, v, ctr=None):
        if not 0 <= v < n:
            raise ContractError(f"vertex {v} outside universe of size {n}")
        words = np.zeros(_nwords(n), dtype=np.uint64)
        words[v >> 6] = np.uint64(1 << (v & 63))
        return cls._wrap(n, words, ctr)

    def tracked(self, ctr):
        """Copy of this set registered with ``ctr``."""
        return VertexSet._wrap(self.n, self._words.copy(), ctr)

    def detached(self):
        """Copy that is not charged to any counter."""
        return VertexSet._wrap(self.n, self._words.copy(), None)

    # free inspection --------------------------------------------------------
    def __iter__(self) -> Iterator[int]:
        return iter(kernels.members(self._words))

    def to_list(self):
        return kernels.members(self._words)

    def to_frozenset(self):
        return frozenset(kernels.members(self._words))

    def __repr__(self):
        return f"VertexSet(n={self.n}, {{{', '.join(map(str, self))}}})"

    def __hash__(self):
        return hash((self.n, self._words.tobytes()))

    # counted operations -----------------------------------------------------
    def _tick(self, other=None):
        ctr = self._ctr if self._ctr is not None else getattr(other, "_ctr", None)
        if ctr is not None:
            ctr.set_ops += 1
        return ctr

    def _check(self, other):
        if not isinstance(other, VertexSet):
            return False
        if other.n != self.n:
            raise ContractError(f"universe mismatch: {self.n} vs {other.n}")
        return True

    def __or__(self, other):
        if not self._check(other):
            return NotImplemented
        ctr = self._tick(other)
        return VertexSet._wrap(self.n, self._words | other._words, ctr)

    def __and__(self, other):
        if not self._check(other):
            return NotImplemented
        ctr = self._tick(other)
        return VertexSet._wrap(self.n, self._words & other._words, ctr)

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        ctr = self._tick(other)
        return VertexSet._wrap(self.n, self._words & ~other._words, ctr)

    def __invert__(self):
        ctr = self._tick()
        return VertexSet._wrap(self.n, ~self._words & _full_words(self.n), ctr)

    def __le__(self, other):
        if not self._check(other):
            return NotImplemented
        self._tick(other)
        return not np.any(self._words & ~other._words)

    def __eq__(self, other):
        if not isinstance(other, VertexSet) or other.n != self.n:
            return NotImplemented
        self._tick(other)
        return bool(np.array_equal(self._words, other._words))

    def __bool__(self):
        self._tick()
        return bool(np.any(self._words))

    def __len__(self):
        self._tick()
        return kernels.popcount(self._words)

    def __contains__(self, v):
        self._tick()
        v = int(v)
        if not 0 <= v < self.n:
            return False
        return bool((int(self._words[v >> 6]) >> (v & 63)) & 1)

    def pick_min(self):
        self._tick()
        v = kernels.lowest(self._words)
        if v < 0:
            raise EmptyPickError()
        return v


def _full_words(n):
    words = np.full(_nwords(n), np.uint64(0xFFFFFFFFFFFFFFFF), dtype=np.uint64)
    tail = n % _WORD
    if tail:
        words[-1] = np.uint64((1 << tail) - 1)
    if n == 0:
        words[:] = 0
    return words


@dataclass(frozen=True)
class Mask:
    """Restricts one-step operations to the subgraph induced by ``domain``."""

    domain: VertexSet


def _pack_rows(adj):
    n = adj.shape[0]
    packed = np.packbits(adj, axis=1, bitorder="little")
    buf = np.zeros((n, _nwords(n) * 8), dtype=np.uint8)
    buf[:, : packed.shape[1]] = packed
    return np.ascontiguousarray(buf).view(np.uint64)


class Graph:
    """Immutable directed graph on ``{0, ..., n-1}`` with dense bit rows.

    Self-loops are allowed; the edge set is a relation (duplicates collapse).
    """

    __slots__ = ("n", "_succ", "_pred", "_m")

    def __init__(self, n, edges=()):
        n = int(n)
        if n < 0:
            raise ContractError("vertex count must be non-negative")
        adj = np.zeros((n, n), dtype=bool)
        edges = list(edges)
        if edges:
            arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
            if arr.min() < 0 or arr.max() >= n:
                raise ContractError(f"edge endpoint outside 0..{n - 1}")
            adj[arr[:, 0], arr[:, 1]] = True
        self._setup(n, adj)

    def _setup(self, n, adj):
        self.n = n
        self._succ = _pack_rows(adj)
        self._pred = _pack_rows(np.ascontiguousarray(adj.T))
        self._succ.flags.writeable = False
        self._pred.flags.writeable = False
        self._m = int(adj.sum())

    @classmethod
    def from_adjacency(cls, matrix):
        adj = np.asarray(matrix, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ContractError("adjacency matrix must be square")
        obj = object.__new__(cls)
        obj._setup(adj.shape[0], adj.copy())
        return obj

    @property
    def m(self):
        return self._m

    def adjacency(self):
        n = self.n
        bits = np.unpackbits(self._succ.view(np.uint8), axis=1, bitorder="little")
        return bits[:, :n].astype(bool)

    def edges(self):
        us, vs = np.nonzero(self.adjacency())
        return list(zip(us.tolist(), vs.tolist()))

    def has_edge(self, u, v):
        return bool((int(self._succ[u, v >> 6]) >> (v & 63)) & 1)

    def successors(self, u):
        return kernels.members(self._succ[u])

    def predecessors(self, v):
        return kernels.members(self._pred[v])

    def transpose(self):
        return Graph.from_adjacency(self.adjacency().T)

    def digest(self):
        """sha256 over n and the packed adjacency rows."""
        h = hashlib.sha256(f"{self.n}\n".encode())
        h.update(np.ascontiguousarray(self._succ).tobytes())
        return h.hexdigest()

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._succ, other._succ)

    __hash__ = None

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def _image(self, words, forward, domain=None):
        """Raw one-step image of the packed set ``words``.

        Overridden by instrumented graphs (see :mod:`symgraph.protocol`).
        """
        rows = self._succ if forward else self._pred
        out = np.empty(_nwords(self.n), dtype=np.uint64)
        if domain is None:
            kernels.image(rows, words, out)
        else:
            kernels.masked_image(rows, words, domain, out)
        return out


# one-step operations ----------------------------------------------------------

def _domain_of(mask):
    if mask is None:
        return None
    if isinstance(mask, Mask):
        return mask.domain
    if isinstance(mask, VertexSet):
        return mask
    raise TypeError(f"mask must be Mask or VertexSet, not {type(mask).__name__}")


def _one_step(G, S, mask, ctr, forward):
    if S.n != G.n:
        raise ContractError(f"universe mismatch: set over {S.n}, graph over {G.n}")
    domain = _domain_of(mask)
    if domain is not None and domain.n != G.n:
        raise ContractError(f"universe mismatch: mask over {domain.n}, graph over {G.n}")
    if ctr is None:
        ctr = S._ctr
    out = G._image(S._words, forward, None if domain is None else domain._words)
    if ctr is not None:
        ctr.one_step += 1
        if domain is not None:
            ctr.set_ops += 1
    return VertexSet._wrap(G.n, out, ctr)


def post(G, S, mask=None, ctr=None):
    """Successors of ``S`` (within ``mask``'s domain when given)."""
    return _one_step(G, S, mask, ctr, True)


def pre(G, S, mask=None, ctr=None):
    """Predecessors of ``S`` (within ``mask``'s domain when given)."""
    return _one_step(G, S, mask, ctr, False)


# basic set operations -------------------------------------------------------------

def _with(a, ctr):
    # route a counted op to ``ctr`` without copying when it already matches
    if ctr is None or a._ctr is ctr:
        return a
    return VertexSet._wrap(a.n, a._words, ctr)


def union(a, b, ctr=None):
    return _with(a, ctr) | b


def intersect(a, b, ctr=None):
    return _with(a, ctr) & b


def difference(a, b, ctr=None):
    return _with(a, ctr) - b


def complement(a, ctr=None):
    return ~_with(a, ctr)


def is_subset(a, b, ctr=None):
    return _with(a, ctr) <= b


def equals(a, b, ctr=None):
    return _with(a, ctr) == b


def is_empty(a, ctr=None):
    return not _with(a, ctr)


def cardinality(a, ctr=None):
    return len(_with(a, ctr))


def pick_min(a, ctr=None):
    return _with(a, ctr).pick_min()


_SET_OPS = {
    "union": union,
    "intersect": intersect,
    "difference": difference,
    "is_subset": is_subset,
    "equals": equals,
}
_UNARY_OPS = {
    "complement": complement,
    "is_empty": is_empty,
    "cardinality": cardinality,
    "pick_min": pick_min,
}


def set_algebra(a, b, op, ctr=None):
    """Dispatch a basic set operation by name; ``b`` is ignored for unary ops."""
    if op in _SET_OPS:
        return _SET_OPS[op](a, b, ctr)
    if op in _UNARY_OPS:
        return _UNARY_OPS[op](a, ctr)
    raise ValueError(f"unknown set operation {op!r}")


# symbolic breadth-first search --------------------------------------------------------

def _search(G, U, mask, ctr, forward, limit=None):
    # Returns (reached, depth).  Stops after ``limit`` one-step operations
    # when a limit is given; otherwise at the fixpoint (depth + 1 operations).
    if ctr is None:
        ctr = U._ctr
    step = post if forward else pre
    reached = U
    level = U
    depth = 0
    while limit is None or depth < limit:
        new = step(G, level, mask, ctr) - reached
        if not new:
            break
        reached = reached | new
        level = new
        depth += 1
    return reached, depth


def forward_search(G, U, mask=None, ctr=None):
    """Forward set of ``U`` and the depth of the search.

    Uses ``depth + 1`` post operations; the last one detects the fixpoint.
    """
    if not U:
        raise ContractError("empty source")
    return _search(G, U, mask, ctr, True)


def backward_search(G, U, mask=None, ctr=None):
    """Backward set of ``U`` and the depth of the search (mirror of forward)."""
    if not U:
        raise ContractError("empty source")
    return _search(G, U, mask, ctr, False)


# file formats -------------------------------------------------------------------------

def _data_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, raw


def _tokens(raw):
    col = 0
    for tok in raw.split():
        col = raw.index(tok, col)
        yield col + 1, tok
        col += len(tok)


def _ints(lineno, raw, expect):
    values, cols = [], []
    for col, tok in _tokens(raw):
        try:
            values.append(int(tok))
        except ValueError:
            raise GraphFormatError(f"expected integer, got {tok!r}", lineno, col) from None
        cols.append(col)
    if len(values) != expect:
        raise GraphFormatError(f"expected {expect} integers, got {len(values)}", lineno, 1)
    return values, cols


def parse_graph(text):
    """Parse the "n m" + m lines of "u v" edge-list format."""
    lines = _data_lines(text)
    try:
        lineno, raw = next(lines)
    except StopIteration:
        raise GraphFormatError("missing 'n m' header line") from None
    (n, m), _ = _ints(lineno, raw, 2)
    if n < 0 or m < 0:
        raise GraphFormatError("n and m must be non-negative", lineno, 1)
    edges = []
    seen = set()
    last = lineno
    for lineno, raw in lines:
        last = lineno
        (u, v), cols = _ints(lineno, raw, 2)
        for col, x in zip(cols, (u, v)):
            if not 0 <= x < n:
                raise GraphFormatError(f"vertex {x} outside 0..{n - 1}", lineno, col)
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate edge {u} {v}", lineno, 1)
        seen.add((u, v))
        edges.append((u, v))
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}", last)
    return Graph(n, edges)


def read_graph(path):
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def format_graph(G, comment=None):
    buf = io.StringIO()
    if comment:
        for line in comment.splitlines():
            buf.write(f"# {line}\n")
    edges = G.edges()
    buf.write(f"{G.n} {len(edges)}\n")
    for u, v in edges:
        buf.write(f"{u} {v}\n")
    return buf.getvalue()


def write_graph(G, path, comment=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(G, comment))


def parse_vertex_set(text, n, ctr=None):
    """Whitespace-separated vertex indices (comment lines allowed)."""
    members = []
    for lineno, raw in _data_lines(text):
        for col, tok in _tokens(raw):
            try:
                v = int(tok)
            except ValueError:
                raise GraphFormatError(f"expected vertex index, got {tok!r}", lineno, col) from None
            if not 0 <= v < n:
                raise GraphFormatError(f"vertex {v} outside 0..{n - 1}", lineno, col)
            members.append(v)
    return VertexSet(n, members, ctr)


def read_vertex_set(path, n, ctr=None):
    with open(path, encoding="utf-8") as fh:
        return parse_vertex_set(fh.read(), n, ctr)


def format_vertex_set(S: Iterable[int]):
    return " ".join(str(v) for v in S) + "\n"
