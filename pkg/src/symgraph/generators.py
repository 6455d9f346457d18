"""Small graph families and seeded random graphs."""

import numpy as np

from .core import Graph


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n, loops=False):
    return Graph(n, [(u, v) for u in range(n) for v in range(n) if loops or u != v])


def edgeless(n):
    return Graph(n)


def undirected(n, edges):
    """Store every edge in both directions."""
    both = set()
    for u, v in edges:
        both.add((u, v))
        both.add((v, u))
    return Graph(n, sorted(both))


def random_digraph(n, p, seed):
    """G(n, p) digraph; self-loops included with probability ``p``."""
    rng = np.random.default_rng(seed)
    return Graph.from_adjacency(rng.random((n, n)) < p)


def random_strongly_connected(n, p, seed):
    """G(n, p) plus a Hamiltonian cycle through a random permutation."""
    rng = np.random.default_rng(seed)
    adj = rng.random((n, n)) < p
    perm = rng.permutation(n)
    adj[perm, np.roll(perm, -1)] = True
    if n == 1:
        adj[:] = False
    return Graph.from_adjacency(adj)
