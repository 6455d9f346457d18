# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled bit-matrix kernels.

Vertex sets are little-endian arrays of uint64 words; bit ``i`` of word ``w``
is vertex ``64 * w + i``.  Adjacency rows use the same layout.
"""
from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil


def image(const uint64_t[:, ::1] rows, const uint64_t[::1] s, uint64_t[::1] out):
    """OR together ``rows[i]`` for every bit ``i`` set in ``s``, into ``out``."""
    cdef Py_ssize_t nwords = out.shape[0]
    cdef Py_ssize_t w, k, i
    cdef uint64_t word
    with nogil:
        for k in range(nwords):
            out[k] = 0
        for w in range(s.shape[0]):
            word = s[w]
            while word:
                i = w * 64 + __builtin_ctzll(word)
                word &= word - 1
                for k in range(nwords):
                    out[k] |= rows[i, k]


def masked_image(const uint64_t[:, ::1] rows, const uint64_t[::1] s,
                 const uint64_t[::1] domain, uint64_t[::1] out):
    """Image of ``s & domain`` intersected with ``domain``."""
    cdef Py_ssize_t nwords = out.shape[0]
    cdef Py_ssize_t w, k, i
    cdef uint64_t word
    with nogil:
        for k in range(nwords):
            out[k] = 0
        for w in range(s.shape[0]):
            word = s[w] & domain[w]
            while word:
                i = w * 64 + __builtin_ctzll(word)
                word &= word - 1
                for k in range(nwords):
                    out[k] |= rows[i, k]
        for k in range(nwords):
            out[k] &= domain[k]


def popcount(const uint64_t[::1] s):
    cdef Py_ssize_t w
    cdef long total = 0
    for w in range(s.shape[0]):
        total += __builtin_popcountll(s[w])
    return total


def lowest(const uint64_t[::1] s):
    """Index of the lowest set bit, or -1 for the empty set."""
    cdef Py_ssize_t w
    for w in range(s.shape[0]):
        if s[w]:
            return w * 64 + __builtin_ctzll(s[w])
    return -1


def members(const uint64_t[::1] s):
    """Ascending list of set bit indices."""
    cdef Py_ssize_t w
    cdef uint64_t word
    out = []
    for w in range(s.shape[0]):
        word = s[w]
        while word:
            out.append(w * 64 + __builtin_ctzll(word))
            word &= word - 1
    return out
