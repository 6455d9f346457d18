"""numpy implementation of the bit-matrix kernels (fallback for ``_kernels``)."""

import numpy as np


def _bits(s):
    return np.unpackbits(s.view(np.uint8), bitorder="little")


def image(rows, s, out):
    idx = np.flatnonzero(_bits(s))
    if idx.size:
        np.bitwise_or.reduce(rows[idx], axis=0, out=out)
    else:
        out[:] = 0


def masked_image(rows, s, domain, out):
    image(rows, s & domain, out)
    out &= domain


def popcount(s):
    return int(np.bitwise_count(s).sum())


def lowest(s):
    nz = np.flatnonzero(s)
    if not nz.size:
        return -1
    w = int(nz[0])
    word = int(s[w])
    return 64 * w + (word & -word).bit_length() - 1


def members(s):
    return np.flatnonzero(_bits(s)).tolist()
