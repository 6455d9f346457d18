"""Backend selection for the bit-matrix kernels.

The compiled ``_kernels`` extension is used when it imports; otherwise the
numpy fallback in ``_kernels_py``.  Setting ``SYMGRAPH_PURE_PYTHON=1`` forces
the fallback.  Both expose the same five functions.
"""

import importlib
import os
import sys

if sys.byteorder != "little":  # word/byte views assume little-endian packing
    raise ImportError("symgraph requires a little-endian platform")

_NAMES = ("image", "masked_image", "popcount", "lowest", "members")
_MODULES = {"cython": "symgraph._kernels", "python": "symgraph._kernels_py"}

BACKEND = None


def available_backends():
    found = []
    for name, modname in _MODULES.items():
        try:
            importlib.import_module(modname)
        except ImportError:
            continue
        found.append(name)
    return found


def load(name):
    """Return the kernel module for backend ``name`` ("cython" or "python")."""
    return importlib.import_module(_MODULES[name])


def set_backend(name):
    """Rebind this module's kernel functions to backend ``name``."""
    global BACKEND
    mod = load(name)
    g = globals()
    for fn in _NAMES:
        g[fn] = getattr(mod, fn)
    BACKEND = name


if os.environ.get("SYMGRAPH_PURE_PYTHON"):
    set_backend("python")
else:
    try:
        set_backend("cython")
    except ImportError:
        set_backend("python")
