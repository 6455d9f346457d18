"""Symbolic graph algorithms over a Pre/Post + set-operation cost model."""

from .core import (
    ContractError,
    EmptyPickError,
    Graph,
    GraphFormatError,
    Mask,
    OpCounter,
    VertexSet,
    backward_search,
    forward_search,
    post,
    pre,
    set_algebra,
)
from .kernels import BACKEND

__all__ = [
    "BACKEND",
    "ContractError",
    "EmptyPickError",
    "Graph",
    "GraphFormatError",
    "Mask",
    "OpCounter",
    "VertexSet",
    "backward_search",
    "forward_search",
    "post",
    "pre",
    "set_algebra",
]
