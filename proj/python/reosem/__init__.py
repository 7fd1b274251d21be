"""Connector semantics: coloring models, constraint automata and the maps between them."""

from ._reosem import (
    AlphaConnector,
    EpsilonConnector,
    ModelParseError,
    ReosemError,
    ResourceLimitError,
    check_bisim,
    compose,
    deserialize,
    elaborate_circuit,
    export_dot,
    instantiate,
    inv_l_transform,
    l_transform,
    serialize,
)

__all__ = [
    "AlphaConnector",
    "EpsilonConnector",
    "ModelParseError",
    "ReosemError",
    "ResourceLimitError",
    "check_bisim",
    "compose",
    "deserialize",
    "elaborate_circuit",
    "export_dot",
    "instantiate",
    "inv_l_transform",
    "l_transform",
    "serialize",
]
