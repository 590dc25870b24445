"""Discrete curvature, Morse indices and Euler characteristic of finite simple graphs."""

from .errors import CapacityError, ConsistencyError, DomainError, InputError, ParseError
from .graph import (
    CliqueSet,
    FVector,
    Graph,
    build_graph,
    enumerate_cliques,
    f_vector,
    generate,
    generate_from_spec,
    induced_subgraph,
    parse_graph,
    serialize_graph,
    spanning_tree_count,
    unit_sphere,
)
from .topology import euler_characteristic, euler_characteristic_ph, genus, is_geometric, tree_functional

__all__ = [
    "CapacityError",
    "CliqueSet",
    "ConsistencyError",
    "DomainError",
    "FVector",
    "Graph",
    "InputError",
    "ParseError",
    "build_graph",
    "enumerate_cliques",
    "euler_characteristic",
    "euler_characteristic_ph",
    "f_vector",
    "generate",
    "generate_from_spec",
    "genus",
    "induced_subgraph",
    "is_geometric",
    "parse_graph",
    "serialize_graph",
    "spanning_tree_count",
    "tree_functional",
    "unit_sphere",
]
