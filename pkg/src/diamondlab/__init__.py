"""Exact tools for diamond-free families in the Boolean lattice."""

from .lattice import Family, binomial, falling, lubell, middle_layers, psi_census
from .patterns import contains_pattern, is_diamond_free, make_pattern
from .graphs import Graph, Bipartition, StructureW, extract_structure, f_value, per_H_sum

__all__ = [
    "Family", "binomial", "falling", "lubell", "middle_layers", "psi_census",
    "contains_pattern", "is_diamond_free", "make_pattern",
    "Graph", "Bipartition", "StructureW", "extract_structure", "f_value", "per_H_sum",
]
