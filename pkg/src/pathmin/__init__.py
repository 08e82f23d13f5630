"""Static leaf-to-ancestor path minimum queries in the comparison-oracle model."""

from .errors import PathMinError
from .index import EMPTY, PathMinIndex, QueryResult, preprocess
from .oracle import CompOrder, CountingOracle, IntWeightOracle, WeightOracle
from .reference import BruteForceModel
from .tree import RootedTree, build_tree, parse_tree, read_tree

__all__ = [
    "EMPTY",
    "BruteForceModel",
    "CompOrder",
    "CountingOracle",
    "IntWeightOracle",
    "PathMinError",
    "PathMinIndex",
    "QueryResult",
    "RootedTree",
    "WeightOracle",
    "build_tree",
    "parse_tree",
    "preprocess",
    "read_tree",
]
