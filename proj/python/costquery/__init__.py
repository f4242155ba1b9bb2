"""Cost-sensitive query trees: greedy and exact builders, scenario generators, simulation."""

from ._core import (
    Error,
    InconsistentOracle,
    Instance,
    InvalidInstance,
    IoError,
    PreconditionError,
    Question,
    QueryTree,
    collision_probability,
    entropy,
    epsilon_greedy_tree,
    gen_compression,
    gen_random,
    greedy_rounded_tree,
    greedy_tree,
    huffman_cost,
    optimal_tree,
    path_cost,
    play,
    round_distribution,
    shrinkage,
    simulate,
    tree_cost,
    validate,
    validate_tree,
)

__version__ = "0.1.0"
