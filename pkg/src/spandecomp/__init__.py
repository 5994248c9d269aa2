"""Tree decompositions indexed by a spanning tree of the graph, built from a
path decomposition via factorization trees over the interface semigroup."""
from .decomposer import (Certificate, ForestDecomposition, InvariantError, add_back, base_decompose,
                         decompose, decompose_with_certificate, merge_partition, naive_sequential)
from .graph import (Graph, UnionFind, connected_components, extend_to_maximal_forest, induced_subgraph,
                    neighbor_set, torso)
from .interface import (CanonicalAbstraction, InterfaceGraph, abstraction, boxplus, compatible,
                        compatible_sequence, glue, product)
from .pathdec import (InstanceTooLarge, PathDecomposition, exact_pathwidth, interval_coloring, make_nice,
                      optimal_path_decomposition, to_interface_word, validate_pathdec)
from .report import ValidationReport
from .semigroup import (Binary, Leaf, SemigroupTable, Unranked, evaluate, factorize, generate_subsemigroup,
                        tree_height, verify_factor_tree)
from .verification import (brute_force_cmp, connected_graphs, gen_fig1, gen_random_pathdec,
                           validate_forest_decomposition, validate_suitable)

__version__ = "0.1.0"
