"""Bipartite distance-hereditary graphs: recognition, Galois lattices,
arborescence encodings with neighborhood queries, and the hypergraph bridge."""
from .encoding import ArborescenceEncoding, encode, verify_encoding
from .estimators import BDHEncoder, BicliqueLattice
from .exceptions import (BDHError, DisconnectedGraphError, EncodingFormatError, GraphFormatError,
                         InvalidSequenceError, NotBDHError, SizeLimitError, UnknownVertexError,
                         UniversalVertexError)
from .graph import X, Y, BipartiteGraph, Vertex, find_forbidden, parse_graph, star_extend
from .hypergraph import Hypergraph, bachman, check_bridge, classify_acyclicity, is_ptolemaic
from .lattice import Biclique, GaloisLattice, HasseDigraph, hasse, is_tree_shaped, maximal_bicliques
from .pruning import PruningSequence, generate_bdh, is_bdh, pruning_sequence
from .query import QueryStats, enumerate_via_F, intersection_empty, is_maximal_biclique, neighbor_intersection

__version__ = "0.1.0"

__all__ = [
    "ArborescenceEncoding", "BDHEncoder", "BDHError", "Biclique", "BicliqueLattice",
    "BipartiteGraph", "DisconnectedGraphError", "EncodingFormatError", "GaloisLattice",
    "GraphFormatError", "HasseDigraph", "Hypergraph", "InvalidSequenceError", "NotBDHError",
    "PruningSequence", "QueryStats", "SizeLimitError", "UnknownVertexError",
    "UniversalVertexError", "Vertex", "X", "Y", "bachman", "check_bridge", "classify_acyclicity",
    "encode", "enumerate_via_F", "find_forbidden", "generate_bdh", "hasse", "intersection_empty",
    "is_bdh", "is_maximal_biclique", "is_ptolemaic", "is_tree_shaped", "maximal_bicliques",
    "neighbor_intersection", "parse_graph", "pruning_sequence", "star_extend", "verify_encoding",
]
