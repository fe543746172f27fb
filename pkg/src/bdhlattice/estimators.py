"""scikit-learn style wrappers.

A fitted matrix is a biadjacency matrix: rows are the X vertices (samples),
columns the Y vertices (features).  This is the usual objects-by-attributes
layout of a formal context.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .encoding import encode
from .graph import X, Y, BipartiteGraph
from .lattice import hasse_from_bicliques, is_tree_shaped, maximal_bicliques
from .pruning import is_bdh, pruning_sequence
from .query import neighbor_intersection
from .validation import check_biadjacency, check_binary, check_subset_indicators


class BicliqueLattice(TransformerMixin, BaseEstimator):
    """Maximal bicliques and Hasse digraph of a connected bipartite graph.

    Parameters
    ----------
    strict : bool, default=False
        Reject graphs with a universal vertex.

    Attributes
    ----------
    graph_ : BipartiteGraph
    bicliques_ : list of Biclique
        Sorted by x-shore.
    hasse_ : HasseDigraph
    is_tree_shaped_ : bool
    is_bdh_ : bool
    certificate_ : Forbidden or None
        Induced domino or hole when the graph is not BDH.
    n_features_in_ : int
        Number of Y vertices.
    """

    def __init__(self, strict: bool = False):
        self.strict = strict

    def fit(self, A, y=None):
        arr = check_biadjacency(A)
        g = BipartiteGraph.from_biadjacency(arr)
        self.bicliques_ = maximal_bicliques(g, self.strict)
        self.hasse_ = hasse_from_bicliques(self.bicliques_)
        self.is_tree_shaped_ = is_tree_shaped(self.hasse_)
        verdict = is_bdh(g)
        self.is_bdh_ = bool(verdict)
        self.certificate_ = verdict.certificate
        self.graph_ = g
        self.n_features_in_ = arr.shape[1]
        return self

    def extents(self) -> np.ndarray:
        """``(n_bicliques, n_x)`` indicator matrix of the x-shores."""
        check_is_fitted(self, "bicliques_")
        out = np.zeros((len(self.bicliques_), self.graph_.n_x), dtype=bool)
        for k, b in enumerate(self.bicliques_):
            out[k, sorted(b.x_shore)] = True
        return out

    def intents(self) -> np.ndarray:
        """``(n_bicliques, n_y)`` indicator matrix of the y-shores."""
        check_is_fitted(self, "bicliques_")
        out = np.zeros((len(self.bicliques_), self.n_features_in_), dtype=bool)
        for k, b in enumerate(self.bicliques_):
            out[k, sorted(b.y_shore)] = True
        return out

    def transform(self, A):
        """Membership of each row in each biclique: 1 iff the row covers the y-shore.

        On the fitted matrix this is the transpose of :meth:`extents`.
        """
        check_is_fitted(self, "bicliques_")
        arr = check_binary(A, "rows")
        if arr.shape[1] != self.n_features_in_:
            raise ValueError(f"rows have {arr.shape[1]} columns, expected {self.n_features_in_}")
        intents = self.intents().astype(np.int64)
        need = intents.sum(axis=1)
        return (arr.astype(np.int64) @ intents.T) == need


class BDHEncoder(TransformerMixin, BaseEstimator):
    """Both arborescence encodings of a BDH graph, queried through array inputs.

    ``transform`` maps indicator rows over Y to the indicator of their common
    X-neighbors; ``predict`` tells whether each row is the y-shore of a
    maximal biclique.

    Attributes
    ----------
    graph_ : BipartiteGraph
    sequence_ : PruningSequence
    encoding_x_ : ArborescenceEncoding
        X labels the arcs, Y neighborhoods are paths.
    encoding_y_ : ArborescenceEncoding
        Y labels the arcs, X neighborhoods are paths.
    storage_size_ : int
        Integers stored by the two encodings together.
    n_features_in_ : int
    """

    def fit(self, A, y=None):
        arr = check_biadjacency(A)
        g = BipartiteGraph.from_biadjacency(arr)
        self.encoding_y_ = encode(g, arc_side=Y)
        self.encoding_x_ = encode(g, arc_side=X)
        self.sequence_ = pruning_sequence(g)
        self.graph_ = g
        self.storage_size_ = self.encoding_x_.storage_size() + self.encoding_y_.storage_size()
        self.n_features_in_ = arr.shape[1]
        return self

    def _common(self, rows: np.ndarray) -> np.ndarray:
        out = np.zeros((rows.shape[0], self.graph_.n_x), dtype=bool)
        for k, row in enumerate(rows):
            common = neighbor_intersection(self.encoding_x_, np.flatnonzero(row).tolist())
            out[k, [v.index for v in common]] = True
        return out

    def transform(self, S):
        check_is_fitted(self, "encoding_x_")
        return self._common(check_subset_indicators(S, self.n_features_in_))

    def predict(self, S):
        check_is_fitted(self, "encoding_x_")
        rows = check_subset_indicators(S, self.n_features_in_)
        common = self._common(rows)
        out = np.zeros(rows.shape[0], dtype=bool)
        for k, xs in enumerate(common):
            if not xs.any():
                continue
            back = neighbor_intersection(self.encoding_y_, np.flatnonzero(xs).tolist())
            out[k] = sorted(v.index for v in back) == np.flatnonzero(rows[k]).tolist()
        return out
