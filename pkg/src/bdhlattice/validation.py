"""Input checks shared by the estimators and the command line."""
from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .graph import X, Y, BipartiteGraph


def check_side(side) -> str:
    """Normalize a color-class name to ``"X"`` or ``"Y"``."""
    s = str(side).upper()
    if s not in (X, Y):
        raise ValueError(f"side must be 'X' or 'Y', got {side!r}")
    return s


def check_binary(a, name: str = "array") -> np.ndarray:
    """2-D 0/1 array as ``bool``; rejects other values, NaN and infinities."""
    arr = check_array(a, dtype=None, ensure_min_samples=1, ensure_min_features=1,
                      input_name=name)
    if arr.dtype != bool:
        if not np.isin(arr, (0, 1)).all():
            raise ValueError(f"{name} must contain only 0 and 1")
        arr = arr.astype(bool)
    return arr


def check_biadjacency(a) -> np.ndarray:
    """Biadjacency matrix with rows for X and columns for Y."""
    return check_binary(a, "biadjacency")


def check_graph(g) -> BipartiteGraph:
    """Pass a :class:`BipartiteGraph` through, or build one from a biadjacency matrix."""
    if isinstance(g, BipartiteGraph):
        return g
    return BipartiteGraph.from_biadjacency(check_biadjacency(g))


def check_subset_indicators(s, n_columns: int, name: str = "subsets") -> np.ndarray:
    """Rows of vertex-subset indicators; each row must select at least one vertex."""
    arr = check_binary(s, name)
    if arr.shape[1] != n_columns:
        raise ValueError(f"{name} has {arr.shape[1]} columns, expected {n_columns}")
    empty = np.flatnonzero(~arr.any(axis=1))
    if empty.size:
        raise ValueError(f"{name} row {int(empty[0])} selects no vertex")
    return arr
