"""Test corpora: exhaustive small bipartite graphs and seeded random BDH graphs."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .graph import BipartiteGraph
from .lattice import hasse, is_tree_shaped
from .pruning import PruningSequence, generate_bdh, is_bdh


def doubly_lexical_matrices(p: int, q: int) -> Iterator[tuple[int, ...]]:
    """Yield p x q 0/1 matrices whose rows and columns are both non-increasing.

    Rows are ints with column 0 in the highest bit.  Zero rows, all-ones rows,
    zero columns and all-ones columns are skipped, so the graphs have no
    isolated and no universal vertex.  Every bipartite graph has a doubly
    lexical ordering, so each isomorphism class with p x-vertices appears at
    least once.
    """
    full = (1 << q) - 1
    rows: list[int] = []

    def extend(i: int, prev: int, tied: int):
        if i == p:
            union = 0
            common = full
            for r in rows:
                union |= r
                common &= r
            if union == full and not common:
                yield tuple(rows)
            return
        for r in range(min(prev, full - 1), 0, -1):
            # bit j of tied: columns j and j+1 agree on every row so far
            still = 0
            ok = True
            for j in range(q - 1):
                if tied >> j & 1:
                    left = r >> (q - 1 - j) & 1
                    right = r >> (q - 2 - j) & 1
                    if left < right:
                        ok = False
                        break
                    if left == right:
                        still |= 1 << j
            if ok:
                rows.append(r)
                yield from extend(i + 1, r, still)
                rows.pop()

    yield from extend(0, full, (1 << (q - 1)) - 1 if q > 1 else 0)


def _rows_connected(rows: tuple[int, ...]) -> bool:
    reached = 1
    cols = rows[0]
    grown = True
    while grown:
        grown = False
        for i, r in enumerate(rows):
            if not reached >> i & 1 and r & cols:
                reached |= 1 << i
                cols |= r
                grown = True
    return reached == (1 << len(rows)) - 1


def exhaustive_graphs(max_n: int, min_n: int = 2) -> Iterator[BipartiteGraph]:
    """Connected bipartite graphs without universal vertices, n in [min_n, max_n].

    Covers every isomorphism class (some more than once); the smaller class
    is always X.
    """
    for n in range(max(min_n, 2), max_n + 1):
        for p in range(1, n // 2 + 1):
            q = n - p
            for rows in doubly_lexical_matrices(p, q):
                if _rows_connected(rows):
                    # flip column order so column 0 is bit 0
                    yield BipartiteGraph.from_row_masks(
                        [int(format(r, f"0{q}b")[::-1], 2) for r in rows], q)


@dataclass
class EquivalenceReport:
    graphs: int
    bdh: int
    counterexamples: list[BipartiteGraph]


def tree_equivalence_sweep(max_n: int, min_n: int = 2,
                           progress: Callable[[int, int], None] | None = None) -> EquivalenceReport:
    """Compare the tree-shaped Hasse digraph test with BDH recognition on every exhaustive graph."""
    total = bdh = 0
    bad = []
    for g in exhaustive_graphs(max_n, min_n):
        verdict = bool(is_bdh(g))
        total += 1
        bdh += verdict
        if is_tree_shaped(hasse(g)) != verdict:
            bad.append(g)
        if progress is not None and total % 100000 == 0:
            progress(total, len(bad))
    return EquivalenceReport(total, bdh, bad)


@dataclass(frozen=True)
class CorpusItem:
    n: int
    seed: int
    pendant_bias: float
    no_universal: bool
    graph: BipartiteGraph
    sequence: PruningSequence


def generated_corpus(count: int, max_n: int, seed: int = 0, min_n: int = 1) -> list[CorpusItem]:
    """Seeded BDH instances with mixed sizes, pendant biases and universal-vertex policy."""
    rng = random.Random(seed)
    biases = (0.1, 0.3, 0.5, 0.7, 0.9)
    out = []
    for k in range(count):
        n = rng.randint(min_n, max_n)
        bias = biases[k % len(biases)]
        strict = n >= 6 and k % 2 == 1
        s = rng.randrange(2 ** 31)
        g, seq = generate_bdh(n, s, bias, no_universal=strict)
        out.append(CorpusItem(n, s, bias, strict, g, seq))
    return out
