"""Shared fixtures and tiny independent oracles used across the test suite.

The oracle functions here deliberately reimplement things by the dumbest
possible route (full subset sweeps, literal definitions) so that library
results are checked against genuinely independent computations.
"""

from __future__ import annotations

import itertools
from collections import Counter

from isfkit.graphcore import Graph
from isfkit.simplicial import PureComplex
from isfkit.arrangement import LabeledMultigraph


# -- the two labelings of the paw graph (triangle plus a pendant edge) -------


def paw_peo() -> Graph:
    """Pendant at vertex 2; the natural order is a perfect elimination order."""
    return Graph(4, [(1, 2), (2, 3), (1, 4), (2, 4)])


def paw_non_peo() -> Graph:
    """Pendant at vertex 4; the natural order is not a PEO."""
    return Graph(4, [(1, 2), (1, 4), (2, 4), (3, 4)])


def house_graph() -> Graph:
    """Square 1-5-4-3 with roof apex 2 over the edge 1-3."""
    return Graph(5, [(1, 2), (1, 3), (1, 5), (2, 3), (3, 4), (4, 5)])


def cycle_graph(n: int) -> Graph:
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return Graph(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(1, n + 1), 2))


def complete_bipartite(xs, ys) -> Graph:
    n = max(max(xs), max(ys))
    return Graph(n, [(min(a, b), max(a, b)) for a in xs for b in ys])


def increasing_tree() -> Graph:
    """Eight-vertex tree whose root paths all increase (vertex 1 isolated)."""
    return Graph(9, [(3, 5), (2, 3), (2, 4), (4, 7), (3, 9), (2, 6), (4, 8)])


def non_increasing_tree() -> Graph:
    """Same shape, relabeled so the path 2,7,4 descends (vertex 1 isolated)."""
    return Graph(9, [(3, 5), (2, 3), (2, 6), (7, 8), (3, 9), (2, 7), (4, 7)])


# -- complexes ---------------------------------------------------------------


def fan_complex() -> PureComplex:
    return PureComplex(4, 2, [(1, 2, 3), (1, 2, 4), (1, 3, 4)])


def bipyramid() -> PureComplex:
    """Triangular bipyramid: apexes 1 and 3 over the triangle {2,4,5}."""
    return PureComplex(
        5, 2, [(1, 2, 4), (1, 2, 5), (1, 4, 5), (2, 3, 4), (2, 3, 5), (3, 4, 5)]
    )


# swapping 2 and 3 keeps a PEO; the five-cycle relabeling below breaks it
BIPYRAMID_PEO_RELABELING = [1, 3, 2, 4, 5]
BIPYRAMID_NON_PEO_RELABELING = [5, 3, 2, 4, 1]


def bowtie_complex() -> PureComplex:
    return PureComplex(5, 2, [(1, 2, 3), (3, 4, 5)])


def tetrahedron_boundary() -> PureComplex:
    return PureComplex(4, 2, [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)])


# -- multigraphs -------------------------------------------------------------


def anchored_multigraph() -> LabeledMultigraph:
    """Zero edges at 1 and 3, a parallel pair on 1-2, one edge 1-3.

    Generic labels use distinct small primes; this instance is perfectly
    labeled and its lattice has 13 elements.
    """
    return LabeledMultigraph(
        3, zero_edges=[1, 3], labeled_edges=[(1, 2, 2), (1, 2, 3), (1, 3, 5)]
    )


def bare_parallel_pair() -> LabeledMultigraph:
    """A parallel pair on 1-2 with no zero edge: not perfectly labelable."""
    return LabeledMultigraph(2, [], [(1, 2, 2), (1, 2, 3)])


def graph_as_multigraph(G: Graph) -> LabeledMultigraph:
    """Embed a simple graph with all labels 1 and no zero edges."""
    return LabeledMultigraph(G.n, [], [(i, j, 1) for i, j in G.edges])


# -- test-local oracles ------------------------------------------------------


def all_edge_subsets(G: Graph):
    edges = G.sorted_edges()
    for r in range(len(edges) + 1):
        yield from (frozenset(c) for c in itertools.combinations(edges, r))


def oracle_increasing(subset) -> bool:
    """Literal criterion: no vertex receives two edges from below."""
    tops = [j for _, j in subset]
    return len(tops) == len(set(tops))


def oracle_isf_counts(G: Graph) -> dict[int, int]:
    counts = Counter(
        len(s) for s in all_edge_subsets(G) if oracle_increasing(s)
    )
    return dict(sorted(counts.items()))


def oracle_nbc_sets(G: Graph, broken) -> set[frozenset]:
    return {
        s for s in all_edge_subsets(G) if not any(b <= s for b in broken)
    }


def oracle_coloring_count(G: Graph, t: int) -> int:
    """Pure-python sweep of all t**n colorings."""
    total = 0
    for coloring in itertools.product(range(t), repeat=G.n):
        if all(coloring[i - 1] != coloring[j - 1] for i, j in G.edges):
            total += 1
    return total


def relabel_to_natural_peo(G: Graph, peo) -> Graph:
    """Relabel so the given elimination order becomes 1, 2, ..., n."""
    perm = [0] * G.n
    for position, vertex in enumerate(peo, start=1):
        perm[vertex - 1] = position
    return G.relabeled(perm)
