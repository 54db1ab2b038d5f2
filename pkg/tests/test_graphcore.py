import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from isfkit.errors import BudgetExceededError, InputError
from isfkit.graphcore import (
    EdgeOrder,
    Graph,
    SpanningSubgraph,
    acyclic_orientation_count,
    broken_circuits,
    chromatic_polynomial,
    count_proper_colorings,
    counts_to_polynomial,
    edge_partition,
    enumerate_isf,
    find_peo,
    has_triangle,
    is_bipartite,
    is_increasing_forest,
    is_peo,
    isf_polynomial,
    isf_set_list,
    nbc_set_list,
    nbc_sets,
    simple_cycles,
    verify_isf_nbc,
)
from isfkit.polycore import IntPolynomial, WeightedGF, poly_from_linear_factors

from helpers import (
    all_edge_subsets,
    complete_graph,
    cycle_graph,
    house_graph,
    increasing_tree,
    non_increasing_tree,
    oracle_coloring_count,
    oracle_isf_counts,
    oracle_nbc_sets,
    paw_non_peo,
    paw_peo,
    relabel_to_natural_peo,
)


def random_graph(rng, n):
    return Graph(
        n,
        [
            (i, j)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
            if rng.random() < 0.5
        ],
    )


def test_graph_validation():
    with pytest.raises(InputError):
        Graph(3, [(0, 1)])
    with pytest.raises(InputError):
        Graph(3, [(2, 2)])
    with pytest.raises(InputError):
        Graph(3, [(1, 4)])


def test_graph_json_roundtrip():
    G = paw_peo()
    assert Graph.from_json(G.to_json()) == G


def test_edge_partition_worked_example():
    blocks = edge_partition(paw_peo())
    assert blocks[1] == frozenset()
    assert blocks[2] == {(1, 2)}
    assert blocks[3] == {(2, 3)}
    assert blocks[4] == {(1, 4), (2, 4)}


def test_edge_partition_edgeless():
    assert all(not v for v in edge_partition(Graph(5)).values())


def test_edge_partition_non_peo_labeling():
    blocks = edge_partition(paw_non_peo())
    assert blocks[2] == {(1, 2)}
    assert blocks[4] == {(1, 4), (2, 4), (3, 4)}
    # oracle: the brute-force ISF count matches t^2 (t+1) (t+3)
    counts = oracle_isf_counts(paw_non_peo())
    assert counts_to_polynomial(counts, 4) == poly_from_linear_factors(
        [0, 0, 1, 3]
    )


def test_is_increasing_forest_trees():
    T = increasing_tree()
    assert is_increasing_forest(SpanningSubgraph(T, T.edges))
    T2 = non_increasing_tree()
    assert not is_increasing_forest(SpanningSubgraph(T2, T2.edges))
    assert is_increasing_forest(SpanningSubgraph(T, ()))


def test_enumerate_isf_worked_example():
    assert enumerate_isf(paw_peo()) == {0: 1, 1: 4, 2: 5, 3: 2}


def test_enumerate_isf_single_edge():
    assert enumerate_isf(Graph(2, [(1, 2)])) == {0: 1, 1: 1}


def test_enumerate_isf_five_cycle_matches_factorization():
    C5 = cycle_graph(5)
    # oracle: independent factored computation from the edge partition sizes
    expected = poly_from_linear_factors([0, 1, 1, 1, 2])
    assert counts_to_polynomial(enumerate_isf(C5), 5) == expected


def test_enumerate_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_isf(complete_graph(7), budget=10)


def test_isf_listing_matches_subset_sweep():
    rng = random.Random(7)
    for _ in range(25):
        G = random_graph(rng, rng.randint(1, 6))
        swept = {
            s
            for s in all_edge_subsets(G)
            if is_increasing_forest(SpanningSubgraph(G, s))
        }
        assert set(isf_set_list(G)) == swept


def test_isf_polynomial_worked_examples():
    assert isf_polynomial(paw_peo()).coeffs == (0, 2, 5, 4, 1)
    assert isf_polynomial(paw_non_peo()).coeffs == (0, 0, 3, 4, 1)
    K3 = complete_graph(3)
    assert isf_polynomial(K3) == counts_to_polynomial(oracle_isf_counts(K3), 3)


def test_isf_polynomial_weighted_matches_enumeration():
    rng = random.Random(11)
    for _ in range(10):
        G = random_graph(rng, rng.randint(1, 5))
        weights = {e: e for e in G.edges}
        factored = isf_polynomial(G, weights)
        total = WeightedGF.zero()
        for forest in isf_set_list(G):
            term = WeightedGF.t_power(G.n - len(forest))
            for e in sorted(forest):
                term = term * WeightedGF.variable(e)
            total = total + term
        assert factored == total


def test_broken_circuits_triangle():
    K3 = complete_graph(3)
    assert broken_circuits(K3) == {frozenset({(1, 3), (2, 3)})}


def test_broken_circuits_forest_empty():
    assert broken_circuits(increasing_tree()) == frozenset()


def test_broken_circuits_four_cycle():
    C4 = cycle_graph(4)
    assert simple_cycles(C4) == [(1, 2, 3, 4)]
    assert broken_circuits(C4) == {frozenset({(1, 4), (2, 3), (3, 4)})}


def test_nbc_counts_triangle_against_subset_filter():
    K3 = complete_graph(3)
    assert nbc_sets(K3) == {0: 1, 1: 3, 2: 2}
    swept = oracle_nbc_sets(K3, broken_circuits(K3))
    assert set(nbc_set_list(K3)) == swept


def test_nbc_counts_forest_binomial():
    T = Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5)])
    assert nbc_sets(T) == {0: 1, 1: 4, 2: 6, 3: 4, 4: 1}


def test_nbc_counts_paw():
    assert nbc_sets(paw_peo()) == {0: 1, 1: 4, 2: 5, 3: 2}


@settings(deadline=None, max_examples=25)
@given(st.integers(min_value=0, max_value=10**6))
def test_nbc_counts_independent_of_order(seed):
    rng = random.Random(seed)
    G = random_graph(rng, rng.randint(2, 6))
    base = nbc_sets(G)
    edges = G.sorted_edges()
    for _ in range(3):
        shuffled = edges[:]
        rng.shuffle(shuffled)
        assert nbc_sets(G, order=EdgeOrder.from_sequence(G, shuffled)) == base


def test_chromatic_worked_examples():
    assert chromatic_polynomial(paw_peo()).coeffs == (0, -2, 5, -4, 1)
    assert chromatic_polynomial(Graph(3)) == IntPolynomial.monomial(3)


def test_chromatic_four_cycle_against_coloring_oracle():
    C4 = cycle_graph(4)
    p = chromatic_polynomial(C4)
    expected = IntPolynomial([-1, 1]) ** 4 + IntPolynomial([-1, 1])
    assert p == expected
    for t in range(1, 6):
        assert p(t) == oracle_coloring_count(C4, t)


def test_chromatic_internal_routes_agree():
    from isfkit.graphcore import _chromatic_deletion_contraction, _lagrange_integer

    rng = random.Random(3)
    for _ in range(20):
        G = random_graph(rng, rng.randint(1, 6))
        dc = _chromatic_deletion_contraction(G)
        pts = [(t, oracle_coloring_count(G, t)) for t in range(G.n + 1)]
        assert dc == _lagrange_integer(pts)


def test_count_proper_colorings_matches_pure_python():
    rng = random.Random(5)
    for _ in range(10):
        G = random_graph(rng, rng.randint(1, 5))
        for t in range(G.n + 2):
            assert count_proper_colorings(G, t) == oracle_coloring_count(G, t)


def test_whitney_alternating_sum():
    rng = random.Random(13)
    for _ in range(15):
        G = random_graph(rng, rng.randint(1, 6))
        whitney = IntPolynomial()
        for m, c in nbc_sets(G).items():
            whitney = whitney + IntPolynomial.monomial(G.n - m, (-1) ** m * c)
        assert whitney == chromatic_polynomial(G)


def test_is_peo_worked_examples():
    assert is_peo(paw_peo(), [1, 2, 3, 4])
    assert not is_peo(paw_non_peo(), [1, 2, 3, 4])
    with pytest.raises(InputError):
        is_peo(paw_peo(), [1, 2, 3])


def test_find_peo_four_cycle_absent():
    assert find_peo(cycle_graph(4)) is None


def test_find_peo_agrees_with_exhaustive_search():
    rng = random.Random(29)
    for _ in range(40):
        G = random_graph(rng, rng.randint(1, 6))
        peo = find_peo(G)
        chordal = any(
            is_peo(G, list(p)) for p in itertools.permutations(range(1, G.n + 1))
        )
        if peo is None:
            assert not chordal
        else:
            assert chordal and is_peo(G, peo)


def test_acyclic_orientation_counts():
    assert acyclic_orientation_count(complete_graph(3)) == 6
    assert acyclic_orientation_count(paw_peo()) == 12
    assert acyclic_orientation_count(Graph(2, [(1, 2)])) == 2


def test_verify_isf_nbc_peo_labeling():
    report = verify_isf_nbc(paw_peo())
    assert report.passed
    assert report.boolean_facts["natural_order_is_peo"]
    assert report.boolean_facts["isf_equals_nbc_all_sizes"]
    assert all(c.equal for c in report.identity_checks)


def test_verify_isf_nbc_non_peo_labeling():
    report = verify_isf_nbc(paw_non_peo())
    assert report.passed
    assert not report.boolean_facts["natural_order_is_peo"]
    assert report.boolean_facts["isf_subset_of_nbc"]
    assert not report.boolean_facts["isf_equals_nbc_all_sizes"]
    named = {c.name: c.equal for c in report.identity_checks}
    assert not named["isf_vs_signed_chromatic"]


def test_verify_isf_nbc_relabeled_chordal_reaches_equality():
    rng = random.Random(41)
    found = 0
    while found < 10:
        G = random_graph(rng, rng.randint(2, 6))
        peo = find_peo(G)
        if peo is None:
            continue
        found += 1
        relabeled = relabel_to_natural_peo(G, peo)
        report = verify_isf_nbc(relabeled)
        assert report.passed
        assert report.boolean_facts["natural_order_is_peo"]
        assert report.boolean_facts["isf_equals_nbc_all_sizes"]


def test_structure_helpers():
    assert has_triangle(complete_graph(3))
    assert not has_triangle(cycle_graph(4))
    assert is_bipartite(cycle_graph(4))
    assert not is_bipartite(cycle_graph(5))
    assert has_triangle(house_graph())
