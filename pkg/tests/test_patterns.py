import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from isfkit.errors import BudgetExceededError, InputError
from isfkit.graphcore import Graph
from isfkit.polycore import IntPolynomial, poly_from_linear_factors, poly_integer_roots
from isfkit.patterns import (
    Pattern,
    RootedLabeledForest,
    TIGHT_PATTERNS,
    avoids_set,
    candidate_paths,
    contains_pattern,
    count_pattern_avoiding_permutations,
    forest_from_edge_set,
    is_qpo,
    is_tight_forest,
    is_tight_sequence,
    long_cycle_chord_check,
    qpo_condition_holds,
    standardize,
    tf_integer_roots_classification,
    tf_polynomial,
    tf_set_list,
    tight_permutation_count,
    verify_tf_theorems,
)
from isfkit import graphcore

from helpers import (
    all_edge_subsets,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    house_graph,
    non_increasing_tree,
)


def random_graph(rng, n, p=0.5):
    return Graph(
        n,
        [
            (i, j)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
            if rng.random() < p
        ],
    )


# -- patterns and sequences ----------------------------------------------------


def test_pattern_validation():
    with pytest.raises(InputError):
        Pattern((1, 3))
    assert len(Pattern((2, 1, 3))) == 3


def test_contains_pattern_examples():
    assert contains_pattern((6, 8, 9, 2), (2, 3, 1))
    assert not contains_pattern((6, 8, 9, 2), (3, 2, 1))
    assert not contains_pattern((5, 1), (1, 2, 3))
    with pytest.raises(InputError):
        contains_pattern((1, 1, 2), (2, 1))


def test_avoids_set():
    assert avoids_set((1, 3, 2), TIGHT_PATTERNS)
    assert not avoids_set((2, 3, 1), TIGHT_PATTERNS)


def test_standardize():
    assert standardize((6, 8, 9, 2)) == (2, 3, 4, 1)
    assert standardize((5,)) == (1,)


def test_tight_sequence_criteria_agree_on_all_short_permutations():
    for k in range(1, 8):
        for perm in itertools.permutations(range(1, k + 1)):
            expected = not any(
                contains_pattern(perm, p) for p in TIGHT_PATTERNS
            )
            assert is_tight_sequence(perm) == expected
    # length 8 by seeded sample; is_tight_sequence cross-checks internally
    rng = random.Random(57)
    base = list(range(1, 9))
    for _ in range(2000):
        rng.shuffle(base)
        is_tight_sequence(tuple(base))


@settings(deadline=None, max_examples=60)
@given(st.lists(st.integers(min_value=1, max_value=60), max_size=8, unique=True))
def test_tight_sequence_matches_standardization(seq):
    assert is_tight_sequence(seq) == is_tight_sequence(standardize(seq))


# -- rooted forests --------------------------------------------------------------


def test_forest_validation():
    with pytest.raises(InputError):
        RootedLabeledForest({2: 3, 3: 2})
    with pytest.raises(InputError):
        # component {2,3} rooted at 3 instead of its minimum
        RootedLabeledForest({3: None, 2: 3, 1: None})
    f = RootedLabeledForest({1: None, 2: 1, 3: 1})
    assert f.roots() == [1]


def test_forest_json_roundtrip():
    f = forest_from_edge_set([(1, 3), (2, 3)])
    back = RootedLabeledForest.from_json(f.to_json())
    assert back.parents == f.parents


def test_three_vertex_path_is_tight():
    assert is_tight_forest(forest_from_edge_set([(1, 3), (2, 3)]))


def test_non_increasing_tree_is_tight_but_not_increasing():
    T2 = non_increasing_tree()
    forest = forest_from_edge_set(T2.edges)
    paths = sorted(forest.root_to_leaf_paths())
    assert paths == [(2, 3, 5), (2, 3, 9), (2, 6), (2, 7, 4), (2, 7, 8)]
    assert is_tight_forest(forest)
    assert any(contains_pattern(p, (2, 1)) for p in paths)


def test_small_trees_always_tight():
    rng = random.Random(3)
    for _ in range(20):
        labels = rng.sample(range(1, 30), 3)
        a, b, c = labels
        forest = forest_from_edge_set(
            [(min(a, b), max(a, b)), (min(b, c), max(b, c))]
        )
        assert is_tight_forest(forest)


def test_root_paths_are_prefixes_of_leaf_paths():
    rng = random.Random(9)
    for _ in range(20):
        G = random_graph(rng, rng.randint(2, 7))
        for subset in list(all_edge_subsets(G))[:50]:
            if not graphcore.edges_are_acyclic(subset):
                continue
            forest = forest_from_edge_set(subset, range(1, G.n + 1))
            by_leaf = is_tight_forest(forest)
            by_all = all(
                is_tight_sequence(p) for p in forest.all_root_paths()
            )
            assert by_leaf == by_all


def test_subforest_closure():
    rng = random.Random(15)
    for _ in range(10):
        G = random_graph(rng, rng.randint(2, 6))
        for tight in tf_set_list(G):
            if not tight:
                continue
            drop = rng.choice(sorted(tight))
            sub = forest_from_edge_set(tight - {drop}, range(1, G.n + 1))
            assert is_tight_forest(sub)


def test_increasing_iff_avoids_21():
    rng = random.Random(21)
    for _ in range(15):
        G = random_graph(rng, rng.randint(2, 6))
        for subset in all_edge_subsets(G):
            if not graphcore.edges_are_acyclic(subset):
                continue
            forest = forest_from_edge_set(subset, range(1, G.n + 1))
            avoids_21 = all(
                not contains_pattern(p, (2, 1))
                for p in forest.root_to_leaf_paths()
            )
            increasing = graphcore.is_increasing_forest(
                graphcore.SpanningSubgraph(G, subset)
            )
            assert avoids_21 == increasing


# -- tight spanning forests -------------------------------------------------------


def test_tf_listing_matches_subset_sweep():
    rng = random.Random(27)
    for _ in range(15):
        G = random_graph(rng, rng.randint(1, 6))
        swept = {
            s
            for s in all_edge_subsets(G)
            if graphcore.edges_are_acyclic(s)
            and is_tight_forest(forest_from_edge_set(s, range(1, G.n + 1)))
        }
        assert set(tf_set_list(G)) == swept


def test_tf_polynomial_triangle():
    assert tf_polynomial(complete_graph(3)).coeffs == (0, 3, 3, 1)


def test_tf_polynomial_edgeless():
    assert tf_polynomial(Graph(2)) == IntPolynomial.monomial(2)


def test_tf_polynomial_increasing_forest():
    rng = random.Random(33)
    for _ in range(10):
        n = rng.randint(2, 7)
        edges = []
        for k in range(2, n + 1):
            if rng.random() < 0.7:
                edges.append((rng.randint(1, k - 1), k))
        G = Graph(n, edges)
        q = len(G.edges)
        assert tf_polynomial(G) == poly_from_linear_factors([1] * q, n - q)


# -- quasi-perfect orderings -------------------------------------------------------


def test_house_graph_single_candidate_path():
    house = house_graph()
    assert candidate_paths(house) == [(1, 5, 4, 3)]
    assert qpo_condition_holds(house, (1, 5, 4, 3))
    assert is_qpo(house).ok


def test_km2_labeling_is_qpo():
    m = 4
    G = complete_bipartite([1, m + 2], range(2, m + 2))
    assert is_qpo(G).ok


def test_k44_is_never_qpo_small_sample():
    G = complete_bipartite([1, 2, 3, 4], [5, 6, 7, 8])
    result = is_qpo(G)
    assert not result.ok
    assert result.witness is not None
    assert not qpo_condition_holds(G, result.witness)


def test_candidate_path_budget():
    with pytest.raises(BudgetExceededError):
        candidate_paths(Graph(13), vertex_cap=12)


def test_long_cycle_chord_check():
    assert not long_cycle_chord_check(cycle_graph(5))
    assert long_cycle_chord_check(house_graph())
    rng = random.Random(39)
    seen = 0
    while seen < 8:
        G = random_graph(rng, rng.randint(2, 6))
        if graphcore.find_peo(G) is None:
            continue
        seen += 1
        assert long_cycle_chord_check(G)


def test_qpo_graphs_have_chorded_long_cycles():
    rng = random.Random(45)
    for _ in range(25):
        G = random_graph(rng, rng.randint(2, 7), p=0.4)
        if is_qpo(G).ok:
            assert long_cycle_chord_check(G)
            if not graphcore.has_triangle(G):
                assert graphcore.is_bipartite(G)


# -- the theorem suite --------------------------------------------------------------


def test_verify_triangle_case_k3():
    report = verify_tf_theorems(complete_graph(3))
    assert report.passed
    assert report.boolean_facts["has_triangle"]
    assert report.boolean_facts["tf_2_strictly_contains_nbc_2"]
    named = {c.name for c in report.identity_checks}
    assert "tf_vs_signed_chromatic" in named
    tf = tf_polynomial(complete_graph(3))
    chrom = graphcore.chromatic_polynomial(complete_graph(3))
    assert tf.coeffs == (0, 3, 3, 1)
    assert ((-1) ** 3 * chrom.compose_neg()).coeffs == (0, 2, 3, 1)


def test_verify_triangle_case_house():
    report = verify_tf_theorems(house_graph())
    assert report.passed
    assert report.boolean_facts["has_triangle"]
    assert report.witnesses["tf_size_2_count"] > report.witnesses["nbc_size_2_count"]


def test_verify_triangle_free_four_cycle():
    report = verify_tf_theorems(cycle_graph(4))
    assert report.passed
    assert report.boolean_facts["tf_subset_of_nbc"]
    assert report.boolean_facts["three_way_equivalence"]


def test_verify_triangle_free_random():
    rng = random.Random(51)
    checked = 0
    while checked < 20:
        G = random_graph(rng, rng.randint(2, 6), p=0.35)
        if graphcore.has_triangle(G):
            continue
        checked += 1
        assert verify_tf_theorems(G).passed


# -- integer-roots classification ----------------------------------------------------


def test_roots_classification_path():
    path4 = Graph(4, [(1, 2), (2, 3), (3, 4)])
    report = tf_integer_roots_classification(path4)
    assert report.passed
    assert report.boolean_facts["is_forest"]
    assert report.boolean_facts["integer_root_ordering_exists"]
    assert report.witnesses["roots"] == [0, -1, -1, -1]


def test_roots_classification_triangle():
    report = tf_integer_roots_classification(complete_graph(3))
    assert report.passed
    assert not report.boolean_facts["is_forest"]
    assert not report.boolean_facts["integer_root_ordering_exists"]
    assert poly_integer_roots(tf_polynomial(complete_graph(3))) is None


def test_roots_classification_edgeless():
    report = tf_integer_roots_classification(Graph(4))
    assert report.passed
    assert report.boolean_facts["is_forest"]
    assert report.witnesses["roots"] == [0, 0, 0, 0]


def test_roots_classification_cap():
    with pytest.raises(BudgetExceededError):
        tf_integer_roots_classification(Graph(7))


# -- pattern-avoiding permutation counts ----------------------------------------------


def test_tight_counts_small():
    assert tight_permutation_count(1) == 1
    assert tight_permutation_count(3) == 3
    assert tight_permutation_count(4) == 5


def test_tight_counts_match_filter_oracle():
    for k in range(1, 8):
        oracle = sum(
            1
            for p in itertools.permutations(range(1, k + 1))
            if avoids_set(p, TIGHT_PATTERNS)
        )
        assert tight_permutation_count(k) == oracle


def test_tight_count_cap():
    with pytest.raises(BudgetExceededError):
        tight_permutation_count(16)


def test_tight_counts_follow_fibonacci_recurrence():
    counts = {k: tight_permutation_count(k) for k in range(1, 13)}
    for k in range(3, 13):
        assert counts[k] == counts[k - 1] + counts[k - 2]


def test_generic_pattern_counter():
    # avoiding a single length-3 pattern gives the Catalan numbers
    catalan = [1, 2, 5, 14, 42]
    for k, expected in zip(range(1, 6), catalan):
        assert count_pattern_avoiding_permutations(k, [Pattern((1, 2, 3))]) == expected
    with pytest.raises(InputError):
        count_pattern_avoiding_permutations(3, [Pattern((1, 2, 3, 4, 5))])
