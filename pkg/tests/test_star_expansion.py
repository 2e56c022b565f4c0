import random
from collections import Counter

import networkx as nx
import pytest

from markedpoly import graph as g
from markedpoly import star_expansion as se
from markedpoly.graph import GraphError, MarkedGraph
from markedpoly.harness import enumerate_free_trees, random_simple_graph
from markedpoly.symfunc import SymFn, csf_power, p_to_st

from conftest import complete, path, star, triangle_pendant


def figure_rule(H):
    """Internal edge with the largest endpoint-degree sum, ties to the smallest endpoints."""
    return min(g.internal_edges(H), key=lambda e: (-(H.degree(H.edges[e][0]) + H.degree(H.edges[e][1])), H.edges[e]))


def test_triangle_pendant_golden():
    want = SymFn("st", {(4,): 2, (3, 1): -2, (2, 2): 1})
    assert se.dnc_expand(triangle_pendant())[1] == want
    root, X = se.dnc_expand(triangle_pendant(), emit_tree=True)
    assert X == want


def test_triangle_pendant_tree_matches_figure():
    root = se.build_tree(triangle_pendant(), figure_rule)
    assert root.size() == 7
    leaves = Counter((se.star_partition(leaf.graph), se.dnc_sign(p)) for p, leaf in root.leaves())
    assert leaves == Counter({((4,), 1): 2, ((3, 1), -1): 2, ((2, 2), 1): 1})
    assert se.tree_expansion(root) == SymFn("st", {(4,): 2, (3, 1): -2, (2, 2): 1})


def test_leaves_are_star_forests_with_isolated_vertex_sign():
    for G in (triangle_pendant(), complete(4), path(5)):
        root = se.build_tree(G)
        for p, leaf in root.leaves():
            assert g.is_star_forest(leaf.graph)
            assert se.dnc_sign(p) == (-1) ** (se.isolated_count(leaf.graph) - se.isolated_count(G))


def test_star_forest_is_its_own_leaf():
    root, X = se.dnc_expand(star(5), emit_tree=True)
    assert root.is_leaf and X == SymFn.gen("st", (5,))
    assert se.dnc_expand(MarkedGraph.unweighted(3))[1] == SymFn.gen("st", (1, 1, 1))


def test_rejects_multigraphs_and_weights():
    with pytest.raises(GraphError):
        se.dnc_expand(MarkedGraph.unweighted(2, [(0, 1), (0, 1)]))
    with pytest.raises(GraphError):
        se.dnc_expand(MarkedGraph.unweighted(1, [(0, 0)]))
    with pytest.raises(GraphError):
        se.dnc_expand(MarkedGraph.weighted([2, 1], [(0, 1)]))


def test_dnc_sign_on_labels():
    assert se.dnc_sign(["", "+", "-", "-"]) == 1
    assert se.dnc_sign(["", "-"]) == -1


def test_no_cancellation_per_partition():
    rng = random.Random(9)
    for _ in range(25):
        G = random_simple_graph(rng, rng.randint(2, 5))
        assert se.sign_uniform(se.leaf_contributions(se.build_tree(G)))


@pytest.mark.parametrize("n", range(1, 7))
def test_all_small_graphs_against_power_sum_oracle(n):
    for nxg in nx.graph_atlas_g():
        if nxg.number_of_nodes() != n:
            continue
        G = MarkedGraph.unweighted(n, [tuple(sorted(e)) for e in nxg.edges()])
        assert se.dnc_expand(G)[1] == p_to_st(csf_power(G))


def test_memo_and_rules_do_not_change_result():
    rng = random.Random(10)
    rule = lambda H: max(g.internal_edges(H))  # noqa: E731
    for _ in range(20):
        G = random_simple_graph(rng, rng.randint(2, 7))
        ref = se.dnc_expand(G, memo=False)[1]
        assert se.dnc_expand(G)[1] == ref
        assert se.dnc_expand(G, edge_rule=rule)[1] == ref


def test_path_and_star_differ():
    (p4, s4) = sorted(enumerate_free_trees(4), key=lambda T: max(T.degree(v) for v in T.vertices))
    assert se.csf_star(p4) != se.csf_star(s4)
    assert se.csf_star(s4) == SymFn.gen("st", (4,))


def test_render_mentions_every_leaf():
    root = se.build_tree(triangle_pendant())
    text = root.render()
    assert text.count("leaf") == sum(1 for _ in root.leaves())
