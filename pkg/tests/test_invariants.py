import itertools
import random
from fractions import Fraction

import pytest

from markedpoly import graph as g
from markedpoly import invariants as inv
from markedpoly.graph import Mark, MarkedGraph, UNIT
from markedpoly.harness import enumerate_free_trees, random_multigraph
from markedpoly.polyring import ZPoly, forget_dots, parse_zpoly, undot
from markedpoly.symfunc import BudgetExceeded

from conftest import marked_triangle, path_412, spider9

z, y = ZPoly.z, ZPoly.y

TRIANGLE_M = "z[4,1]*z[2]*z[1] + z[4,1]*z[3,1] + z[6,2]*z[1] + z[5,2]*z[2] + 2*z[7,3] + y*z[7,3]"
TRIANGLE_D = ("z[4]*z[3] - z[3]^2*z[1] + z[6]*z[1] - 2*z[5]*z[1]^2 + z[4]*z[1]^3 + z[5]*z[2] - 2*z[4]*z[2]*z[1]"
              " + z[3]*z[2]*z[1]^2 + 2*z[7] - 6*z[6]*z[1] + 6*z[5]*z[1]^2 - 2*z[4]*z[1]^3"
              " + y*z[7] - 3*y*z[6]*z[1] + 3*y*z[5]*z[1]^2 - y*z[4]*z[1]^3")
SPIDER_D = ("z[4]*z[3]*z[2] + z[5]*z[4] - z[4]^2*z[1] + z[7]*z[2] - z[6]*z[2]*z[1]"
            " + z[9] - 2*z[8]*z[1] + z[7]*z[1]^2")


def loebl_weighted():
    return (MarkedGraph.weighted([2, 1, 2, 3, 1], [(0, 1), (1, 2), (2, 3), (3, 4)]),
            MarkedGraph.weighted([2, 3, 1, 2, 1], [(0, 1), (1, 2), (2, 3), (3, 4)]))


def loebl_marked():
    p1 = MarkedGraph.from_edge_list([Mark(2), UNIT, Mark(2), Mark(3, 1), UNIT], [(0, 1), (1, 2), (2, 3), (3, 4)])
    p2 = MarkedGraph.from_edge_list([Mark(2), Mark(3, 1), UNIT, Mark(2), UNIT], [(0, 1), (1, 2), (2, 3), (3, 4)])
    return p1, p2


# -- goldens -------------------------------------------------------------------------------


def test_triangle_m_all_routes():
    T = marked_triangle()
    want = parse_zpoly(TRIANGLE_M)
    assert inv.m_poly_states(T) == want
    assert inv.m_poly_dc(T) == want
    assert inv.m_poly_bond(T) == want
    assert inv.m_poly_states_bruteforce(T) == want


def test_triangle_d():
    assert inv.d_poly(marked_triangle()) == parse_zpoly(TRIANGLE_D)


def test_spider_d_and_core_shortcut():
    G = spider9()
    assert inv.d_poly(G) == parse_zpoly(SPIDER_D)
    assert undot(inv.m_poly(G)) == parse_zpoly(SPIDER_D)
    assert len(inv.m_poly(g.core(G))) == 4


def test_path_w_and_m():
    P = path_412()
    assert inv.w_poly(P) == parse_zpoly("z[4]*z[1]*z[2] + z[4]*z[3] + z[5]*z[2] + z[7]")
    assert inv.m_poly(P) == parse_zpoly("z[4]*z[1]*z[2] + z[5,1]*z[2] + z[4]*z[3,1] + z[7,2]")
    assert inv.w_poly_states(P) == inv.w_poly(P)


def test_loebl_pair_weighted():
    a, b = loebl_weighted()
    assert inv.w_poly(a) == inv.w_poly(b)
    assert inv.m_poly(a) != inv.m_poly(b)
    assert g.canonical_form(a) != g.canonical_form(b)


def test_loebl_pair_marked():
    a, b = loebl_marked()
    assert not g.mark_isomorphic(a, b)
    assert inv.m_poly(a) == inv.m_poly(b)
    assert inv.d_poly(a) == inv.d_poly(b)
    ka, kb = inv.m_poly(g.core(a)), inv.m_poly(g.core(b))
    assert ka != kb
    assert ka.homogeneous_part(4) == z(4, 1) * z(2) ** 2 * z(1)
    assert kb.homogeneous_part(4) == z(3, 1) * z(3) * z(2) * z(1)


# -- M ------------------------------------------------------------------------------------


def test_loop_multiplies_by_y():
    G = MarkedGraph.from_edge_list([Mark(3, 1)], [(0, 0), (0, 0)])
    assert inv.m_poly(G) == y(2) * z(3, 1)
    assert inv.m_poly_dc(G) == y(2) * z(3, 1)


def test_isolated_vertices_multiply():
    G = MarkedGraph.from_edge_list([Mark(2), Mark(3, 2)], [])
    assert inv.m_poly(G) == z(2) * z(3, 2)


def test_state_budget():
    G = MarkedGraph.unweighted(8, [(i, j) for i in range(8) for j in range(i + 1, 8)])
    with pytest.raises(BudgetExceeded):
        inv.m_poly_states(G, max_edges=5)


def test_m_routes_agree_on_random_multigraphs():
    rng = random.Random(11)
    for _ in range(60):
        G = random_multigraph(rng)
        ref = inv.m_poly_states_bruteforce(G)
        assert inv.m_poly_states(G) == ref
        es = list(G.edges)
        rng.shuffle(es)
        assert inv.m_poly_dc(G, es) == ref
        assert inv.m_poly_bond(G) == ref


def test_deletion_near_contraction_for_m():
    rng = random.Random(2)
    for _ in range(40):
        G = random_multigraph(rng)
        for e in G.edges:
            if G.is_loop(e):
                continue
            H, ell = g.near_contract(G, e)
            assert inv.m_poly(G) == inv.m_poly(g.delete_edge(G, e)) - inv.m_poly(g.delete_edge(H, ell)) + inv.m_poly(H)


def test_y_zero_ignores_multiplicity():
    G = MarkedGraph.from_edge_list([Mark(2), Mark(3, 1), UNIT], [(0, 1), (0, 1), (1, 2), (0, 2), (0, 2)])
    assert inv.m_poly(G).at_y(0) == inv.m_poly(g.simplify(G)).at_y(0)
    assert inv.m_poly(G) != inv.m_poly(g.simplify(G))


def test_w_is_forget_dots_of_m():
    rng = random.Random(3)
    for _ in range(30):
        G = random_multigraph(rng, marked=False)
        G = G.with_marks({v: Mark(rng.randint(1, 4)) for v in G.vertices})
        assert inv.w_poly(G) == forget_dots(inv.m_poly(G)) == inv.w_poly_states(G)


def test_tree_degree_one_and_top_terms():
    for T in enumerate_free_trees(6):
        M = inv.m_poly(T)
        assert M.homogeneous_part(1) == z(6, 5)
        assert M.homogeneous_part(6) == z(1) ** 6


# -- D --------------------------------------------------------------------------------------


def test_d_equals_d_of_core_on_random_multigraphs():
    rng = random.Random(4)
    for _ in range(40):
        G = random_multigraph(rng)
        assert undot(inv.m_poly(G)) == undot(inv.m_poly(g.core(G))) == inv.d_poly(G)


def test_d_recurrences():
    rng = random.Random(6)
    for _ in range(30):
        G = random_multigraph(rng, 5, 7)
        for e in G.edges:
            if G.is_loop(e):
                continue
            H, ell = g.near_contract(G, e)
            D = inv.d_poly
            assert D(G) == D(g.delete_edge(G, e)) + D(g.contract_edge(G, e))
            assert D(g.contract_edge(G, e)) == D(H) - D(g.delete_edge(H, ell))


def _weighted_trees(n, wmax):
    for T in enumerate_free_trees(n):
        for ws in itertools.product(range(1, wmax + 1), repeat=n):
            yield T.with_marks({v: Mark(w) for v, w in zip(T.vertices, ws)})


@pytest.mark.parametrize("n", range(2, 5))
def test_three_power_dichotomy(n):
    for T in _weighted_trees(n, 3):
        strict = all(m.w >= 2 for m in T.marks.values())
        assert (inv.d_poly(T).abs_coeff_sum() == 3 ** (n - 1)) == strict


def test_single_vertex_has_one_term():
    for w in range(1, 5):
        assert inv.d_poly(MarkedGraph.weighted([w])) == z(w)


@pytest.mark.parametrize("n", range(2, 5))
def test_cancellation_free_iff_strictly_marked(n):
    marks = [Mark(w, d) for w in range(1, 4) for d in range(w)]
    for T in enumerate_free_trees(n):
        for ms in itertools.product(marks, repeat=n):
            M = T.with_marks(dict(zip(T.vertices, ms)))
            assert inv.undot_is_cancellation_free(M) == all(m.strict for m in ms)


def test_w_from_d():
    for T in _weighted_trees(4, 4):
        if all(m.w >= 2 for m in T.marks.values()):
            assert inv.w_from_d(T) == inv.w_poly(T)
    with pytest.raises(ValueError):
        inv.w_from_d(MarkedGraph.weighted([1, 2], [(0, 1)]))


# -- V ----------------------------------------------------------------------------------------


def test_v_single_edge():
    G = MarkedGraph.from_edge_list([Mark(2), Mark(3, 1)], [(0, 1)])
    V = inv.v_poly_dc(G)
    assert V == {(((2, 0), (3, 1)), ()): 1, (((5, 2),), (0,)): 1}
    assert inv.v_poly_states(G) == V
    assert inv.format_vpoly(V) == "1*z[3,1]*z[2] + 1*g[0]*z[5,2]"


def test_v_loop_rule():
    G = MarkedGraph.from_edge_list([Mark(2)], [(0, 0)])
    assert inv.v_poly_dc(G, gamma={0: 3}) == {(((2, 0),), ()): 4}


def test_v_over_positive_integers():
    G = MarkedGraph.weighted([1, 2, 3], [(0, 1), (1, 2)])
    labels = {v: G.mark(v).w for v in G.vertices}
    V = inv.v_poly_states(G, inv.POSITIVE_INTEGERS, labels, gamma={0: 1, 1: 1})
    assert V == {((1, 2, 3), ()): 1, ((3, 3), ()): 1, ((1, 5), ()): 1, ((6,), ()): 1}
    assert V == inv.v_poly_dc(G, inv.POSITIVE_INTEGERS, labels, gamma={0: 1, 1: 1})


def test_semigroup_spot_check():
    assert inv.MARKS.spot_check([Mark(1), Mark(3, 1), Mark(2)])
    assert inv.POSITIVE_INTEGERS.spot_check([1, 2, 5])


def test_recipe_and_link_to_m():
    rng = random.Random(8)
    for _ in range(40):
        G = random_multigraph(rng, 5, 6)
        alpha = {e: Fraction(rng.randint(1, 5), rng.randint(1, 3)) for e in G.edges}
        beta = {e: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for e in G.edges}
        assert inv.recipe_eval(G, alpha, beta) == inv.recipe_from_v(G, alpha, beta)
        V = inv.v_poly_states(G)
        assert V == inv.v_poly_dc(G)
        assert inv.v_to_m_side(V) == (y() - 1) ** G.n * inv.m_poly(G)
