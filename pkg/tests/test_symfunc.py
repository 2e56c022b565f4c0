import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from markedpoly import symfunc as sf
from markedpoly.graph import MarkedGraph
from markedpoly.harness import random_multigraph
from markedpoly.symfunc import SymFn

from conftest import complete, path, star, triangle_pendant


def test_partition_normalises():
    assert sf.partition([1, 3, 2]) == (3, 2, 1)
    with pytest.raises(ValueError):
        sf.partition([2, 0])


def test_format_and_parse():
    f = SymFn("st", {(4,): 2, (3, 1): -2, (2, 2): 1})
    assert str(f) == "2*st[4] - 2*st[3,1] + 1*st[2,2]"
    assert sf.parse_symfn(str(f)) == f
    assert sf.parse_symfn("p[2,1] - p[3]", "p") == SymFn("p", {(2, 1): 1, (3,): -1})
    with pytest.raises(ValueError):
        sf.parse_symfn("st[2] + p[2]")
    with pytest.raises(ValueError):
        sf.parse_symfn("st[2]", "p")


def test_generator_expansion_small():
    # p_3 = st_{1,1,1} - 2 st_{2,1} + st_{3}
    assert sf.st_to_p(SymFn.gen("st", (3,))) == SymFn("p", {(1, 1, 1): 1, (2, 1): -2, (3,): 1})
    assert sf.p_to_st(SymFn.gen("p", (3,))) == SymFn("st", {(1, 1, 1): 1, (2, 1): -2, (3,): 1})


@pytest.mark.parametrize("n", range(1, 8))
def test_star_graph_collapses_to_one_term(n):
    assert sf.p_to_st(sf.csf_power(star(n))) == SymFn.gen("st", (n,))


def test_path_three_power_sum():
    assert sf.csf_power(path(3)) == SymFn("p", {(1, 1, 1): 1, (2, 1): -2, (3,): 1})


def test_loop_kills_csf():
    G = MarkedGraph.from_edge_list([MarkedGraph.unweighted(1).mark(0)], [(0, 0)])
    assert sf.csf_power(G) == SymFn("p")


def test_zero_equality_across_bases():
    assert SymFn("st") == SymFn("p")


def test_csf_budget():
    with pytest.raises(sf.BudgetExceeded):
        sf.csf_power(complete(8), max_edges=10)


@pytest.mark.parametrize("G", [path(4), star(4), triangle_pendant(), complete(4),
                               MarkedGraph.weighted([2, 1, 3], [(0, 1), (1, 2), (0, 1)])])
def test_power_sum_matches_colouring_count(G):
    """Expand in monomials over four variables and compare with an explicit colouring enumeration."""
    assert sf.p_to_monomials(sf.csf_power(G), 4) == sf.weighted_csf(G, 4)


def test_csf_engines_agree_on_random_multigraphs():
    rng = random.Random(5)
    for _ in range(60):
        G = random_multigraph(rng, 6, 8)
        assert sf.csf_power(G) == sf.csf_power_bruteforce(G)


@pytest.mark.parametrize("G", [path(5), complete(4), triangle_pendant(), star(5)])
def test_principal_specialisation_is_chromatic_polynomial(G):
    for k in range(6):
        assert sf.eval_p_principal(sf.csf_power(G), k) == sf.chromatic_poly_eval(G, k)


def test_chromatic_values():
    assert [sf.chromatic_poly_eval(complete(3), k) for k in range(5)] == [0, 0, 0, 6, 24]
    assert sf.chromatic_poly_eval(path(4), 3) == 3 * 2 ** 3


partitions = st.lists(st.integers(1, 5), min_size=1, max_size=4).map(lambda xs: tuple(sorted(xs, reverse=True)))
symfns = st.dictionaries(partitions, st.integers(-6, 6), max_size=5)


@settings(max_examples=150, deadline=None)
@given(symfns)
def test_basis_change_is_involution(terms):
    f = SymFn("st", terms)
    assert sf.p_to_st(sf.st_to_p(f)) == f
    g = SymFn("p", terms)
    assert sf.st_to_p(sf.p_to_st(g)) == g


@settings(max_examples=100, deadline=None)
@given(symfns, symfns)
def test_basis_change_is_multiplicative(a, b):
    f, g = SymFn("st", a), SymFn("st", b)
    assert sf.st_to_p(f * g) == sf.st_to_p(f) * sf.st_to_p(g)


def test_disjoint_union_multiplies():
    G = MarkedGraph.unweighted(5, [(0, 1), (2, 3), (3, 4)])
    assert sf.csf_power(G) == sf.csf_power(path(2)) * sf.csf_power(path(3))


def test_all_small_graph_csfs_are_homogeneous():
    for edges in itertools.combinations([(0, 1), (0, 2), (1, 2), (2, 3), (0, 3)], 3):
        f = sf.csf_power(MarkedGraph.unweighted(4, edges))
        assert f.degrees() == {4}
