import pytest

from markedpoly import graph as g
from markedpoly import invariants as inv
from markedpoly import reconstruct as rc
from markedpoly.graph import MarkedGraph
from markedpoly.harness import strict_stars, strict_two_stars
from markedpoly.polyring import ZPoly, parse_zpoly
from markedpoly.star_expansion import csf_star
from markedpoly.symfunc import SymFn

z = ZPoly.z

D12 = ("-z[1]^3*z[9] + 3*z[1]^2*z[10] + 2*z[1]^2*z[3]*z[7] + z[1]^2*z[4]*z[6] - 3*z[1]*z[11]"
       " - 4*z[1]*z[3]*z[8] - 2*z[1]*z[4]*z[7] - 2*z[1]*z[3]*z[4]^2 - z[1]*z[3]^2*z[5] + z[12] + 2*z[3]*z[9]"
       " + z[4]*z[8] + z[3]^2*z[6] + 2*z[3]*z[4]*z[5] + z[2]*z[3]^2*z[4]")
D12_2 = "2*z[1]^2*z[3]*z[7] + z[1]^2*z[4]*z[6] - 4*z[1]*z[3]*z[8] - 2*z[1]*z[4]*z[7] + 2*z[3]*z[9] + z[4]*z[8]"
D27_2 = (
    "z[1]^6*z[8]*z[13] + z[1]^6*z[6]*z[15] + z[1]^6*z[5]*z[16] + z[1]^6*z[4]*z[17] + 2*z[1]^6*z[3]*z[18]"
    " + z[1]^6*z[2]*z[19] - 3*z[1]^5*z[9]*z[13] - 3*z[1]^5*z[8]*z[14] - 6*z[1]^5*z[6]*z[16]"
    " - 6*z[1]^5*z[5]*z[17] - 6*z[1]^5*z[4]*z[18] - 12*z[1]^5*z[3]*z[19] - 6*z[1]^5*z[2]*z[20]"
    " + 3*z[1]^4*z[10]*z[13] + 9*z[1]^4*z[9]*z[14] + 3*z[1]^4*z[8]*z[15] + 15*z[1]^4*z[6]*z[17]"
    " + 15*z[1]^4*z[5]*z[18] + 15*z[1]^4*z[4]*z[19] + 30*z[1]^4*z[3]*z[20] + 15*z[1]^4*z[2]*z[21]"
    " - z[1]^3*z[11]*z[13] - 9*z[1]^3*z[10]*z[14] - 9*z[1]^3*z[9]*z[15] - z[1]^3*z[8]*z[16]"
    " - 20*z[1]^3*z[6]*z[18] - 20*z[1]^3*z[5]*z[19] - 20*z[1]^3*z[4]*z[20] - 40*z[1]^3*z[3]*z[21]"
    " - 20*z[1]^3*z[2]*z[22] + 3*z[1]^2*z[11]*z[14] + 9*z[1]^2*z[10]*z[15] + 3*z[1]^2*z[9]*z[16]"
    " + 15*z[1]^2*z[6]*z[19] + 15*z[1]^2*z[5]*z[20] + 15*z[1]^2*z[4]*z[21] + 30*z[1]^2*z[3]*z[22]"
    " + 15*z[1]^2*z[2]*z[23] - 3*z[1]*z[11]*z[15] - 3*z[1]*z[10]*z[16] - 6*z[1]*z[6]*z[20]"
    " - 6*z[1]*z[5]*z[21] - 6*z[1]*z[4]*z[22] - 12*z[1]*z[3]*z[23] - 6*z[1]*z[2]*z[24] + z[11]*z[16]"
    " + z[6]*z[21] + z[5]*z[22] + z[4]*z[23] + 2*z[3]*z[24] + z[2]*z[25]")


def two_star_27():
    return rc.build_two_star(2, [6, 5, 3], 2, [2, 3, 4])


# -- the star example --------------------------------------------------------------------------


def test_n12_counts_and_layers():
    D = parse_zpoly(D12)
    assert D.abs_coeff_sum() == 27
    deg1, top, N, n, weights = rc.top_and_degree_one_from_d(D)
    assert deg1 == z(12, 3) and N == 12 and n == 4
    assert top == z(2) * z(3) ** 2 * z(4) and weights == (4, 3, 3, 2)
    assert rc.d_layer(D, 2) == parse_zpoly(D12_2)


def test_n12_strict_pairs():
    pairs = rc.strict_pairs_from_d2(parse_zpoly(D12_2), 12, 4)
    assert sorted(pairs) == sorted([((9, 2), (3, 0)), ((9, 2), (3, 0)), ((8, 2), (4, 0))])


def test_n12_reconstructs_centre_two_star():
    T = rc.tree_from_d(parse_zpoly(D12))
    assert g.mark_isomorphic(T, rc.build_star(2, [3, 3, 4]))
    assert inv.d_poly(rc.build_star(2, [3, 3, 4])) == parse_zpoly(D12)


# -- the two-star example --------------------------------------------------------------------------


def test_two_star_layer_matches_display():
    D = inv.d_poly(two_star_27())
    assert rc.d_layer(D, 2) == parse_zpoly(D27_2)
    deg1, top, N, n, weights = rc.top_and_degree_one_from_d(D)
    assert N == 27 and n == 8 and deg1 == z(27, 7)
    assert top == z(2) ** 3 * z(3) ** 2 * z(4) * z(5) * z(6)


def test_two_star_from_d_and_m():
    T = two_star_27()
    assert g.mark_isomorphic(rc.twostar_from_d(inv.d_poly(T)), T)
    assert g.mark_isomorphic(rc.tree_from_d(inv.d_poly(T)), T)
    assert g.mark_isomorphic(rc.twostar_from_m(inv.m_poly(T)), T)


def test_two_star_alpha_beta():
    M = inv.m_poly(two_star_27())
    assert rc.beta(M, 2, 6, 4) == 1
    assert rc.beta(M, 2, 3, 3) == 1
    st = rc.stats_from_m(M)
    assert st.leaf_weights == (6, 5, 4, 3, 3, 2) and st.centers == (2, 2) and st.shape == "two-star"


# -- statistics -----------------------------------------------------------------------------------------


def test_stats_from_m():
    T = MarkedGraph.weighted([3, 1, 2, 5], [(0, 1), (1, 2), (1, 3)])
    st = rc.stats_from_m(inv.m_poly(T))
    assert (st.n, st.N) == (4, 11)
    assert st.weights == (5, 3, 2, 1) and st.leaf_weights == (5, 3, 2) and st.shape == "star"


def test_alpha_counts_adjacent_pairs():
    T = rc.build_two_star(3, [2, 4], 5, [2])
    M = inv.m_poly(T)
    assert rc.alpha(M, 3, 2) == 1 and rc.alpha(M, 5, 2) == 1 and rc.alpha(M, 3, 5) == 1
    assert rc.alpha(M, 2, 4) == 0


# -- round trips ----------------------------------------------------------------------------------------


@pytest.mark.parametrize("N", range(2, 11))
def test_round_trip_stars_and_two_stars(N):
    for T in list(strict_stars(N)) + list(strict_two_stars(N)):
        assert g.mark_isomorphic(rc.tree_from_m(inv.m_poly(T)), T)
        assert g.mark_isomorphic(rc.tree_from_d(inv.d_poly(T)), T)


def test_csf_route_on_proper_trees():
    for K in [rc.build_star(2, [3, 3, 4]), rc.build_two_star(2, [3], 3, [2, 2]), MarkedGraph.weighted([5])]:
        T = g.uncore(K)
        R = rc.tree_from_csf_star(csf_star(T))
        assert g.mark_isomorphic(R, T)


# -- rejection ------------------------------------------------------------------------------------------


def test_non_strict_input_gives_its_core():
    T = rc.tree_from_d(inv.d_poly(MarkedGraph.weighted([1, 3, 1], [(0, 1), (1, 2)])))
    assert g.mark_isomorphic(T, MarkedGraph.weighted([5]))


def test_rejects_polynomials_of_no_tree():
    for text in ("z[5] + z[3]*z[2]", "z[6] + 2*z[3]*z[3]", "z[4,1]*z[2]"):
        with pytest.raises(rc.ReconstructionError):
            rc.tree_from_d(parse_zpoly(text))


def test_rejects_longer_trees():
    P = MarkedGraph.weighted([2, 2, 2, 2, 2, 2], [(i, i + 1) for i in range(5)])
    with pytest.raises(rc.ReconstructionError):
        rc.tree_from_d(inv.d_poly(P))
    with pytest.raises(rc.ReconstructionError):
        rc.tree_from_m(inv.m_poly(P))


def test_rejects_garbage_symmetric_function():
    with pytest.raises(rc.ReconstructionError):
        rc.tree_from_csf_star(SymFn("st", {(3,): 2}))
