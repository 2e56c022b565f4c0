"""Recovering weighted stars, weighted 2-stars and small proper trees from their invariants.

Every public reconstruction recomputes the invariant of its answer and
raises :class:`ReconstructionError` when it does not match the input, so a
returned tree is always a certified preimage.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb, isqrt
from typing import Callable, Iterable

from .graph import MarkedGraph, uncore
from .invariants import d_poly, m_poly
from .polyring import ZPoly, d_bullet, subst_star
from .symfunc import SymFn, to_basis


class ReconstructionError(ValueError):
    """The input is not the invariant of a tree in the supported family."""


@dataclass(frozen=True)
class TreeStats:
    n: int
    N: int
    weights: tuple[int, ...]  # multiset of vertex weights, descending
    leaf_weights: tuple[int, ...]  # multiset of leaf weights, descending
    shape: str  # "star", "two-star" or "other"

    @property
    def centers(self) -> tuple[int, ...]:
        return _msub(self.weights, self.leaf_weights)


StrictPair = tuple  # ((w1, k1), (w2, k2))


def _desc(xs: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(xs, reverse=True))


def _msub(big: Iterable[int], small: Iterable[int]) -> tuple[int, ...] | None:
    """Multiset difference, or ``None`` when ``small`` is not contained in ``big``."""
    c = Counter(big)
    c.subtract(Counter(small))
    if any(v < 0 for v in c.values()):
        return None
    return _desc(c.elements())


def _shape(n: int, leaves: int) -> str:
    if n <= 2 or leaves == n - 1:
        return "star"
    if leaves == n - 2:
        return "two-star"
    return "other"


# -- reading M ---------------------------------------------------------------------------------


def stats_from_m(M: ZPoly) -> TreeStats:
    """Order, total weight, vertex and leaf weights, and shape of the tree behind ``M``."""
    if M.max_y_degree():
        raise ReconstructionError("the M-polynomial of a tree has no y")
    ones = [(zs, c) for (zs, _), c in M.items() if len(zs) == 1]
    if len(ones) != 1 or ones[0][1] != 1:
        raise ReconstructionError("expected exactly one degree-one term with coefficient 1")
    (N, d), = ones[0][0]
    n = d + 1
    tops = [(zs, c) for (zs, _), c in M.items() if len(zs) == n]
    if len(tops) != 1 or tops[0][1] != 1 or any(dd for _, dd in tops[0][0]):
        raise ReconstructionError("expected a single undotted top-degree term")
    weights = _desc(w for w, _ in tops[0][0])
    if sum(weights) != N:
        raise ReconstructionError("top-degree term and degree-one term disagree on the total weight")
    if n <= 2:
        leaves = weights
    else:
        leaves = []
        for (zs, _), c in M.items():
            if len(zs) != 2:
                continue
            (a, da), (b, db) = zs
            if da == 0 and (b, db) == (N - a, n - 2):
                leaves.extend([a] * c)
            elif db == 0 and (a, da) == (N - b, n - 2):
                leaves.extend([b] * c)
        leaves = _desc(leaves)
        if _msub(weights, leaves) is None:
            raise ReconstructionError("leaf weights are not a sub-multiset of the vertex weights")
    return TreeStats(n, N, weights, leaves, _shape(n, len(leaves)))


def alpha(M: ZPoly, w1: int, w2: int, weights: Iterable[int] | None = None) -> int:
    """Number of edges joining a vertex of weight ``w1`` to one of weight ``w2``."""
    weights = stats_from_m(M).weights if weights is None else tuple(weights)
    rest = _msub(weights, (w1, w2))
    if rest is None:
        return 0
    return M.coeff([(w1 + w2, 1)] + [(w, 0) for w in rest])


def beta(M: ZPoly, w0: int, w1: int, w2: int, weights: Iterable[int] | None = None) -> int:
    """Independent edge pairs, one joining weights ``w0, w1`` and the other ``w0, w2``."""
    weights = stats_from_m(M).weights if weights is None else tuple(weights)
    rest = _msub(weights, (w0, w0, w1, w2))
    if rest is None:
        return 0
    return M.coeff([(w0 + w1, 1), (w0 + w2, 1)] + [(w, 0) for w in rest])


def build_star(center: int, leaves: Iterable[int]) -> MarkedGraph:
    leaves = list(leaves)
    return MarkedGraph.weighted([center] + leaves, [(0, i) for i in range(1, len(leaves) + 1)])


def build_two_star(u0: int, leaves0: Iterable[int], u1: int, leaves1: Iterable[int]) -> MarkedGraph:
    leaves0, leaves1 = list(leaves0), list(leaves1)
    ws = [u0, u1] + leaves0 + leaves1
    edges = [(0, 1)] + [(0, 2 + i) for i in range(len(leaves0))]
    edges += [(1, 2 + len(leaves0) + i) for i in range(len(leaves1))]
    return MarkedGraph.weighted(ws, edges)


def _star_from_stats(st: TreeStats) -> MarkedGraph:
    if st.n == 1:
        return MarkedGraph.weighted([st.N])
    if st.n == 2:
        return MarkedGraph.weighted(list(st.weights), [(0, 1)])
    center = st.N - sum(st.leaf_weights)
    if center < 1:
        raise ReconstructionError("negative centre weight")
    return build_star(center, st.leaf_weights)


def _solve_two_star(st: TreeStats, al: Callable[[int, int], int],
                    be: Callable[[int, int, int], int]) -> MarkedGraph:
    """Leaf counts of both centres from the ``alpha``/``beta`` counts."""
    centres = st.centers
    if centres is None or len(centres) != 2:
        raise ReconstructionError("a 2-star needs exactly two non-leaf weights")
    u0, u1 = centres
    mu = Counter(st.leaf_weights)
    ws = sorted(mu)
    L0: dict[int, int] = {}
    L1: dict[int, int] = {}
    if u0 != u1:
        for w in ws:
            L0[w] = al(u0, w) if w != u1 else mu[w] - al(u1, w)
            L1[w] = al(u1, w) if w != u0 else mu[w] - al(u0, w)
    else:
        u = u0
        roots = {}
        for w in ws:
            disc = mu[w] ** 2 - 4 * be(u, w, w)
            r = isqrt(disc) if disc >= 0 else -1
            if r < 0 or r * r != disc or (mu[w] + r) % 2:
                raise ReconstructionError(f"no integer leaf split for weight {w}")
            roots[w] = ((mu[w] + r) // 2, (mu[w] - r) // 2)
        pivots = [w for w in ws if roots[w][0] != roots[w][1]]
        if not pivots:
            for w in ws:
                L0[w] = L1[w] = roots[w][0]
        else:
            p = pivots[0]
            x, y = roots[p]
            L0[p], L1[p] = x, y
            for w in ws:
                if w == p:
                    continue
                num = x * mu[w] - be(u, p, w)
                if num % (x - y):
                    raise ReconstructionError(f"non-integer leaf count for weight {w}")
                L0[w] = num // (x - y)
                L1[w] = mu[w] - L0[w]
    for w in ws:
        if L0[w] < 0 or L1[w] < 0 or L0[w] + L1[w] != mu[w]:
            raise ReconstructionError(f"inconsistent leaf counts for weight {w}")
    leaves0 = [w for w in ws for _ in range(L0[w])]
    leaves1 = [w for w in ws for _ in range(L1[w])]
    return build_two_star(u0, leaves0, u1, leaves1)


def _certify(T: MarkedGraph, target: ZPoly, invariant: Callable[[MarkedGraph], ZPoly]) -> MarkedGraph:
    if invariant(T) != target:
        raise ReconstructionError("the reconstructed tree does not reproduce the input polynomial")
    return T


def star_from_m(M: ZPoly) -> MarkedGraph:
    st = stats_from_m(M)
    if st.shape != "star":
        raise ReconstructionError(f"M describes a {st.shape}, not a star")
    return _certify(_star_from_stats(st), M, m_poly)


def twostar_from_m(M: ZPoly) -> MarkedGraph:
    st = stats_from_m(M)
    if st.shape != "two-star":
        raise ReconstructionError(f"M describes a {st.shape}, not a 2-star")
    T = _solve_two_star(st, lambda a, b: alpha(M, a, b, st.weights),
                        lambda a, b, c: beta(M, a, b, c, st.weights))
    return _certify(T, M, m_poly)


def tree_from_m(M: ZPoly) -> MarkedGraph:
    st = stats_from_m(M)
    if st.shape == "star":
        return star_from_m(M)
    if st.shape == "two-star":
        return twostar_from_m(M)
    raise ReconstructionError("only stars and 2-stars are reconstructed")


# -- reading D ---------------------------------------------------------------------------------


def _non_unit(zs) -> list[int]:
    return [w for w, _ in zs if w != 1]


def d_layer(D: ZPoly, k: int) -> ZPoly:
    """Terms of ``D`` with exactly ``k`` factors other than ``z[1]``."""
    return ZPoly({m: c for m, c in D.items() if len(_non_unit(m[0])) == k})


def top_and_degree_one_from_d(D: ZPoly) -> tuple[ZPoly, ZPoly, int, int, tuple[int, ...]]:
    """Degree-one and top-degree terms of M, with ``N``, ``n`` and the vertex weights."""
    if D.max_y_degree():
        raise ReconstructionError("the D-polynomial of a tree has no y")
    ones = [(zs, c) for (zs, _), c in D.items() if len(zs) == 1]
    if len(ones) != 1 or ones[0][1] != 1:
        raise ReconstructionError("expected exactly one degree-one term")
    (N, _), = ones[0][0]
    free = [(zs, c) for (zs, _), c in D.items() if (1, 0) not in zs]
    n = max(len(zs) for zs, _ in free)
    tops = [(zs, c) for zs, c in free if len(zs) == n]
    if len(tops) != 1 or tops[0][1] != 1:
        raise ReconstructionError("top-degree term without z[1] is not unique")
    weights = _desc(w for w, _ in tops[0][0])
    if sum(weights) != N:
        raise ReconstructionError("weights do not add up to the total weight")
    return ZPoly.z(N, n - 1), ZPoly.monomial((w, 0) for w in weights), N, n, weights


def strict_pairs_from_d2(D2: ZPoly, N: int, n: int) -> list[StrictPair]:
    """Peel the multiset of strict pairs off the undotted degree-two layer."""
    Q = D2
    pairs: list[StrictPair] = []
    while not Q.is_zero():
        cands = []
        for (zs, _), c in Q.items():
            if len(zs) == 2 and zs[0][0] + zs[1][0] == N and zs[1][0] > 1:
                cands.append(zs[1][0])
        if not cands:
            raise ReconstructionError("strict pair peel-off stalled")
        a0 = min(cands)
        d0 = max(i for i in range(a0 - 1) if Q.coeff([(N - a0, 0), (a0 - i, 0)] + [(1, 0)] * i))
        k1 = n - 2 - d0
        if k1 < 0 or N - a0 < k1 + 2:
            raise ReconstructionError("peel-off produced a non-strict mark")
        p = ((N - a0, k1), (a0, d0))
        if p[0][0] == p[1][0] and p[0][1] > p[1][1]:
            p = (p[1], p[0])
        pairs.append(p)
        Q = Q - d_bullet(*p[0]) * d_bullet(*p[1])
    return sorted(pairs, reverse=True)


def _stats_from_d(D: ZPoly) -> tuple[TreeStats, list[StrictPair]]:
    _, _, N, n, weights = top_and_degree_one_from_d(D)
    if n <= 2:
        return TreeStats(n, N, weights, weights, "star"), []
    pairs = strict_pairs_from_d2(d_layer(D, 2), N, n)
    if len(pairs) != n - 1:
        raise ReconstructionError("number of strict pairs differs from the number of edges")
    leaves = _desc(p[1][0] if p[1][1] == 0 else p[0][0] for p in pairs if p[0][1] == 0 or p[1][1] == 0)
    if _msub(weights, leaves) is None:
        raise ReconstructionError("leaf weights are not a sub-multiset of the vertex weights")
    return TreeStats(n, N, weights, leaves, _shape(n, len(leaves))), pairs


def mdeg_n1_from_d(D: ZPoly, N: int, n: int, weights: Iterable[int]) -> ZPoly:
    """Degree ``n - 1`` layer of M of a strictly weighted tree, read off ``D``."""
    weights = _desc(weights)
    out = ZPoly.zero()
    for (zs, _), c in D.items():
        if len(zs) != n - 1 or (1, 0) in zs or c <= 0:
            continue
        tau = Counter(w for w, _ in zs)
        merged = _desc((tau - Counter(weights)).elements())
        pair = _desc((Counter(weights) - tau).elements())
        if len(merged) != 1 or len(pair) != 2 or sum(pair) != merged[0]:
            raise ReconstructionError(f"no consistent merged pair for {sorted(tau.elements())}")
        rest = _msub(weights, pair)
        out = out + ZPoly.monomial([(merged[0], 1)] + [(w, 0) for w in rest], c=c)
    return out


def _beta_from_d(D: ZPoly, st: TreeStats) -> Callable[[int, int, int], int]:
    """``beta(u, a, b)`` for equal centres ``u``, from D with the adjacent-pair corrections."""
    mu = Counter(st.leaf_weights)
    memo: dict = {}

    def coef(u: int, a: int, b: int) -> int:
        rest = _msub(st.weights, (u, u, a, b))
        if rest is None:
            return 0
        return D.coeff([(u + a, 0), (u + b, 0)] + [(w, 0) for w in rest])

    def adjacent(u: int, x: int) -> int:
        # pairs of edges at a common centre whose other ends weigh u and x
        if x == u:
            return mu[u] + comb(mu[u], 2) - bet(u, u, u)
        return mu[x] + mu[u] * mu[x] - bet(u, u, x)

    def bet(u: int, a: int, b: int) -> int:
        key = (u,) + tuple(sorted((a, b)))
        if key in memo:
            return memo[key]
        if a == u + b:
            k = adjacent(u, b)
        elif b == u + a:
            k = adjacent(u, a)
        else:
            k = 0
        memo[key] = coef(u, a, b) - k
        return memo[key]

    return bet


def star_from_d(D: ZPoly) -> MarkedGraph:
    st, _ = _stats_from_d(D)
    if st.shape != "star":
        raise ReconstructionError(f"D describes a {st.shape}, not a star")
    return _certify(_star_from_stats(st), D, d_poly)


def twostar_from_d(D: ZPoly) -> MarkedGraph:
    st, _ = _stats_from_d(D)
    if st.shape != "two-star":
        raise ReconstructionError(f"D describes a {st.shape}, not a 2-star")
    layer = mdeg_n1_from_d(D, st.N, st.n, st.weights)
    T = _solve_two_star(st, lambda a, b: alpha(layer, a, b, st.weights), _beta_from_d(D, st))
    return _certify(T, D, d_poly)


def tree_from_d(D: ZPoly) -> MarkedGraph:
    st, _ = _stats_from_d(D)
    if st.shape == "star":
        return star_from_d(D)
    if st.shape == "two-star":
        return twostar_from_d(D)
    raise ReconstructionError("only stars and 2-stars are reconstructed")


# -- chromatic symmetric function ------------------------------------------------------------------


def d_from_csf_star(X: SymFn) -> ZPoly:
    """D of the core at ``y = 0``, read off the star expansion (``st_lambda -> z_lambda``)."""
    X = to_basis(X, "st")
    return ZPoly({(tuple((w, 0) for w in lam), 0): c for lam, c in X.terms.items()})


def tree_from_csf_star(X: SymFn) -> MarkedGraph:
    """Unweighted proper tree of diameter at most 5 with chromatic symmetric function ``X``."""
    X = to_basis(X, "st")
    D = d_from_csf_star(X)
    if len(D) == 1:
        ((zs, _), c), = D.items()
        if c != 1 or len(zs) != 1:
            raise ReconstructionError("a single-term expansion must be st_N")
        K = MarkedGraph.weighted([zs[0][0]])
    else:
        K = tree_from_d(D)
    T = uncore(K)
    if subst_star(d_poly(T)) != X:
        raise ReconstructionError("the reconstructed tree does not reproduce the input")
    return T

