"""Tree enumeration, random instances and the verification campaigns."""

from __future__ import annotations

import itertools
import json
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import networkx as nx

from . import graph as g
from . import invariants as inv
from . import mprime as mp
from . import polyring as pr
from . import reconstruct as rc
from . import star_expansion as se
from . import symfunc as sf
from .graph import Mark, MarkedGraph

DEFAULT_CAP = 14


class CapExceeded(ValueError):
    pass


# -- enumeration -------------------------------------------------------------------------------


def enumerate_free_trees(n: int, cap: int = DEFAULT_CAP) -> Iterator[MarkedGraph]:
    """One unweighted tree per isomorphism class on ``n`` vertices."""
    if n > cap:
        raise CapExceeded(f"n = {n} exceeds the enumeration cap {cap}")
    if n < 1:
        return
    if n == 1:
        yield MarkedGraph.unweighted(1)
        return
    for t in nx.nonisomorphic_trees(n):
        yield MarkedGraph.unweighted(n, sorted(tuple(sorted(e)) for e in t.edges()))


def prufer_trees_oracle(n: int) -> list[MarkedGraph]:
    """Isomorphism classes of trees on ``n`` vertices via all Prüfer sequences (slow oracle)."""
    if n == 1:
        return [MarkedGraph.unweighted(1)]
    if n == 2:
        return [MarkedGraph.unweighted(2, [(0, 1)])]
    seen: dict[str, MarkedGraph] = {}
    for seq in itertools.product(range(n), repeat=n - 2):
        t = nx.from_prufer_sequence(list(seq))
        T = MarkedGraph.unweighted(n, [tuple(sorted(e)) for e in t.edges()])
        seen.setdefault(g.canonical_form(T), T)
    return list(seen.values())


def _multisets(total: int, lo: int, max_parts: int | None = None) -> Iterator[tuple[int, ...]]:
    """Weakly decreasing tuples of parts ``>= lo`` summing to ``total``."""

    def rec(rem: int, top: int, parts: tuple[int, ...]):
        if rem == 0:
            yield parts
            return
        if max_parts is not None and len(parts) >= max_parts:
            return
        for p in range(min(rem, top), lo - 1, -1):
            yield from rec(rem - p, p, parts + (p,))

    yield from rec(total, total, ())


def strict_stars(N: int, min_weight: int = 2) -> Iterator[MarkedGraph]:
    """Weighted stars of total weight ``N`` (including the single vertex), all weights ``>= min_weight``."""
    seen = set()
    if N >= min_weight:
        T = MarkedGraph.weighted([N])
        seen.add(g.canonical_form(T))
        yield T
    for c in range(min_weight, N + 1):
        for leaves in _multisets(N - c, min_weight):
            if not leaves:
                continue
            T = rc.build_star(c, leaves)
            key = g.canonical_form(T)
            if key not in seen:
                seen.add(key)
                yield T


def strict_two_stars(N: int, min_weight: int = 2) -> Iterator[MarkedGraph]:
    """Weighted 2-stars (each centre has at least one leaf) of total weight ``N``."""
    seen = set()
    for u0 in range(min_weight, N + 1):
        for u1 in range(min_weight, N - u0 + 1):
            rem = N - u0 - u1
            for s0 in range(min_weight, rem - min_weight + 1):
                for l0 in _multisets(s0, min_weight):
                    for l1 in _multisets(rem - s0, min_weight):
                        if not l0 or not l1:
                            continue
                        T = rc.build_two_star(u0, l0, u1, l1)
                        key = g.canonical_form(T)
                        if key not in seen:
                            seen.add(key)
                            yield T


def tree_diameter(T: MarkedGraph) -> int:
    if T.n <= 1:
        return 0
    nxg = nx.Graph()
    nxg.add_nodes_from(T.vertices)
    nxg.add_edges_from(T.edges.values())
    return nx.diameter(nxg)


def is_proper(T: MarkedGraph) -> bool:
    leaves = {v for v in T.vertices if T.degree(v) == 1}
    return all(any(u in leaves for u in T.neighbors(v)) for v in T.vertices if T.degree(v) > 1)


def enumerate_proper_diam5(n: int, cap: int = DEFAULT_CAP) -> Iterator[MarkedGraph]:
    """Proper trees of diameter at most 5 on ``n`` vertices, as uncored stars and 2-stars."""
    if n > cap:
        raise CapExceeded(f"n = {n} exceeds the enumeration cap {cap}")
    if n == 1:
        yield MarkedGraph.unweighted(1)
        return
    for K in itertools.chain(strict_stars(n), strict_two_stars(n)):
        yield g.uncore(K)


# -- random instances -----------------------------------------------------------------------------


def random_mark(rng: random.Random, max_w: int = 5) -> Mark:
    w = rng.randint(1, max_w)
    return Mark(w, rng.randint(0, w - 1))


def random_multigraph(rng: random.Random, max_n: int = 6, max_m: int = 9, marked: bool = True) -> MarkedGraph:
    """Random marked multigraph; loops and parallel edges are allowed."""
    n = rng.randint(1, max_n)
    m = rng.randint(0, max_m)
    marks = [random_mark(rng) if marked else g.UNIT for _ in range(n)]
    edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
    return MarkedGraph.from_edge_list(marks, edges)


def random_tree(rng: random.Random, n: int, weights: Callable[[], Mark] | None = None) -> MarkedGraph:
    marks = [weights() if weights else g.UNIT for _ in range(n)]
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    perm = list(range(n))
    rng.shuffle(perm)
    return MarkedGraph.from_edge_list(marks, edges).relabel(dict(enumerate(perm)))


def random_forest(rng: random.Random, max_n: int = 7, max_w: int = 4) -> MarkedGraph:
    n = rng.randint(1, max_n)
    T = random_tree(rng, n, lambda: random_mark(rng, max_w))
    drop = [e for e in T.edges if rng.random() < 0.25]
    return g.delete_edges(T, drop)


def random_simple_graph(rng: random.Random, n: int, p: float = 0.5) -> MarkedGraph:
    return MarkedGraph.unweighted(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_sym(rng: random.Random, basis: str, max_deg: int = 8) -> sf.SymFn:
    terms = {}
    for _ in range(rng.randint(1, 4)):
        deg = rng.randint(1, max_deg)
        lam = []
        while deg:
            p = rng.randint(1, deg)
            lam.append(p)
            deg -= p
        terms[tuple(lam)] = rng.randint(-5, 5)
    return sf.SymFn(basis, terms)


def random_zpoly(rng: random.Random, terms: int = 4) -> pr.ZPoly:
    out = pr.ZPoly.zero()
    for _ in range(terms):
        zs = [random_mark(rng, 5) for _ in range(rng.randint(0, 3))]
        out = out + pr.ZPoly.monomial(zs, rng.randint(0, 2), rng.randint(-3, 3))
    return out


# -- reports --------------------------------------------------------------------------------------


@dataclass
class RunReport:
    command: str
    config: dict
    counts: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)
    collisions: list = field(default_factory=list)
    timing_ns: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.collisions and not any(self.failures.values())

    def to_json(self, include_timing: bool = False) -> str:
        data = {
            "command": self.command,
            "config": self.config,
            "counts": self.counts,
            "failures": self.failures,
            "collisions": self.collisions,
            "ok": self.ok,
        }
        if include_timing:
            data["timing_ns"] = self.timing_ns
        return json.dumps(data, sort_keys=True, indent=2)


def verify_stanley(max_n: int, cap: int = DEFAULT_CAP) -> RunReport:
    """Star expansions of all free trees with at most ``max_n`` vertices; report equal pairs."""
    if max_n > cap:
        raise CapExceeded(f"max_n = {max_n} exceeds the cap {cap}")
    rep = RunReport("verify stanley", {"max_n": max_n})
    for n in range(1, max_n + 1):
        t0 = time.perf_counter_ns()
        seen: dict[str, str] = {}
        count = 0
        for T in enumerate_free_trees(n, cap):
            X = str(se.dnc_expand(T)[1])
            key = g.canonical_form(T)
            if X in seen:
                rep.collisions.append({"n": n, "trees": [seen[X], key], "csf": X})
            else:
                seen[X] = key
            count += 1
        rep.counts[str(n)] = count
        rep.timing_ns[str(n)] = time.perf_counter_ns() - t0
    rep.failures = {"collisions": len(rep.collisions)}
    return rep


# -- the randomized property battery ------------------------------------------------------------------


def _nc_then_contract(G: MarkedGraph, e: int) -> bool:
    H, ell = g.near_contract(G, e)
    return g.mark_isomorphic(g.contract_edge(H, ell), g.contract_edge(G, e))


def _check_graph_ops(rng, ops) -> bool:
    T = random_tree(rng, rng.randint(2, 8), lambda: random_mark(rng, 4))
    e = rng.choice(list(T.edges))
    W = T.total_weight()
    ok = g.contract_edge(T, e).total_weight() == W
    H, _ = g.near_contract(T, e)
    ok &= H.total_weight() == W and H.n == T.n
    ok &= g.core(T).total_weight() == W
    return ok and _nc_then_contract(T, e)


def _check_core_confluent(rng, ops) -> bool:
    T = random_tree(rng, rng.randint(1, 10))
    K = g.core(T)
    return all(g.canonical_form(g.core(T, random.Random(rng.random()))) == g.canonical_form(K)
               for _ in range(3)) and g.core(K) == K


def _check_internal_decrease(rng, ops) -> bool:
    G = random_simple_graph(rng, rng.randint(2, 7))
    ies = g.internal_edges(G)
    if not ies:
        return True
    e = rng.choice(ies)
    kids = [c for _, c in se._children(G, e)]
    return all(len(g.internal_edges(k)) < len(ies) for k in kids)


def _check_involution(rng, ops) -> bool:
    f = random_sym(rng, "st")
    p = random_sym(rng, "p")
    return sf.p_to_st(sf.st_to_p(f)) == f and sf.st_to_p(sf.p_to_st(p)) == p


def _check_csf_engines(rng, ops) -> bool:
    G = random_multigraph(rng, 6, 8)
    G = g.simplify(G) if rng.random() < 0.5 else G
    return sf.csf_power(G) == sf.csf_power_bruteforce(G)


def _check_chromatic(rng, ops) -> bool:
    G = random_simple_graph(rng, rng.randint(1, 6))
    k = rng.randint(0, 4)
    return sf.chromatic_poly_eval(G, k) == sf.eval_p_principal(sf.csf_power(G), k)


def _check_ring_laws(rng, ops) -> bool:
    a, b, c = (random_zpoly(rng) for _ in range(3))
    return (a * b) * c == a * (b * c) and a * b == b * a and a * (b + c) == a * b + a * c and (a + b) + c == a + (b + c)


def _check_undot_hom(rng, ops) -> bool:
    a, b = random_zpoly(rng), random_zpoly(rng)
    bullet = ops.get("d_bullet", pr.d_bullet)
    return pr.undot(a * b, bullet) == pr.undot(a, bullet) * pr.undot(b, bullet)


def _check_pascal(rng, ops) -> bool:
    bullet = ops.get("d_bullet", pr.d_bullet)
    w = rng.randint(2, 9)
    d = rng.randint(1, w - 1)
    return bullet(w, d) == bullet(w, d - 1) - pr.ZPoly.z(1) * bullet(w - 1, d - 1)


def _check_m_orders(rng, ops) -> bool:
    G = random_multigraph(rng)
    ref = inv.m_poly_states(G)
    es = list(G.edges)
    for _ in range(4):
        rng.shuffle(es)
        if inv.m_poly_dc(G, es) != ref:
            return False
    return inv.m_poly_bond(G) == ref


def _check_multiplicative(rng, ops) -> bool:
    A, B = random_multigraph(rng, 4, 5), random_multigraph(rng, 4, 5)
    shift = max(A.vertices) + 1
    B2 = B.relabel({v: v + shift for v in B.vertices})
    U = MarkedGraph({**A.marks, **B2.marks},
                    {**{e: uv for e, uv in A.edges.items()}, **{e + A.m + 100: uv for e, uv in B2.edges.items()}})
    return inv.m_poly(U) == inv.m_poly(A) * inv.m_poly(B)


def _check_m_three_term(rng, ops) -> bool:
    G = random_multigraph(rng)
    es = [e for e in G.edges if not G.is_loop(e)]
    if not es:
        return True
    e = rng.choice(es)
    H, ell = g.near_contract(G, e)
    return inv.m_poly(G) == inv.m_poly(g.delete_edge(G, e)) - inv.m_poly(g.delete_edge(H, ell)) + inv.m_poly(H)


def _check_y0(rng, ops) -> bool:
    G = random_multigraph(rng)
    if G.has_loops():
        G = g.delete_edges(G, [e for e in G.edges if G.is_loop(e)])
    return inv.m_poly(G).at_y(0) == inv.m_poly(g.simplify(G)).at_y(0)


def _check_tree_extremes(rng, ops) -> bool:
    T = random_tree(rng, rng.randint(1, 7), lambda: Mark(rng.randint(1, 4)))
    M = inv.m_poly(T)
    N = T.total_weight()
    ones = M.homogeneous_part(1)
    top = M.homogeneous_part(T.n)
    return ones == pr.ZPoly.z(N, T.n - 1) and top == pr.ZPoly.monomial(T.marks.values())


def _check_v_recipe(rng, ops) -> bool:
    G = random_multigraph(rng, 5, 6)
    alpha = {e: Fraction(rng.randint(1, 4), rng.randint(1, 3)) for e in G.edges}
    beta = {e: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for e in G.edges}
    return inv.recipe_eval(G, alpha, beta) == inv.recipe_from_v(G, alpha, beta)


def _check_v_m(rng, ops) -> bool:
    G = random_multigraph(rng, 5, 6)
    V = inv.v_poly_dc(G)
    return inv.v_to_m_side(V) == (pr.ZPoly.y() - 1) ** G.n * inv.m_poly_dc(G) and V == inv.v_poly_states(G)


def _check_d_core(rng, ops) -> bool:
    G = random_multigraph(rng, 6, 7)
    return pr.undot(inv.m_poly(G)) == inv.d_poly(G)


def _check_d_three_term(rng, ops) -> bool:
    G = random_multigraph(rng, 5, 7)
    es = [e for e in G.edges if not G.is_loop(e)]
    if not es:
        return True
    e = rng.choice(es)
    D = inv.d_poly
    H, ell = g.near_contract(G, e)
    dc = D(G) == D(g.delete_edge(G, e)) + D(g.contract_edge(G, e))
    return dc and D(G) == D(g.delete_edge(G, e)) - D(g.delete_edge(H, ell)) + D(H)


def _check_three_to_n(rng, ops) -> bool:
    n = rng.randint(1, 6)
    T = random_tree(rng, n, lambda: Mark(rng.randint(1, 4)))
    total = inv.d_poly(T).abs_coeff_sum()
    if n == 1:  # a lone vertex has D = z_w whatever its weight
        return total == 1
    strict = all(m.w >= 2 for m in T.marks.values())
    return (total == 3 ** (n - 1)) == strict


def _check_w_from_d(rng, ops) -> bool:
    T = random_tree(rng, rng.randint(1, 6), lambda: Mark(rng.randint(2, 5)))
    return inv.w_from_d(T) == inv.w_poly(T)


def _check_star_oracle(rng, ops) -> bool:
    G = random_simple_graph(rng, rng.randint(1, 7))
    return se.dnc_expand(G, memo=False)[1] == sf.p_to_st(sf.csf_power(G))


def _check_no_cancellation(rng, ops) -> bool:
    G = random_simple_graph(rng, rng.randint(1, 5))
    root, X = se.dnc_expand(G, emit_tree=True)
    contrib = se.leaf_contributions(root)
    signs_match = all(se.dnc_sign(path) == (-1) ** (se.isolated_count(leaf.graph) - se.isolated_count(G))
                      for path, leaf in root.leaves())
    return se.sign_uniform(contrib) and signs_match


def _check_rule_independence(rng, ops) -> bool:
    G = random_simple_graph(rng, rng.randint(1, 6))
    rule = lambda H: max(g.internal_edges(H))  # noqa: E731
    return se.dnc_expand(G, edge_rule=rule, memo=False)[1] == se.dnc_expand(G)[1]


def _check_mprime(rng, ops) -> bool:
    T = random_forest(rng)
    return pr.undot(mp.m_prime(T, mp.MarkOrder.random(rng))) == inv.d_poly(T)


def _check_partial_states(rng, ops) -> bool:
    T = random_forest(rng)
    B = [e for e in T.edges if rng.random() < 0.5]
    total = pr.ZPoly.zero()
    for bits in itertools.product((0, 1), repeat=len(B)):
        a1 = [e for e, b in zip(B, bits) if b]
        a2 = [e for e, b in zip(B, bits) if not b]
        total = total + inv.m_poly(g.contract_edges(g.delete_edges(T, a2), a1))
    return total == inv.m_poly(T)


def _check_almost_strict(rng, ops) -> bool:
    def mk():
        if rng.random() < 0.4:
            return g.UNIT
        w = rng.randint(2, 5)
        return Mark(w, rng.randint(0, w - 2))

    T = random_tree(rng, rng.randint(1, 6), mk)
    f = mp.m_prime(T, mp.MarkOrder.random(rng))
    if T.n == 1:
        (m,) = T.marks.values()
        return f == pr.ZPoly.z(m.w, m.d) and mp.undot_is_cancellation_free(f)
    return all(Mark(w, d).strict for w, d in f.variables()) and mp.undot_is_cancellation_free(f)


def _check_round_trip(rng, ops) -> bool:
    N = rng.randint(2, 14)
    pool = list(strict_stars(N)) + list(strict_two_stars(N))
    T = rng.choice(pool)
    R1 = rc.tree_from_m(inv.m_poly(T))
    R2 = rc.tree_from_d(inv.d_poly(T))
    return g.mark_isomorphic(R1, T) and g.mark_isomorphic(R2, T)


def _check_stats(rng, ops) -> bool:
    T = random_tree(rng, rng.randint(1, 7), lambda: Mark(rng.randint(1, 5)))
    st = rc.stats_from_m(inv.m_poly(T))
    leaves = sorted((T.mark(v).w for v in T.vertices if T.degree(v) == 1 or T.n == 1), reverse=True)
    return (st.n == T.n and st.N == T.total_weight() and st.leaf_weights == tuple(leaves)
            and Counter(st.weights) == Counter(m.w for m in T.marks.values()))


INVARIANTS: dict[str, Callable] = {
    "graph.weight_and_near_contraction": _check_graph_ops,
    "graph.core_confluent": _check_core_confluent,
    "graph.internal_edges_decrease": _check_internal_decrease,
    "symfunc.involution": _check_involution,
    "symfunc.csf_engines_agree": _check_csf_engines,
    "symfunc.chromatic_specialization": _check_chromatic,
    "polyring.ring_laws": _check_ring_laws,
    "polyring.undot_homomorphism": _check_undot_hom,
    "polyring.pascal_identity": _check_pascal,
    "invariants.m_routes_agree": _check_m_orders,
    "invariants.m_multiplicative": _check_multiplicative,
    "invariants.m_deletion_near_contraction": _check_m_three_term,
    "invariants.m_y0_simple": _check_y0,
    "invariants.m_tree_extremes": _check_tree_extremes,
    "invariants.v_recipe": _check_v_recipe,
    "invariants.v_to_m": _check_v_m,
    "invariants.d_equals_d_of_core": _check_d_core,
    "invariants.d_recurrences": _check_d_three_term,
    "invariants.d_three_power": _check_three_to_n,
    "invariants.w_from_d": _check_w_from_d,
    "star.oracle": _check_star_oracle,
    "star.no_cancellation": _check_no_cancellation,
    "star.rule_independence": _check_rule_independence,
    "mprime.undot_equals_d": _check_mprime,
    "mprime.partial_states": _check_partial_states,
    "mprime.almost_strict": _check_almost_strict,
    "reconstruct.round_trip": _check_round_trip,
    "reconstruct.stats": _check_stats,
}

INVARIANT_IDS = tuple(INVARIANTS)


def verify_invariants(seed: int, trials: int, overrides: dict | None = None,
                      only: tuple[str, ...] | None = None) -> RunReport:
    """Run every property ``trials`` times from one seeded ``random.Random``.

    ``overrides`` replaces primitives (currently ``d_bullet``) to check that a
    broken implementation is caught.
    """
    ops = dict(overrides or {})
    ids = only or INVARIANT_IDS
    rep = RunReport("verify invariants", {"seed": seed, "trials": trials, "overrides": sorted(ops)})
    for name in ids:
        rng = random.Random(f"{seed}:{name}")
        passed = failed = 0
        t0 = time.perf_counter_ns()
        for _ in range(trials):
            try:
                ok = INVARIANTS[name](rng, ops)
            except Exception:  # a crash counts as a failed trial
                ok = False
            passed += bool(ok)
            failed += not ok
        rep.counts[name] = {"pass": passed, "fail": failed}
        rep.failures[name] = failed
        rep.timing_ns[name] = time.perf_counter_ns() - t0
    return rep
