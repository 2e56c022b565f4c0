"""Symmetric functions in the power-sum (``p``) and star (``st``) bases.

Both bases are multiplicative, so an element is stored as a map from integer
partitions (descending tuples) to integer coefficients together with a basis
tag.  The change of basis between ``p`` and ``st`` is an involution: the same
generator expansion works in both directions with the tags swapped.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .graph import MarkedGraph, _UnionFind

Partition = tuple  # tuple[int, ...], weakly decreasing

BASES = ("p", "st")


class BudgetExceeded(RuntimeError):
    """A brute-force routine was asked to exceed its configured size bound."""


def partition(parts: Iterable[int]) -> Partition:
    parts = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x <= 0 for x in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    return parts


class SymFn:
    """Immutable integer combination of ``p_lambda`` or ``st_lambda``."""

    __slots__ = ("basis", "_terms")

    def __init__(self, basis: str, terms: Mapping[Iterable[int], int] | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        clean: dict[Partition, int] = {}
        for lam, c in (terms or {}).items():
            lam = partition(lam)
            clean[lam] = clean.get(lam, 0) + int(c)
        self._terms = {lam: c for lam, c in clean.items() if c}

    @classmethod
    def gen(cls, basis: str, lam: Iterable[int], c: int = 1) -> SymFn:
        return cls(basis, {partition(lam): c})

    @property
    def terms(self) -> dict[Partition, int]:
        return dict(self._terms)

    def coeff(self, lam: Iterable[int]) -> int:
        return self._terms.get(partition(lam), 0)

    def degrees(self) -> set[int]:
        return {sum(lam) for lam in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: SymFn) -> None:
        if not isinstance(other, SymFn):
            raise TypeError(f"expected SymFn, got {type(other).__name__}")
        if other.basis != self.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}")

    def __add__(self, other: SymFn) -> SymFn:
        self._check(other)
        out = dict(self._terms)
        for lam, c in other._terms.items():
            out[lam] = out.get(lam, 0) + c
        return SymFn(self.basis, out)

    def __neg__(self) -> SymFn:
        return SymFn(self.basis, {lam: -c for lam, c in self._terms.items()})

    def __sub__(self, other: SymFn) -> SymFn:
        return self + (-other)

    def __mul__(self, other: SymFn | int) -> SymFn:
        if isinstance(other, int):
            return SymFn(self.basis, {lam: c * other for lam, c in self._terms.items()})
        self._check(other)
        out: dict[Partition, int] = {}
        for la, ca in self._terms.items():
            for lb, cb in other._terms.items():
                lam = tuple(sorted(la + lb, reverse=True))
                out[lam] = out.get(lam, 0) + ca * cb
        return SymFn(self.basis, out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymFn):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.basis == other.basis and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.basis, frozenset(self._terms.items())))

    def sorted_terms(self) -> list[tuple[Partition, int]]:
        return sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __str__(self) -> str:
        return format_symfn(self)

    def __repr__(self) -> str:
        return f"SymFn({format_symfn(self)!r})"


def format_symfn(f: SymFn) -> str:
    """Canonical text, e.g. ``2*st[4] - 2*st[3,1] + 1*st[2,2]``."""
    if not f._terms:
        return "0"
    chunks = []
    for i, (lam, c) in enumerate(f.sorted_terms()):
        body = f"{abs(c)}*{f.basis}[{','.join(map(str, lam))}]"
        if i == 0:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(("+ " if c > 0 else "- ") + body)
    return " ".join(chunks)


_SYM_TERM = re.compile(r"([+-]?)\s*(?:(\d+)\s*\*\s*)?(p|st)\[([\d,\s]*)\]")


def parse_symfn(text: str, basis: str | None = None) -> SymFn:
    """Parse the canonical text form; ``basis`` is needed only for ``"0"``."""
    text = text.strip()
    if text == "0":
        return SymFn(basis or "st")
    terms: dict[Partition, int] = {}
    seen_basis = None
    pos = 0
    for m in _SYM_TERM.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"cannot parse {text[pos:m.start()]!r}")
        if pos and not m.group(1):
            raise ValueError("terms must be separated by + or -")
        sign, c, b, parts = m.groups()
        if seen_basis and b != seen_basis:
            raise ValueError("mixed bases in one expression")
        seen_basis = b
        lam = partition(int(x) for x in parts.split(",") if x.strip())
        terms[lam] = terms.get(lam, 0) + (-1 if sign == "-" else 1) * int(c or 1)
        pos = m.end()
    if text[pos:].strip() or seen_basis is None:
        raise ValueError(f"cannot parse symmetric function {text!r}")
    if basis and basis != seen_basis:
        raise ValueError(f"expected basis {basis}, found {seen_basis}")
    return SymFn(seen_basis, terms)


# -- change of basis ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _generator_image(k: int) -> tuple[tuple[Partition, int], ...]:
    """Image of the degree-``k`` generator under the involution."""
    n = k - 1
    out = []
    for r in range(n + 1):
        out.append(((r + 1,) + (1,) * (n - r), (-1) ** r * comb(n, r)))
    return tuple(out)


@lru_cache(maxsize=4096)
def _partition_image(lam: Partition) -> tuple[tuple[Partition, int], ...]:
    acc: dict[Partition, int] = {(): 1}
    for part in lam:
        nxt: dict[Partition, int] = {}
        for mu, c in acc.items():
            for nu, d in _generator_image(part):
                key = tuple(sorted(mu + nu, reverse=True))
                nxt[key] = nxt.get(key, 0) + c * d
        acc = {mu: c for mu, c in nxt.items() if c}
    return tuple(acc.items())


def _swap(f: SymFn, target: str) -> SymFn:
    out: dict[Partition, int] = {}
    for lam, c in f._terms.items():
        for mu, d in _partition_image(lam):
            out[mu] = out.get(mu, 0) + c * d
    return SymFn(target, out)


def st_to_p(f: SymFn) -> SymFn:
    if f.basis != "st":
        raise ValueError("st_to_p expects an st-basis function")
    return _swap(f, "p")


def p_to_st(f: SymFn) -> SymFn:
    if f.basis != "p":
        raise ValueError("p_to_st expects a p-basis function")
    return _swap(f, "st")


def to_basis(f: SymFn, basis: str) -> SymFn:
    if f.basis == basis:
        return f
    return st_to_p(f) if basis == "p" else p_to_st(f)


# -- chromatic symmetric function, power-sum expansion --------------------------------------


def _weights(G: MarkedGraph) -> dict[int, int]:
    return {v: m.w for v, m in G.marks.items()}


def csf_power(G: MarkedGraph, max_edges: int = 22) -> SymFn:
    """``sum_A (-1)^|A| p_lambda(A)`` with parts the total weights of the components of ``G|_A``.

    Dots are ignored; only the weights of the marks matter.  The subset sum is
    evaluated by a transfer over the edges whose state is the vertex partition
    built so far, which gives the same total as listing the ``2^|E|`` subsets.
    """
    if G.has_loops():
        return SymFn("p")
    if G.m > max_edges:
        raise BudgetExceeded(f"{G.m} edges exceeds the subset budget of {max_edges}")
    verts = G.vertices
    index = {v: i for i, v in enumerate(verts)}
    weight = [G.mark(v).w for v in verts]
    start = tuple(range(len(verts)))
    states: dict[tuple[int, ...], int] = {start: 1}
    for u, v in G.edges.values():
        iu, iv = index[u], index[v]
        nxt: dict[tuple[int, ...], int] = {}
        for labels, c in states.items():
            nxt[labels] = nxt.get(labels, 0) + c
            a, b = labels[iu], labels[iv]
            if a != b:
                lo, hi = (a, b) if a < b else (b, a)
                merged = tuple(lo if x == hi else x for x in labels)
            else:
                merged = labels
            nxt[merged] = nxt.get(merged, 0) - c
        states = {k: c for k, c in nxt.items() if c}
    out: dict[Partition, int] = {}
    for labels, c in states.items():
        blocks: dict[int, int] = {}
        for i, lab in enumerate(labels):
            blocks[lab] = blocks.get(lab, 0) + weight[i]
        lam = tuple(sorted(blocks.values(), reverse=True))
        out[lam] = out.get(lam, 0) + c
    return SymFn("p", out)


def csf_power_bruteforce(G: MarkedGraph, max_edges: int = 16) -> SymFn:
    """Literal subset enumeration; the test oracle for :func:`csf_power`."""
    if G.has_loops():
        return SymFn("p")
    if G.m > max_edges:
        raise BudgetExceeded(f"{G.m} edges exceeds the subset budget of {max_edges}")
    edges = list(G.edges.values())
    w = _weights(G)
    out: Counter = Counter()
    for r in range(len(edges) + 1):
        for A in itertools.combinations(edges, r):
            uf = _UnionFind(w)
            for a, b in A:
                uf.union(a, b)
            blocks: Counter = Counter()
            for v, wv in w.items():
                blocks[uf.find(v)] += wv
            out[partition(blocks.values())] += (-1) ** r
    return SymFn("p", out)


def chromatic_poly_eval(G: MarkedGraph, k: int) -> int:
    """Number of proper ``k``-colourings, by deletion-contraction on the simplification."""
    if k < 0:
        raise ValueError("colour count must be non-negative")
    if G.has_loops():
        return 0
    edges = frozenset(tuple(sorted(uv)) for uv in G.edges.values())
    return _chi(frozenset(G.vertices), edges, k)


@lru_cache(maxsize=100_000)
def _chi(vertices: frozenset, edges: frozenset, k: int) -> int:
    if not edges:
        return k ** len(vertices)
    e = min(edges)
    rest = edges - {e}
    u, v = e
    contracted = frozenset(tuple(sorted((u if a == v else a, u if b == v else b))) for a, b in rest)
    return _chi(vertices, rest, k) - _chi(vertices - {v}, contracted, k)


def eval_p_principal(f: SymFn, k: int) -> int:
    """Evaluate a ``p``-basis function at ``x_1 = ... = x_k = 1``."""
    if f.basis != "p":
        f = st_to_p(f)
    return sum(c * k ** len(lam) for lam, c in f._terms.items())


def weighted_csf(G: MarkedGraph, nvars: int, max_colourings: int = 2_000_000) -> dict[tuple[int, ...], int]:
    """Truncated monomial expansion of the weighted chromatic symmetric function.

    Sums ``prod_v x_{kappa(v)}^{w(v)}`` over proper colourings with colours
    ``0..nvars-1``; the result maps exponent vectors to coefficients.
    """
    if nvars ** G.n > max_colourings:
        raise BudgetExceeded(f"{nvars}^{G.n} colourings exceeds {max_colourings}")
    if G.has_loops():
        return {}
    verts = G.vertices
    w = [G.mark(v).w for v in verts]
    idx = {v: i for i, v in enumerate(verts)}
    pairs = [(idx[a], idx[b]) for a, b in G.edges.values()]
    out: Counter = Counter()
    for col in itertools.product(range(nvars), repeat=len(verts)):
        if any(col[a] == col[b] for a, b in pairs):
            continue
        expo = [0] * nvars
        for i, c in enumerate(col):
            expo[c] += w[i]
        out[tuple(expo)] += 1
    return {k: c for k, c in out.items() if c}


def p_to_monomials(f: SymFn, nvars: int) -> dict[tuple[int, ...], int]:
    """Expand a ``p``-basis function in ``nvars`` variables."""
    if f.basis != "p":
        f = st_to_p(f)
    out: Counter = Counter()
    for lam, c in f._terms.items():
        acc: Counter = Counter({(0,) * nvars: c})
        for part in lam:
            nxt: Counter = Counter()
            for expo, cc in acc.items():
                for i in range(nvars):
                    e = list(expo)
                    e[i] += part
                    nxt[tuple(e)] += cc
            acc = nxt
        out.update(acc)
    return {k: c for k, c in out.items() if c}
