"""Sparse integer polynomials in the indeterminates ``z[w,d]`` and ``y``.

A monomial is a pair ``(zs, k)``: ``zs`` is the multiset of ``z`` indices,
stored as a tuple of ``(w, d)`` pairs sorted in decreasing order with
repetition, and ``k`` is the exponent of ``y``.  Coefficients are Python
integers, so nothing overflows.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Iterator, Mapping

from .graph import Mark

ZKey = tuple  # tuple[tuple[int, int], ...], sorted descending
Monomial = tuple  # (ZKey, int)


def _zkey(pairs: Iterable[tuple[int, int]]) -> ZKey:
    return tuple(sorted(((int(w), int(d)) for w, d in pairs), reverse=True))


def _merge(a: ZKey, b: ZKey) -> ZKey:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


class ZPoly:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: dict[Monomial, int] = {}
        for (zs, k), c in (terms or {}).items():
            if c:
                key = (_zkey(zs), int(k))
                clean[key] = clean.get(key, 0) + int(c)
                if not clean[key]:
                    del clean[key]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, int]) -> ZPoly:
        # trusted constructor: keys already canonical, no zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # -- constructors --------------------------------------------------------------

    @classmethod
    def zero(cls) -> ZPoly:
        return cls._raw({})

    @classmethod
    def const(cls, c: int) -> ZPoly:
        return cls._raw({((), 0): int(c)} if c else {})

    @classmethod
    def z(cls, w: int, d: int = 0, exp: int = 1) -> ZPoly:
        Mark(w, d)
        return cls._raw({(((w, d),) * exp, 0): 1})

    @classmethod
    def y(cls, exp: int = 1) -> ZPoly:
        return cls._raw({((), exp): 1})

    @classmethod
    def monomial(cls, zs: Iterable[tuple[int, int] | Mark], k: int = 0, c: int = 1) -> ZPoly:
        pairs = [(m.w, m.d) if isinstance(m, Mark) else m for m in zs]
        return cls._raw({(_zkey(pairs), k): c} if c else {})

    # -- access ---------------------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def coeff(self, zs: Iterable[tuple[int, int]], k: int = 0) -> int:
        return self._terms.get((_zkey(zs), k), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def abs_coeff_sum(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    def max_y_degree(self) -> int:
        return max((k for _, k in self._terms), default=0)

    def variables(self) -> set[tuple[int, int]]:
        return {v for zs, _ in self._terms for v in zs}

    def homogeneous_part(self, degree: int) -> ZPoly:
        """Terms whose number of ``z`` factors equals ``degree``."""
        return ZPoly._raw({m: c for m, c in self._terms.items() if len(m[0]) == degree})

    # -- arithmetic ------------------------------------------------------------------

    def __add__(self, other: ZPoly | int) -> ZPoly:
        if isinstance(other, int):
            other = ZPoly.const(other)
        if not isinstance(other, ZPoly):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return ZPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> ZPoly:
        return ZPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: ZPoly | int) -> ZPoly:
        if isinstance(other, int):
            other = ZPoly.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> ZPoly:
        return ZPoly.const(other) - self

    def __mul__(self, other: ZPoly | int) -> ZPoly:
        if isinstance(other, int):
            if not other:
                return ZPoly.zero()
            return ZPoly._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, ZPoly):
            return NotImplemented
        out: dict[Monomial, int] = {}
        for (za, ka), ca in self._terms.items():
            for (zb, kb), cb in other._terms.items():
                key = (_merge(za, zb), ka + kb)
                v = out.get(key, 0) + ca * cb
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return ZPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> ZPoly:
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        out, base = ZPoly.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = ZPoly.const(other)
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitutions -----------------------------------------------------------------

    def substitute(self, zmap: Callable[[int, int], ZPoly], ymap: ZPoly | None = None) -> ZPoly:
        """Ring homomorphism sending ``z[w,d]`` to ``zmap(w, d)`` and ``y`` to ``ymap``."""
        cache: dict[tuple[int, int], ZPoly] = {}
        ycache: dict[int, ZPoly] = {}
        acc: dict[Monomial, int] = {}
        for (zs, k), c in self._terms.items():
            if ymap is None:
                term = ZPoly._raw({((), k): c})
            else:
                if k not in ycache:
                    ycache[k] = ymap ** k
                term = ycache[k] * c
            for v, e in Counter(zs).items():
                if v not in cache:
                    cache[v] = zmap(*v)
                term = term * (cache[v] ** e if e > 1 else cache[v])
            for m, cc in term._terms.items():
                acc[m] = acc.get(m, 0) + cc
        return ZPoly._raw({m: c for m, c in acc.items() if c})

    def at_y(self, value: int) -> ZPoly:
        out: dict[Monomial, int] = {}
        for (zs, k), c in self._terms.items():
            key = (zs, 0)
            out[key] = out.get(key, 0) + c * value ** k
        return ZPoly._raw({m: c for m, c in out.items() if c})

    # -- text -----------------------------------------------------------------------

    def sort_key(self, m: Monomial):
        zs, k = m
        return (-len(zs), tuple((-w, -d) for w, d in zs), -k)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items(), key=lambda t: self.sort_key(t[0]))

    def __str__(self) -> str:
        return format_zpoly(self)

    def __repr__(self) -> str:
        return f"ZPoly({format_zpoly(self)!r})"

    def to_json(self) -> str:
        return json.dumps(
            {"terms": [{"coeff": c, "y": k, "z": [[w, d, e] for (w, d), e in _runs(zs)]}
                       for (zs, k), c in self.sorted_terms()]},
            separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> ZPoly:
        data = json.loads(text)
        terms: dict[Monomial, int] = {}
        for t in data["terms"]:
            zs = []
            for w, d, e in t["z"]:
                Mark(w, d)
                zs.extend([(w, d)] * e)
            key = (_zkey(zs), int(t.get("y", 0)))
            terms[key] = terms.get(key, 0) + int(t["coeff"])
        return cls(terms)


def _runs(zs: ZKey) -> list[tuple[tuple[int, int], int]]:
    out: list[list] = []
    for v in zs:
        if out and out[-1][0] == v:
            out[-1][1] += 1
        else:
            out.append([v, 1])
    return [(v, e) for v, e in out]


def _format_monomial(zs: ZKey, k: int) -> list[str]:
    parts = []
    if k:
        parts.append("y" if k == 1 else f"y^{k}")
    for (w, d), e in _runs(zs):
        s = f"z[{w}]" if d == 0 else f"z[{w},{d}]"
        parts.append(s if e == 1 else f"{s}^{e}")
    return parts


def format_zpoly(p: ZPoly) -> str:
    """Canonical text: ``c*y^k*z[w,d]^e*...`` terms, highest z-degree first."""
    if p.is_zero():
        return "0"
    chunks = []
    for i, ((zs, k), c) in enumerate(p.sorted_terms()):
        body = "*".join([str(abs(c))] + _format_monomial(zs, k))
        if i == 0:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(("+ " if c > 0 else "- ") + body)
    return " ".join(chunks)


_FACTOR_RE = re.compile(r"^(?:(\d+)|y(?:\^(\d+))?|z\[(\d+)(?:,(\d+))?\](?:\^(\d+))?)$")


def parse_zpoly(text: str) -> ZPoly:
    """Inverse of :func:`format_zpoly`; also tolerates missing coefficients."""
    text = text.strip()
    if text in ("", "0"):
        return ZPoly.zero()
    terms: dict[Monomial, int] = {}
    # indices are non-negative, so every +/- is a term separator
    tokens = re.findall(r"[+-]?[^+-]+", text.replace(" ", ""))
    for tok in tokens:
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        if not tok:
            raise ValueError(f"malformed polynomial {text!r}")
        coeff, zs, k = 1, [], 0
        for f in tok.split("*"):
            m = _FACTOR_RE.match(f)
            if not m:
                raise ValueError(f"cannot parse factor {f!r}")
            num, yexp, w, d, e = m.groups()
            if num is not None:
                coeff *= int(num)
            elif w is None:
                k += int(yexp) if yexp else 1
            else:
                w, d = int(w), int(d or 0)
                Mark(w, d)
                zs.extend([(w, d)] * (int(e) if e else 1))
        key = (_zkey(zs), k)
        terms[key] = terms.get(key, 0) + sign * coeff
    return ZPoly(terms)


# -- undotting ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def d_bullet(w: int, d: int) -> ZPoly:
    """``sum_i (-1)^i C(d, i) z[w-i] z[1]^i``, the image of ``z[w,d]`` under undotting."""
    Mark(w, d)
    return ZPoly._raw({(_zkey([(w - i, 0)] + [(1, 0)] * i), 0): (-1) ** i * comb(d, i)
                       for i in range(d + 1)})


def undot(f: ZPoly, bullet: Callable[[int, int], ZPoly] = d_bullet) -> ZPoly:
    """Replace every ``z[w,d]`` by ``bullet(w, d)``."""
    return f.substitute(bullet)


def forget_dots(f: ZPoly) -> ZPoly:
    out: dict[Monomial, int] = {}
    for (zs, k), c in f.items():
        key = (tuple((w, 0) for w, _ in zs), k)
        out[key] = out.get(key, 0) + c
    return ZPoly({m: c for m, c in out.items() if c})


def subst_star(f: ZPoly):
    """Drop ``y``-terms and send ``z[w1]...z[wk]`` to ``st[w1,...,wk]``."""
    from .symfunc import SymFn

    out: dict[tuple[int, ...], int] = {}
    for (zs, k), c in f.items():
        if k:
            continue
        if any(d for _, d in zs):
            raise ValueError("subst_star needs an undotted polynomial")
        lam = tuple(w for w, _ in zs)
        out[lam] = out.get(lam, 0) + c
    return SymFn("st", out)


def undot_nonuniqueness_demo() -> tuple[ZPoly, ZPoly]:
    """Two distinct polynomials with the same undotting."""
    f = ZPoly.monomial([(4, 1), (5, 2)]) + ZPoly.monomial([(4, 2), (5, 2)])
    g = ZPoly.monomial([(4, 1), (5, 3)]) + ZPoly.monomial([(4, 2), (5, 1)])
    return f, g
