"""The diagram algebras TL_n(ab) and FC_n(a, b).

Elements are finite linear combinations of basis diagrams with
:class:`~planaralg.scalars.ParamScalar` coefficients.  Products stack the
first diagram on top of the second and replace every closed loop by its
colour parameter (a TL loop counts as ``ab``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .diagrams import (
    Diagram, diagram_class, diagram_from_json, enumerate_basis,
    identity_diagram, involute, point_color,
)
from .scalars import DELTA, ONE, ZERO, ParamScalar, monomial, parse_scalar

__all__ = [
    "AlgebraElement", "multiply", "include", "double", "jones_e",
    "intermediate_p", "check_relations", "RelationReport", "random_element",
    "cup_diagram", "stack",
]


class AlgebraElement:
    """Immutable linear combination of basis diagrams at a fixed level."""

    __slots__ = ("family", "n", "_terms")

    def __init__(self, family: str, n: int, terms=None):
        self.family = family.upper()
        self.n = int(n)
        cls = diagram_class(self.family)
        clean = {}
        for d, c in (terms or {}).items():
            if not isinstance(d, cls) or d.n != self.n:
                raise ValueError(f"diagram {d} does not belong to {self.family} level {self.n}")
            c = ParamScalar.promote(c)
            if c:
                clean[d] = c
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def basis(cls, d: Diagram, coeff=ONE) -> "AlgebraElement":
        return cls(d.family, d.n, {d: coeff})

    @classmethod
    def identity(cls, family: str, n: int) -> "AlgebraElement":
        return cls.basis(identity_diagram(n, family))

    @classmethod
    def zero(cls, family: str, n: int) -> "AlgebraElement":
        return cls(family, n)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, d: Diagram) -> ParamScalar:
        return self._terms.get(d, ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected AlgebraElement, got {type(other).__name__}")
        if (self.family, self.n) != (other.family, other.n):
            raise ValueError(
                f"mismatch: {self.family} level {self.n} vs {other.family} level {other.n}")

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.family, self.n, self._terms) == (other.family, other.n, other._terms)

    __hash__ = None

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for d, c in other._terms.items():
            out[d] = out.get(d, ZERO) + c
        return AlgebraElement(self.family, self.n, out)

    def __neg__(self):
        return AlgebraElement(self.family, self.n, {d: -c for d, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "AlgebraElement":
        s = ParamScalar.promote(s)
        return AlgebraElement(self.family, self.n, {d: s * c for d, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def star(self) -> "AlgebraElement":
        """Involution: reflect every diagram; coefficients are real so unchanged."""
        return AlgebraElement(self.family, self.n, {involute(d): c for d, c in self._terms.items()})

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "terms": [{"diagram": d.to_json(), "coeff": str(c)} for d, c in self._terms.items()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AlgebraElement":
        family, n = obj["family"].upper(), int(obj["n"])
        terms = {}
        for t in obj["terms"]:
            d = diagram_from_json(t["diagram"])
            terms[d] = terms.get(d, ZERO) + parse_scalar(str(t["coeff"]))
        return cls(family, n, terms)

    def __repr__(self):
        if not self._terms:
            return f"<{self.family}{self.n}: 0>"
        body = " + ".join(f"({c}){d.pairing}" for d, c in self._terms.items())
        return f"<{self.family}{self.n}: {body}>"


# ---- multiplication ----------------------------------------------------

@lru_cache(maxsize=None)
def stack(d1: Diagram, d2: Diagram):
    """Put ``d1`` on top of ``d2``.  Returns ``(diagram, la, lb)`` where
    ``la``/``lb`` are the removed a-/b-loops (TL loops count in both)."""
    m = d1.row
    M = 2 * m
    p1, p2 = d1.pairing, d2.pairing
    out = [-1] * M
    middle = [False] * m
    for r in range(M):
        if out[r] >= 0:
            continue
        upper = r < m
        pos = r
        while True:
            if upper:
                q = p1[pos]
                if q < m:
                    end = q
                    break
                t = M - 1 - q
                middle[t] = True
                upper, pos = False, t
            else:
                q = p2[pos]
                if q >= m:
                    end = q
                    break
                middle[q] = True
                upper, pos = True, M - 1 - q
        out[r] = end
        out[end] = r

    la = lb = 0
    tl = d1.family == "TL"
    for t0 in range(m):
        if middle[t0]:
            continue
        t = t0
        while True:
            middle[t] = True
            t = p2[t]               # across the lower diagram
            middle[t] = True
            t = M - 1 - p1[M - 1 - t]  # back across the upper diagram
            if t == t0:
                break
        if tl:
            la += 1
            lb += 1
        elif point_color(t0) == "a":
            la += 1
        else:
            lb += 1
    return type(d1)(d1.n, tuple(out)), la, lb


def _loop_scalar(family: str, la: int, lb: int) -> ParamScalar:
    if family == "TL":
        return DELTA ** la
    return monomial(la, lb)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    out = {}
    for d1, c1 in x.items():
        for d2, c2 in y.items():
            d, la, lb = stack(d1, d2)
            c = c1 * c2 * _loop_scalar(x.family, la, lb)
            out[d] = out.get(d, ZERO) + c
    return AlgebraElement(x.family, x.n, out)


# ---- inclusions and doubling --------------------------------------------

def _include_diagram(d: Diagram) -> Diagram:
    w = d.width
    m = d.row
    M = 2 * m
    shift = lambda p: p if p < m else p + 2 * w
    pr = [0] * (M + 2 * w)
    for p in range(M):
        pr[shift(p)] = shift(d.pairing[p])
    for s in range(w):
        top = m + s
        bot = M + 2 * w - 1 - top
        pr[top], pr[bot] = bot, top
    return type(d)(d.n + 1, tuple(pr))


def include(x: AlgebraElement) -> AlgebraElement:
    """Add one through strand (TL) or one 2-cable (FC) on the right."""
    return AlgebraElement(x.family, x.n + 1, {_include_diagram(d): c for d, c in x.items()})


def _double_diagram(d: Diagram) -> Diagram:
    pr = d.pairing
    out = [0] * (2 * len(pr))
    for p, q in enumerate(pr):
        if p < q:
            out[2 * p], out[2 * q + 1] = 2 * q + 1, 2 * p
            out[2 * p + 1], out[2 * q] = 2 * q, 2 * p + 1
    return diagram_class("FC")(d.n, tuple(out))


def double(x: AlgebraElement) -> AlgebraElement:
    """Cable every TL strand into an (a, b) pair: TL_n(ab) -> FC_n(a, b)."""
    if x.family != "TL":
        raise ValueError("double expects a TL element")
    return AlgebraElement("FC", x.n, {_double_diagram(d): c for d, c in x.items()})


# ---- generators ---------------------------------------------------------

def cup_diagram(family: str, n: int, left: int) -> Diagram:
    """Diagram cupping row points ``left, left+1`` on top and on bottom,
    all other points through."""
    cls = diagram_class(family)
    m = cls.width * n
    M = 2 * m
    if not 0 <= left < m - 1:
        raise ValueError(f"cup at {left} out of range for {family} level {n}")
    pr = [0] * M
    for t in range(m):
        pr[t], pr[M - 1 - t] = M - 1 - t, t
    pr[left], pr[left + 1] = left + 1, left
    lo, hi = M - 2 - left, M - 1 - left
    pr[lo], pr[hi] = hi, lo
    return cls(n, tuple(pr))


def jones_e(i: int, n: int, family: str = "TL") -> AlgebraElement:
    """Jones projection ``e_i = (ab)^-1 E_i`` (1-based strand index)."""
    family = family.upper()
    if not 1 <= i <= n - 1:
        raise ValueError(f"e_{i} needs 1 <= i <= n-1 (n={n})")
    e = AlgebraElement.basis(cup_diagram("TL", n, i - 1), DELTA ** -1)
    if family == "TL":
        return e
    if family == "FC":
        return double(e)
    raise ValueError(f"unknown family {family!r}")


def intermediate_p(i: int, n: int) -> AlgebraElement:
    """Projection onto the intermediate subfactor: a single-colour cup-cap
    between cables ``i`` and ``i+1``; b-cups for odd ``i``, a-cups for even."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"p_{i} needs 1 <= i <= n-1 (n={n})")
    left = 2 * i - 1
    d = cup_diagram("FC", n, left)
    s = monomial(0, -1) if point_color(left) == "b" else monomial(-1, 0)
    return AlgebraElement.basis(d, s)


# ---- relations ----------------------------------------------------------

@dataclass
class RelationCheck:
    name: str
    passed: bool
    witness: object = None


@dataclass
class RelationReport:
    family: str
    n: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def add(self, name, lhs, rhs):
        ok = lhs == rhs
        self.checks.append(RelationCheck(name, ok, None if ok else lhs - rhs))

    def lines(self):
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            extra = "" if c.passed else f"  witness: {c.witness!r}"
            yield f"{tag} {c.name}{extra}"


def check_relations(n: int, family: str = "TL", e=None, p=None) -> RelationReport:
    """Exact check of the TL relations among the ``e_i`` and, for FC, the
    relations involving the ``p_i``.

    ``e`` and ``p`` optionally override the generator lists (index 0 holds
    ``e_1``), which is how a corrupted generator is fed in.
    """
    family = family.upper()
    if n < 2:
        raise ValueError("relations need n >= 2")
    e = list(e) if e is not None else [jones_e(i, n, family) for i in range(1, n)]
    rep = RelationReport(family, n)
    k = n - 1
    scal = DELTA ** -2
    for i in range(k):
        rep.add(f"e{i+1}^2 = e{i+1}", e[i] * e[i], e[i])
        rep.add(f"e{i+1}* = e{i+1}", e[i].star(), e[i])
        for j in (i - 1, i + 1):
            if 0 <= j < k:
                rep.add(f"e{i+1} e{j+1} e{i+1} = (ab)^-2 e{i+1}", e[i] * e[j] * e[i], scal * e[i])
        for j in range(i + 2, k):
            rep.add(f"e{i+1} e{j+1} = e{j+1} e{i+1}", e[i] * e[j], e[j] * e[i])
    if family == "FC":
        p = list(p) if p is not None else [intermediate_p(i, n) for i in range(1, n)]
        for i in range(k):
            rep.add(f"p{i+1}^2 = p{i+1}", p[i] * p[i], p[i])
            rep.add(f"p{i+1}* = p{i+1}", p[i].star(), p[i])
            rep.add(f"p{i+1} e{i+1} = e{i+1}", p[i] * e[i], e[i])
            rep.add(f"e{i+1} p{i+1} = e{i+1}", e[i] * p[i], e[i])
            for j in range(i + 1, k):
                rep.add(f"p{i+1} p{j+1} = p{j+1} p{i+1}", p[i] * p[j], p[j] * p[i])
            for j in range(k):
                if abs(i - j) >= 2:
                    rep.add(f"p{i+1} e{j+1} = e{j+1} p{i+1}", p[i] * e[j], e[j] * p[i])
    return rep


# ---- random elements ------------------------------------------------------

def random_scalar(rng: random.Random, max_terms: int = 2, max_exp: int = 2) -> ParamScalar:
    s = ZERO
    for _ in range(rng.randint(1, max_terms)):
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        s = s + monomial(rng.randint(-max_exp, max_exp), rng.randint(-max_exp, max_exp), c)
    return s


def random_element(family: str, n: int, rng: random.Random, max_terms: int = 3) -> AlgebraElement:
    basis = enumerate_basis(family, n)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.choice(basis)
        terms[d] = terms.get(d, ZERO) + random_scalar(rng)
    return AlgebraElement(family, n, terms)
