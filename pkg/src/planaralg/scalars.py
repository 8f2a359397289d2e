"""Exact Laurent polynomials in the two loop parameters ``a`` and ``b``.

A :class:`ParamScalar` is a sparse map ``(i, j) -> c`` standing for
``sum c * a**i * b**j`` with rational ``c``.  The Temperley-Lieb loop value
is the monomial ``ab`` (see :data:`DELTA`).
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["ParamScalar", "ZERO", "ONE", "A", "B", "DELTA", "monomial", "parse_scalar"]


class ParamScalar:
    """Immutable Laurent polynomial in ``a`` and ``b`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (i, j), c in terms.items():
                c = Fraction(c)
                if c:
                    clean[(int(i), int(j))] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def promote(cls, x) -> "ParamScalar":
        if isinstance(x, ParamScalar):
            return x
        if isinstance(x, (int, Rational)):
            return cls({(0, 0): x})
        raise TypeError(f"cannot convert {type(x).__name__} to ParamScalar")

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        try:
            other = self.promote(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other):
        try:
            other = self.promote(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return ParamScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self.promote(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self.promote(other) - self

    def __mul__(self, other):
        try:
            other = self.promote(other)
        except TypeError:
            return NotImplemented
        out = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return ParamScalar(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("exponent must be an integer")
        if e < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            ((i, j), c), = self._terms.items()
            k = -e
            return ParamScalar({(-i * k, -j * k): 1 / c ** k})
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def evaluate(self, a_val: float, b_val: float) -> float:
        return scalar_eval(self, a_val, b_val)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"ParamScalar({format_scalar(self)!r})"


def monomial(i: int = 0, j: int = 0, c=1) -> ParamScalar:
    """``c * a**i * b**j``."""
    return ParamScalar({(i, j): c})


ZERO = ParamScalar()
ONE = monomial(0, 0)
A = monomial(1, 0)
B = monomial(0, 1)
DELTA = monomial(1, 1)


def scalar_add(x: ParamScalar, y: ParamScalar) -> ParamScalar:
    return x + y


def scalar_mul(x: ParamScalar, y: ParamScalar) -> ParamScalar:
    return x * y


def scalar_eval(x: ParamScalar, a_val: float, b_val: float) -> float:
    """Evaluate at a positive point, summing terms in sorted exponent order."""
    if not (a_val > 0 and b_val > 0):
        raise ValueError(f"evaluation point must be positive, got a={a_val}, b={b_val}")
    a_val, b_val = float(a_val), float(b_val)
    total = 0.0
    for (i, j), c in x.items():
        total += float(c) * a_val ** i * b_val ** j
    return total


# ---- text form ---------------------------------------------------------

def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_scalar(x: ParamScalar) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for n, ((i, j), c) in enumerate(x.items()):
        sign = "-" if c < 0 else "+"
        body = f"{_fmt_coeff(abs(c))}*a^{i}*b^{j}"
        if n == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_FACTOR = re.compile(r"(\d+(?:/\d+)?)|([ab])(?:\^([+-]?\d+))?")


def _parse_term(text: str) -> ParamScalar:
    coeff = Fraction(1)
    i = j = 0
    for factor in text.split("*"):
        if not factor:
            raise ValueError(f"empty factor in term {text!r}")
        m = _FACTOR.fullmatch(factor)
        if m is None:
            raise ValueError(f"cannot parse factor {factor!r}")
        if m.group(1) is not None:
            coeff *= Fraction(m.group(1))
        else:
            e = int(m.group(3)) if m.group(3) is not None else 1
            if m.group(2) == "a":
                i += e
            else:
                j += e
    return monomial(i, j, coeff)


def parse_scalar(text: str) -> ParamScalar:
    """Parse the textual form, e.g. ``"2*a^1*b^0 - 1/3*a^-1*b^2"``.

    Whitespace is ignored; bare variables (``a``, ``b^-1``) and bare
    numbers are accepted as terms.
    """
    s = "".join(text.split())
    if not s:
        raise ValueError("empty scalar text")
    # split on +/- signs that do not follow '^'
    pieces = re.split(r"(?<!\^)(?=[+-])", s)
    total = ZERO
    for piece in pieces:
        if not piece:
            continue
        sign = 1
        while piece and piece[0] in "+-":
            if piece[0] == "-":
                sign = -sign
            piece = piece[1:]
        if not piece:
            raise ValueError(f"dangling sign in {text!r}")
        total = total + sign * _parse_term(piece)
    return total
