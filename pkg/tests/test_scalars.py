import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planaralg.scalars import A, B, DELTA, ONE, ZERO, ParamScalar, monomial, parse_scalar, scalar_eval


def rand_scalar(rng, max_terms=4, lo=-4, hi=4):
    s = ZERO
    for _ in range(rng.randint(0, max_terms)):
        s = s + monomial(rng.randint(lo, hi), rng.randint(lo, hi),
                         Fraction(rng.randint(-9, 9), rng.randint(1, 7)))
    return s


scalars = st.dictionaries(
    st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
    st.fractions(min_value=-10, max_value=10, max_denominator=12),
    max_size=4,
).map(ParamScalar)


def test_add_examples():
    assert (A + B) + (A - B) == 2 * A
    x = A * B ** -1 + 3
    assert x + ZERO == x
    ainv_b = monomial(-1, 1)
    assert ainv_b + ainv_b == monomial(-1, 1, 2)


def test_mul_examples():
    assert A * B == monomial(1, 1)
    assert DELTA ** -1 * DELTA == ONE
    assert (A + B) * (A - B) == A ** 2 - B ** 2


def test_eval_examples():
    assert scalar_eval(A * B, 2, 3) == 6
    assert scalar_eval(A ** -1, 2, 1) == 0.5
    assert scalar_eval(A ** 2 - B ** 2, 3, 2) == 5


@pytest.mark.parametrize("a, b", [(0, 1), (1, 0), (-1, 2), (2, -0.5)])
def test_eval_rejects_nonpositive(a, b):
    with pytest.raises(ValueError):
        scalar_eval(A + B, a, b)


def test_normal_form_drops_zero_terms():
    x = ParamScalar({(1, 0): 0, (0, 2): Fraction(3, 2)})
    assert x.terms == {(0, 2): Fraction(3, 2)}
    assert (A - A).is_zero() and (A - A) == 0


def test_ring_axioms_random_triples():
    rng = random.Random(1)
    for _ in range(1000):
        x, y, z = (rand_scalar(rng) for _ in range(3))
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z


@settings(max_examples=200, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_axioms_property(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == ZERO


def test_eval_is_homomorphism():
    rng = random.Random(2)
    for _ in range(500):
        x, y = rand_scalar(rng), rand_scalar(rng)
        a, b = rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0)
        lhs = scalar_eval(x * y, a, b)
        rhs = scalar_eval(x, a, b) * scalar_eval(y, a, b)
        scale = sum(abs(float(c)) * a ** i * b ** j for (i, j), c in (x * y).items()) or 1.0
        scale = max(scale, abs(scalar_eval(x, a, b)) * abs(scalar_eval(y, a, b)), 1e-300)
        assert math.isclose(lhs, rhs, rel_tol=1e-12, abs_tol=1e-12 * scale)


@pytest.mark.parametrize("text, expected", [
    ("2*a^1*b^0", 2 * A),
    ("  1/2 * a ^ -1 * b ^ 2 ", monomial(-1, 2, Fraction(1, 2))),
    ("a*b - 3", DELTA - 3),
    ("-a^2+b^-1", -A ** 2 + B ** -1),
    ("0", ZERO),
    ("4/6", ParamScalar({(0, 0): Fraction(2, 3)})),
])
def test_parse(text, expected):
    assert parse_scalar(text) == expected


@pytest.mark.parametrize("bad", ["", "2**a", "c*a", "a^", "+"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


@settings(max_examples=200, deadline=None)
@given(scalars)
def test_text_round_trip(x):
    assert parse_scalar(str(x)) == x


def test_text_form():
    assert str(ZERO) == "0"
    assert str(monomial(-1, 2, Fraction(-1, 2)) + 3) == "-1/2*a^-1*b^2 + 3*a^0*b^0"


def test_negative_power_needs_monomial():
    with pytest.raises(ValueError):
        (A + B) ** -1
