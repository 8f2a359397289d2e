import json

import pytest

from planaralg.algebra import (
    AlgebraElement, check_relations, cup_diagram, double, include, intermediate_p, jones_e,
    random_element, stack,
)
from planaralg.diagrams import FCDiagram, TLDiagram, enumerate_basis, identity_diagram
from planaralg.scalars import A, B, DELTA, ONE, monomial

FAMILIES = ["TL", "FC"]

E2 = AlgebraElement.basis(TLDiagram(2, (1, 0, 3, 2)))
P2 = AlgebraElement.basis(FCDiagram(2, (7, 2, 1, 4, 3, 6, 5, 0)))


def test_stack_examples():
    assert E2 * E2 == DELTA * E2
    assert P2 * P2 == B * P2


@pytest.mark.parametrize("family", FAMILIES)
def test_identity_is_unit(family, rng):
    for _ in range(20):
        n = rng.randint(0, 4)
        x = random_element(family, n, rng)
        one = AlgebraElement.identity(family, n)
        assert one * x == x == x * one


def test_multiply_level_mismatch():
    with pytest.raises(ValueError):
        AlgebraElement.identity("TL", 2) * AlgebraElement.identity("TL", 3)
    with pytest.raises(ValueError):
        AlgebraElement.identity("TL", 2) * AlgebraElement.identity("FC", 2)


@pytest.mark.parametrize("family", FAMILIES)
def test_associativity(family, rng):
    for _ in range(200):
        n = rng.randint(1, 4)
        x, y, z = (random_element(family, n, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)


@pytest.mark.parametrize("family", FAMILIES)
def test_star_antimultiplicative(family, rng):
    for _ in range(100):
        n = rng.randint(1, 4)
        x, y = random_element(family, n, rng), random_element(family, n, rng)
        assert (x * y).star() == y.star() * x.star()
        assert x.star().star() == x


@pytest.mark.parametrize("family", FAMILIES)
def test_structure_constants_are_monomials(family):
    for n in range(0, 4):
        basis = enumerate_basis(family, n)
        for d1 in basis:
            for d2 in basis:
                prod = AlgebraElement.basis(d1) * AlgebraElement.basis(d2)
                (d, c), = prod.items()
                assert c.is_monomial() and c == monomial(*next(iter(c.terms)))
                assert set(c.terms.values()) == {1}


def test_include_examples():
    for fam in FAMILIES:
        assert include(AlgebraElement.identity(fam, 2)) == AlgebraElement.identity(fam, 3)
    assert include(jones_e(1, 2)) == jones_e(1, 3)
    assert include(jones_e(1, 2, "FC")) == jones_e(1, 3, "FC")
    assert include(intermediate_p(1, 2)) == intermediate_p(1, 3)


@pytest.mark.parametrize("family", FAMILIES)
def test_include_is_homomorphism(family, rng):
    for _ in range(50):
        n = rng.randint(1, 4)
        x, y = random_element(family, n, rng), random_element(family, n, rng)
        assert include(x * y) == include(x) * include(y)


def test_include_is_injective_on_basis():
    for fam in FAMILIES:
        basis = enumerate_basis(fam, 3)
        images = {next(iter(include(AlgebraElement.basis(d)).terms)) for d in basis}
        assert len(images) == len(basis)


def test_double_examples():
    assert double(AlgebraElement.identity("TL", 3)) == AlgebraElement.identity("FC", 3)
    E = AlgebraElement.basis(cup_diagram("TL", 2, 0))
    # a-cup (0,3) over b-cup (1,2) on top, mirrored on the bottom
    expected = AlgebraElement.basis(FCDiagram(2, (3, 2, 1, 0, 7, 6, 5, 4)))
    assert double(E) == expected
    assert double(E * E) == double(E) * double(E) == DELTA * expected


def test_double_is_homomorphism(rng):
    for _ in range(100):
        n = rng.randint(1, 4)
        x, y = random_element("TL", n, rng), random_element("TL", n, rng)
        assert double(x * y) == double(x) * double(y)
        assert double(x).star() == double(x.star())


def test_double_rejects_fc():
    with pytest.raises(ValueError):
        double(AlgebraElement.identity("FC", 2))


def test_jones_examples():
    e1 = jones_e(1, 2)
    assert e1 * e1 == e1
    e1, e2 = jones_e(1, 3), jones_e(2, 3)
    assert e1 * e2 * e1 == DELTA ** -2 * e1
    e1, e3 = jones_e(1, 4), jones_e(3, 4)
    assert e1 * e3 == e3 * e1


@pytest.mark.parametrize("i, n", [(0, 3), (3, 3), (1, 1)])
def test_generator_index_range(i, n):
    with pytest.raises(ValueError):
        jones_e(i, n)
    with pytest.raises(ValueError):
        intermediate_p(i, n)


def test_intermediate_examples():
    p1 = intermediate_p(1, 2)
    assert p1 == B ** -1 * P2
    assert p1 * p1 == p1
    e1 = jones_e(1, 2, "FC")
    assert p1 * e1 == e1 and e1 * p1 == e1


def test_p_colour_alternation():
    # even index cups the a-points between cables 2 and 3
    p2 = intermediate_p(2, 3)
    (d, c), = p2.items()
    assert c == A ** -1
    assert d.pairing[3] == 4 and d.color(3) == "a"


@pytest.mark.parametrize("family, n", [("TL", 2), ("TL", 4), ("TL", 6), ("FC", 2), ("FC", 4), ("FC", 5)])
def test_relations_pass(family, n):
    rep = check_relations(n, family)
    assert rep.passed, list(rep.lines())


def test_relations_negative_control():
    e = [jones_e(i, 4) for i in range(1, 4)]
    e[0] = e[0].scale(2)
    rep = check_relations(4, "TL", e=e)
    assert not rep.passed
    fail = {c.name: c for c in rep.failures()}
    assert "e1^2 = e1" in fail
    assert fail["e1^2 = e1"].witness == e[0] * e[0] - e[0]


def test_json_round_trip(rng):
    for fam in FAMILIES:
        x = random_element(fam, 3, rng)
        assert AlgebraElement.from_json(json.loads(json.dumps(x.to_json()))) == x


def test_element_rejects_foreign_diagram():
    with pytest.raises(ValueError):
        AlgebraElement("TL", 3, {identity_diagram(2): ONE})
