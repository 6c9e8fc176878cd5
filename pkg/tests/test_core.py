"""Core algebra: canonical monomials, sign rule, partials, parsing."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from sdga.core import (
    AlgebraError,
    AlgebraMap,
    Element,
    Generator,
    GeneratorTable,
    ParseError,
    compose_maps,
    identity_map,
    monomial_basis,
    monomials_of_degree_at_most,
    parse,
    partial,
    render,
    weight_degree_bound,
)
from sdga import sampling


@pytest.fixture
def table():
    return GeneratorTable([
        Generator("x", 0, 0),
        Generator("y", 0, 0),
        Generator("xi", 1, 1),
        Generator("eta", 1, 1),
    ])


def test_duplicate_names_rejected():
    with pytest.raises(AlgebraError):
        GeneratorTable([Generator("x", 0, 0), Generator("x", 1, 1)])


def test_reserved_d_prefix_rejected():
    with pytest.raises(AlgebraError):
        GeneratorTable([Generator("x", 0, 0), Generator("dx", 1, 1)])


def test_even_mode_requires_matching_parity():
    GeneratorTable([Generator("a", 2, 0)], even_mode=True)
    with pytest.raises(AlgebraError):
        GeneratorTable([Generator("a", 2, 1)], even_mode=True)


def test_odd_generator_squares_to_zero(table):
    xi = Element.generator(table, "xi")
    assert (xi * xi).is_zero()


def test_koszul_sign_on_odd_pair(table):
    xi = Element.generator(table, "xi")
    eta = Element.generator(table, "eta")
    assert xi * eta == -(eta * xi)


def test_even_generators_commute(table):
    x = Element.generator(table, "x")
    y = Element.generator(table, "y")
    assert x * y == y * x


@pytest.mark.parametrize("seed", range(20))
def test_supercommutativity_on_random_homogeneous_pairs(table, seed):
    rng = random.Random(seed)
    a, b = sampling.random_homogeneous_pair(rng, table)
    sign = -1 if (a.parity() and b.parity()) else 1
    assert a * b == (b * a) * sign


@pytest.mark.parametrize("seed", range(20))
def test_associativity_on_random_triples(table, seed):
    rng = random.Random(1000 + seed)
    a = sampling.random_element(rng, table)
    b = sampling.random_element(rng, table)
    c = sampling.random_element(rng, table)
    assert (a * b) * c == a * (b * c)


def test_partial_is_a_left_derivative(table):
    xi = Element.generator(table, "xi")
    eta = Element.generator(table, "eta")
    # d/d(eta) of xi*eta picks up the sign of moving past xi
    assert partial(xi * eta, "eta") == -xi
    assert partial(xi * eta, "xi") == eta


@pytest.mark.parametrize("seed", range(20))
def test_signed_clairaut_property(table, seed):
    """Mixed partials commute up to the sign of the two generators."""
    rng = random.Random(2000 + seed)
    a = sampling.random_element(rng, table, max_degree=4, terms=5)
    gens = ["x", "y", "xi", "eta"]
    g = rng.choice(gens)
    h = rng.choice(gens)
    pg = table.generators[table.position(g)].parity
    ph = table.generators[table.position(h)].parity
    sign = -1 if (pg and ph) else 1
    assert partial(partial(a, h), g) == partial(partial(a, g), h) * sign


def test_homogeneous_components_partition(table):
    rng = random.Random(7)
    a = sampling.random_element(rng, table, max_degree=3, terms=6)
    total = Element.zero(table)
    for (w, p), part in a.homogeneous_components().items():
        assert part.bidegree() == (w, p)
        total = total + part
    assert total == a


@pytest.mark.parametrize("seed", range(25))
def test_parse_render_round_trip(table, seed):
    rng = random.Random(3000 + seed)
    a = sampling.random_element(rng, table, max_degree=4, terms=5)
    assert parse(table, render(a)) == a


def test_parse_rejects_unknown_names(table):
    with pytest.raises(ParseError):
        parse(table, "x + z")


def test_parse_rejects_garbage(table):
    with pytest.raises(ParseError):
        parse(table, "x + * y")


def test_render_of_zero(table):
    assert render(Element.zero(table)) == "0"
    assert parse(table, "0").is_zero()


def test_parser_handles_rational_coefficients(table):
    a = parse(table, "3/2 * x^2 - 1/3 * y + 5")
    x = Element.generator(table, "x")
    y = Element.generator(table, "y")
    expected = x * x * Fraction(3, 2) - y * Fraction(1, 3) + 5
    assert a == expected


def test_monomial_basis_respects_bidegree(table):
    basis = monomial_basis(table, 1, 1, 3)
    for exps in basis:
        assert table.monomial_weight(exps) == 1
        assert table.monomial_parity(exps) == 1
    # xi, eta, and nothing else of weight 1 below the cap needs odd parity
    assert len(basis) == len([m for m in monomials_of_degree_at_most(table, 3)
                              if table.monomial_weight(m) == 1
                              and table.monomial_parity(m) == 1])


def test_weight_degree_bound_finite_for_positive_weights():
    tab = GeneratorTable([Generator("u", 2, 0), Generator("v", 3, 1)])
    bound = weight_degree_bound(tab, 6)
    assert bound is not None
    # u^3 realizes weight 6 with degree 3; nothing of higher degree fits
    assert bound == 3


def test_weight_degree_bound_none_with_weight_zero_generator(table):
    assert weight_degree_bound(table, 1) is None


def test_algebra_map_checks_bidegrees(table):
    target = GeneratorTable([Generator("u", 0, 0), Generator("th", 1, 1)])
    AlgebraMap(table, target, {
        "x": Element.generator(target, "u"),
        "y": Element.generator(target, "u") * 2,
        "xi": Element.generator(target, "th"),
        "eta": Element.zero(target),
    })
    with pytest.raises(AlgebraError):
        AlgebraMap(table, target, {
            "x": Element.generator(target, "th"),
            "y": Element.zero(target),
            "xi": Element.zero(target),
            "eta": Element.zero(target),
        })


@pytest.mark.parametrize("seed", range(10))
def test_algebra_maps_are_multiplicative(table, seed):
    rng = random.Random(4000 + seed)
    target = GeneratorTable([Generator("u", 0, 0), Generator("th", 1, 1)])
    u = Element.generator(target, "u")
    th = Element.generator(target, "th")
    f = AlgebraMap(table, target, {
        "x": u, "y": u * u, "xi": th, "eta": th * Fraction(1, 2),
    })
    a = sampling.random_element(rng, table)
    b = sampling.random_element(rng, table)
    assert f(a * b) == f(a) * f(b)
    assert f(a + b) == f(a) + f(b)


def test_identity_and_composition(table):
    ident = identity_map(table)
    rng = random.Random(9)
    a = sampling.random_element(rng, table)
    assert ident(a) == a
    assert compose_maps(ident, ident)(a) == a
