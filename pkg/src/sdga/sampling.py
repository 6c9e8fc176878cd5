"""Seeded random elements and derivations for property panels.

Every generator here is driven by a caller-supplied random.Random instance,
so panels are reproducible from a single seed.  Coefficients are small
integers (cast to Fraction by the element constructors) to keep the exact
arithmetic fast.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .core import (
    Element,
    GeneratorTable,
    monomial_basis,
    monomials_of_degree_at_most,
)
from .dg import Derivation


def random_scalar(rng: random.Random, span: int = 5) -> Fraction:
    """A nonzero-biased small rational: integer numerator, denominator 1..3."""
    num = rng.randint(-span, span)
    den = rng.randint(1, 3)
    return Fraction(num, den)


def random_element(rng: random.Random, table: GeneratorTable,
                   max_degree: int = 3, terms: int = 4) -> Element:
    """A random, generally inhomogeneous element of degree <= max_degree."""
    pool = monomials_of_degree_at_most(table, max_degree)
    out = Element.zero(table)
    for _ in range(terms):
        exps = rng.choice(pool)
        coeff = random_scalar(rng)
        if coeff:
            out = out + Element.monomial(table, exps, coeff)
    return out


def random_homogeneous(rng: random.Random, table: GeneratorTable,
                       weight: int, parity: int, cap: int = 4,
                       terms: int = 3) -> Element:
    """A random element homogeneous of the given bidegree (possibly zero)."""
    pool = monomial_basis(table, weight, parity, cap)
    out = Element.zero(table)
    if not pool:
        return out
    for _ in range(terms):
        exps = rng.choice(pool)
        coeff = random_scalar(rng)
        if coeff:
            out = out + Element.monomial(table, exps, coeff)
    return out


def random_homogeneous_pair(rng: random.Random, table: GeneratorTable,
                            weight_range: tuple[int, int] = (0, 3),
                            cap: int = 4) -> tuple[Element, Element]:
    """Two random homogeneous elements with independently chosen bidegrees.

    Bidegrees are drawn until both slices are nonempty, so the pair is
    usable for supercommutativity checks without manual filtering.
    """
    for _ in range(50):
        w1 = rng.randint(*weight_range)
        w2 = rng.randint(*weight_range)
        p1 = rng.randint(0, 1)
        p2 = rng.randint(0, 1)
        a = random_homogeneous(rng, table, w1, p1, cap)
        b = random_homogeneous(rng, table, w2, p2, cap)
        if not a.is_zero() and not b.is_zero():
            return a, b
    return Element.one(table), Element.one(table)


def random_derivation(rng: random.Random, table: GeneratorTable,
                      weight_shift: int, parity_shift: int,
                      cap: int = 4, terms: int = 2) -> Derivation:
    """A random derivation of the stated bidegree on a free algebra."""
    images = {}
    for gen in table.generators:
        w = gen.weight + weight_shift
        p = (gen.parity + parity_shift) % 2
        images[gen.name] = random_homogeneous(rng, table, w, p, cap, terms)
    return Derivation(table, images, weight_shift, parity_shift)
