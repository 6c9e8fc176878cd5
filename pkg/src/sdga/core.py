"""Supercommutative polynomial algebras over Q with an exact Koszul sign calculus.

Generators carry a bidegree (weight in Z, parity in Z/2).  Even generators
commute with everything; odd generators anticommute among themselves, so odd
squares vanish identically over Q.  Every element is a finite Q-linear
combination of canonical monomials: generators in declaration order, odd
exponents at most 1.  All arithmetic routes through the canonical form, so
equality is dictionary equality and printing is deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

Scalar = Fraction

EVEN = 0
ODD = 1

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class AlgebraError(ValueError):
    """Raised for malformed tables, inhomogeneous data or parity violations."""


def parity_of(text: str | int) -> int:
    if text in (EVEN, ODD):
        return int(text)
    if text == "even":
        return EVEN
    if text == "odd":
        return ODD
    raise AlgebraError(f"parity must be 'even' or 'odd', got {text!r}")


def parity_name(parity: int) -> str:
    return "odd" if parity & 1 else "even"


def as_scalar(value) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise AlgebraError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class Generator:
    name: str
    weight: int
    parity: int

    def __post_init__(self):
        if not _IDENT_RE.match(self.name):
            raise AlgebraError(f"generator name {self.name!r} is not an identifier")
        if self.parity not in (EVEN, ODD):
            raise AlgebraError(f"generator {self.name!r}: parity must be 0 or 1")


class GeneratorTable:
    """Ordered table of generators; the order is the canonical monomial order.

    Names beginning with 'd' followed by another declared name are reserved for
    differential generators; user tables reject them, and the constructions
    that legitimately pair g with dg pass allow_d_names=True.
    """

    def __init__(self, generators, even_mode: bool = False, allow_d_names: bool = False):
        gens = []
        for g in generators:
            if isinstance(g, Generator):
                gens.append(g)
            else:
                name, weight, parity = g
                gens.append(Generator(name, int(weight), parity_of(parity)))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate generator names")
        name_set = set(names)
        if not allow_d_names:
            for name in names:
                if name.startswith("d") and name[1:] in name_set:
                    raise AlgebraError(
                        f"name {name!r} collides with the reserved form prefix for {name[1:]!r}"
                    )
        if even_mode:
            for g in gens:
                if (g.weight - g.parity) % 2 != 0:
                    raise AlgebraError(
                        f"even_mode requires parity == weight mod 2; {g.name} has "
                        f"weight {g.weight} and parity {parity_name(g.parity)}"
                    )
        self.generators: tuple[Generator, ...] = tuple(gens)
        self.even_mode = even_mode
        self.names: tuple[str, ...] = tuple(names)
        self.index: dict[str, int] = {name: i for i, name in enumerate(names)}
        self.weights: tuple[int, ...] = tuple(g.weight for g in gens)
        self.parities: tuple[int, ...] = tuple(g.parity for g in gens)
        self.odd_positions: tuple[int, ...] = tuple(
            i for i, g in enumerate(gens) if g.parity == ODD
        )

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GeneratorTable)
            and self.generators == other.generators
            and self.even_mode == other.even_mode
        )

    def __hash__(self) -> int:
        return hash((self.generators, self.even_mode))

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{g.name}:({g.weight},{parity_name(g.parity)})" for g in self.generators
        )
        return f"GeneratorTable[{inner}]"

    def position(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None

    def monomial_weight(self, exps: tuple[int, ...]) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def monomial_parity(self, exps: tuple[int, ...]) -> int:
        return sum(exps[i] for i in self.odd_positions) & 1

    def monomial_degree(self, exps: tuple[int, ...]) -> int:
        return sum(exps)


def _mul_monomials(table: GeneratorTable, e1: tuple[int, ...], e2: tuple[int, ...]):
    """Koszul-signed product of canonical monomials.

    Returns (sign, exponents) or None when an odd generator would square.
    The sign counts transpositions of odd factors of e2 moving left past the
    odd factors of e1 that sit at strictly later table positions.
    """
    crossings = 0
    suffix = 0
    for i in reversed(table.odd_positions):
        if e2[i]:
            if e1[i]:
                return None
            crossings += suffix
        if e1[i]:
            suffix += 1
    exps = tuple(a + b for a, b in zip(e1, e2))
    return (-1 if crossings & 1 else 1), exps


class Element:
    """An element of the free graded-commutative algebra on a GeneratorTable."""

    __slots__ = ("table", "terms")

    def __init__(self, table: GeneratorTable, terms: dict[tuple[int, ...], Fraction]):
        self.table = table
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(table: GeneratorTable) -> "Element":
        return Element(table, {})

    @staticmethod
    def scalar(table: GeneratorTable, value) -> "Element":
        c = as_scalar(value)
        if c == 0:
            return Element(table, {})
        return Element(table, {(0,) * len(table): c})

    @staticmethod
    def one(table: GeneratorTable) -> "Element":
        return Element.scalar(table, 1)

    @staticmethod
    def generator(table: GeneratorTable, name: str) -> "Element":
        exps = [0] * len(table)
        exps[table.position(name)] = 1
        return Element(table, {tuple(exps): Fraction(1)})

    @staticmethod
    def monomial(table: GeneratorTable, exps: tuple[int, ...], coeff=1) -> "Element":
        c = as_scalar(coeff)
        if c == 0:
            return Element(table, {})
        if len(exps) != len(table):
            raise AlgebraError("exponent tuple length does not match the table")
        if any(e < 0 for e in exps):
            raise AlgebraError("negative exponent")
        for i in table.odd_positions:
            if exps[i] >= 2:
                return Element(table, {})
        return Element(table, {tuple(exps): c})

    # -- ring structure ----------------------------------------------------

    def _require_same_table(self, other: "Element"):
        if self.table != other.table:
            raise AlgebraError("elements live over different generator tables")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Element.scalar(self.table, other)
        if not isinstance(other, Element):
            return NotImplemented
        self._require_same_table(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            acc = terms.get(mono, None)
            if acc is None:
                terms[mono] = c
            else:
                acc = acc + c
                if acc == 0:
                    del terms[mono]
                else:
                    terms[mono] = acc
        return Element(self.table, terms)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.table, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Element.scalar(self.table, other)
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_scalar(other)
            if c == 0:
                return Element.zero(self.table)
            return Element(self.table, {m: v * c for m, v in self.terms.items()})
        if not isinstance(other, Element):
            return NotImplemented
        self._require_same_table(other)
        table = self.table
        terms: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                hit = _mul_monomials(table, m1, m2)
                if hit is None:
                    continue
                sign, exps = hit
                c = c1 * c2 if sign > 0 else -c1 * c2
                acc = terms.get(exps, None)
                if acc is None:
                    terms[exps] = c
                else:
                    acc = acc + c
                    if acc == 0:
                        del terms[exps]
                    else:
                        terms[exps] = acc
        return Element(table, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise AlgebraError("exponents must be non-negative integers")
        result = Element.one(self.table)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Element.scalar(self.table, other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        return hash((self.table, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    # -- grading -----------------------------------------------------------

    def degree(self) -> int:
        """Total polynomial degree (0 for the zero element)."""
        if not self.terms:
            return 0
        return max(self.table.monomial_degree(m) for m in self.terms)

    def homogeneous_components(self) -> dict[tuple[int, int], "Element"]:
        """Split by (weight, parity)."""
        parts: dict[tuple[int, int], dict] = {}
        for mono, c in self.terms.items():
            key = (self.table.monomial_weight(mono), self.table.monomial_parity(mono))
            parts.setdefault(key, {})[mono] = c
        return {key: Element(self.table, terms) for key, terms in parts.items()}

    def is_homogeneous(self) -> bool:
        return len(self.homogeneous_components()) <= 1

    def bidegree(self) -> tuple[int, int] | None:
        """(weight, parity) of a homogeneous element, None for zero or mixed."""
        comps = self.homogeneous_components()
        if len(comps) != 1:
            return None
        return next(iter(comps))

    def weight(self) -> int:
        bid = self.bidegree()
        if bid is None:
            raise AlgebraError("weight of a zero or inhomogeneous element")
        return bid[0]

    def parity(self) -> int:
        bid = self.bidegree()
        if bid is None:
            raise AlgebraError("parity of a zero or inhomogeneous element")
        return bid[1]

    def coefficient(self, exps: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.table), Fraction(0))

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"<{render(self)}>"


def partial(element: Element, name: str) -> Element:
    """Left partial derivative with respect to a generator.

    For an odd generator the factor is moved to the front of the monomial,
    collecting a Koszul sign from each odd factor it passes, then struck; this
    is why d/dxi2 (xi1*xi2) = -xi1.
    """
    table = element.table
    pos = table.position(name)
    odd = table.parities[pos] == ODD
    terms: dict[tuple[int, ...], Fraction] = {}
    for mono, c in element.terms.items():
        e = mono[pos]
        if e == 0:
            continue
        new = list(mono)
        new[pos] = e - 1
        key = tuple(new)
        if odd:
            swaps = sum(mono[i] for i in table.odd_positions if i < pos)
            value = -c if swaps & 1 else c
        else:
            value = c * e
        acc = terms.get(key, None)
        if acc is None:
            terms[key] = value
        else:
            acc = acc + value
            if acc == 0:
                del terms[key]
            else:
                terms[key] = acc
    return Element(table, terms)


# -- algebra maps -----------------------------------------------------------


class AlgebraMap:
    """Algebra homomorphism determined by generator images.

    With check=True (the default) each image must be zero or homogeneous of
    the same bidegree as its generator, so the map preserves the grading.
    """

    def __init__(self, source: GeneratorTable, target: GeneratorTable,
                 images: dict[str, Element], check: bool = True):
        self.source = source
        self.target = target
        imgs: list[Element] = []
        for g in source.generators:
            if g.name not in images:
                raise AlgebraError(f"no image given for generator {g.name!r}")
            img = images[g.name]
            if isinstance(img, (int, Fraction)):
                img = Element.scalar(target, img)
            if img.table != target:
                raise AlgebraError(f"image of {g.name!r} lives over the wrong table")
            if check and not img.is_zero():
                bid = img.bidegree()
                if bid is None:
                    raise AlgebraError(f"image of {g.name!r} is not homogeneous")
                if bid != (g.weight, g.parity):
                    raise AlgebraError(
                        f"image of {g.name!r} has bidegree {bid}, expected "
                        f"({g.weight}, {g.parity})"
                    )
            imgs.append(img)
        self.images: tuple[Element, ...] = tuple(imgs)

    def image_of(self, name: str) -> Element:
        return self.images[self.source.position(name)]

    def __call__(self, element: Element) -> Element:
        if element.table != self.source:
            raise AlgebraError("element is not over the source table")
        out = Element.zero(self.target)
        for mono, c in element.terms.items():
            acc = Element.scalar(self.target, c)
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                img = self.images[i]
                for _ in range(e):
                    acc = acc * img
                    if acc.is_zero():
                        break
                if acc.is_zero():
                    break
            out = out + acc
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraMap)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )


def identity_map(table: GeneratorTable) -> AlgebraMap:
    return AlgebraMap(table, table, {g.name: Element.generator(table, g.name) for g in table})


def compose_maps(outer: AlgebraMap, inner: AlgebraMap) -> AlgebraMap:
    """outer after inner."""
    if inner.target != outer.source:
        raise AlgebraError("maps are not composable")
    images = {g.name: outer(inner.image_of(g.name)) for g in inner.source}
    return AlgebraMap(inner.source, outer.target, images, check=False)


# -- parsing and printing ---------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r} at position {pos}")
        if match.lastgroup == "number":
            tokens.append(("number", match.group("number")))
        elif match.lastgroup == "ident":
            tokens.append(("ident", match.group("ident")))
        else:
            tokens.append(("op", match.group("op")))
        pos = match.end()
    return tokens


class _Parser:
    """expr := ['-'] term (('+'|'-') term)*
    term := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom := rational | identifier | '(' expr ')'
    """

    def __init__(self, table: GeneratorTable, tokens: list[tuple[str, str]]):
        self.table = table
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value = self.take()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}, got {value!r}")

    def parse_expr(self) -> Element:
        negate = False
        kind, value = self.peek()
        if kind == "op" and value == "-":
            self.take()
            negate = True
        result = self.parse_term()
        if negate:
            result = -result
        while True:
            kind, value = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                term = self.parse_term()
                result = result + term if value == "+" else result - term
            else:
                return result

    def parse_term(self) -> Element:
        result = self.parse_factor()
        while True:
            kind, value = self.peek()
            if kind == "op" and value == "*":
                self.take()
                result = result * self.parse_factor()
            else:
                return result

    def parse_factor(self) -> Element:
        atom = self.parse_atom()
        kind, value = self.peek()
        if kind == "op" and value == "^":
            self.take()
            kind, value = self.take()
            if kind != "number" or "/" in value:
                raise ParseError("exponent must be a non-negative integer")
            return atom ** int(value)
        return atom

    def parse_atom(self) -> Element:
        kind, value = self.take()
        if kind == "number":
            return Element.scalar(self.table, Fraction(value))
        if kind == "ident":
            if value not in self.table.index:
                raise ParseError(f"unknown generator {value!r}")
            return Element.generator(self.table, value)
        if kind == "op" and value == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {value!r}")


def parse(table: GeneratorTable, text: str) -> Element:
    tokens = _tokenize(text)
    parser = _Parser(table, tokens)
    result = parser.parse_expr()
    if parser.pos != len(tokens):
        raise ParseError(f"trailing input after position {parser.pos}")
    return result


def _sort_key(table: GeneratorTable, mono: tuple[int, ...]):
    return mono


def render(element: Element) -> str:
    """Deterministic printer; parse(render(x)) == x.

    Monomials are sorted by descending lexicographic exponent comparison in
    declaration order; each term prints its rational coefficient first.
    """
    if not element.terms:
        return "0"
    table = element.table
    monos = sorted(element.terms, key=lambda m: _sort_key(table, m), reverse=True)
    pieces: list[str] = []
    for k, mono in enumerate(monos):
        coeff = element.terms[mono]
        if k == 0:
            head = str(coeff)
        else:
            pieces.append(" + " if coeff > 0 else " - ")
            head = str(abs(coeff))
        factors = [head]
        for i, e in enumerate(mono):
            if e == 0:
                continue
            name = table.names[i]
            factors.append(name if e == 1 else f"{name}^{e}")
        pieces.append(" * ".join(factors))
    return "".join(pieces)


# -- monomial enumeration ----------------------------------------------------


def monomials_of_degree_at_most(table: GeneratorTable, cap: int) -> list[tuple[int, ...]]:
    """All canonical monomials of total degree <= cap, in a deterministic order."""
    results: list[tuple[int, ...]] = []
    n = len(table)

    def rec(pos: int, remaining: int, current: list[int]):
        if pos == n:
            results.append(tuple(current))
            return
        limit = 1 if table.parities[pos] == ODD else remaining
        for e in range(min(limit, remaining) + 1):
            current.append(e)
            rec(pos + 1, remaining - e, current)
            current.pop()

    rec(0, cap, [])
    results.sort()
    return results


def monomial_basis(table: GeneratorTable, weight: int, parity: int, cap: int) -> list[tuple[int, ...]]:
    """Canonical monomials of the given bidegree with total degree <= cap."""
    return [
        m
        for m in monomials_of_degree_at_most(table, cap)
        if table.monomial_weight(m) == weight and table.monomial_parity(m) == parity
    ]


def weight_degree_bound(table: GeneratorTable, weight: int) -> int | None:
    """A provable upper bound on the degree of monomials of this weight.

    Returns None when the weight space is infinite dimensional (an even
    generator of weight 0, or even generators of mixed sign).  Odd generators
    are nilpotent so they never break finiteness.
    """
    even_weights = [
        table.weights[i]
        for i in range(len(table))
        if table.parities[i] == EVEN
    ]
    if any(w == 0 for w in even_weights):
        return None
    if any(w > 0 for w in even_weights) and any(w < 0 for w in even_weights):
        return None
    odd_weights = [table.weights[i] for i in table.odd_positions]
    best: int | None = None

    def feasible_even_degree(residual: int) -> int | None:
        if residual == 0:
            return 0
        if not even_weights:
            return None
        if all(w > 0 for w in even_weights):
            if residual < 0:
                return None
            return residual // min(even_weights)
        if residual > 0:
            return None
        return (-residual) // min(-w for w in even_weights)

    for mask in range(1 << len(odd_weights)):
        size = 0
        wsum = 0
        for i, w in enumerate(odd_weights):
            if mask >> i & 1:
                size += 1
                wsum += w
        even_deg = feasible_even_degree(weight - wsum)
        if even_deg is None:
            continue
        cand = size + even_deg
        if best is None or cand > best:
            best = cand
    if best is None:
        return -1
    return best
