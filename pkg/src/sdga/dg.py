"""Derivations, differentials and cohomology for graded supercommutative algebras.

A derivation of bidegree (s, e) sends each generator to a homogeneous element
shifted by that bidegree and extends by the super Leibniz rule
D(ab) = D(a) b + (-1)^{e|a|} a D(b).  Applying D via left partial derivatives,
D(a) = sum_g D(g) * da/dg, reproduces exactly that rule.

Cohomology of a differential (bidegree (1, odd), squaring to zero) is computed
per (weight, parity) on monomial bases truncated by total degree.  The degree
caps are grown with the weight so that every differential matrix is the honest
restriction of d (no image term is ever silently dropped), and each reported
dimension carries an `exact` flag that is True only when the truncated bases
provably exhaust their weight spaces.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .core import (
    EVEN,
    ODD,
    AlgebraError,
    AlgebraMap,
    Element,
    GeneratorTable,
    as_scalar,
    monomial_basis,
    parity_name,
    partial,
    render,
    weight_degree_bound,
)


class Derivation:
    """A super derivation of a free graded-commutative algebra into itself."""

    def __init__(self, table: GeneratorTable, images: dict[str, Element],
                 weight_shift: int, parity_shift: int, check: bool = True):
        if parity_shift not in (EVEN, ODD):
            raise AlgebraError("parity shift must be 0 or 1")
        self.table = table
        self.weight_shift = weight_shift
        self.parity_shift = parity_shift
        imgs: list[Element] = []
        for g in table.generators:
            img = images.get(g.name, Element.zero(table))
            if isinstance(img, (int, Fraction)):
                img = Element.scalar(table, img)
            if img.table != table:
                raise AlgebraError(f"image of {g.name!r} lives over the wrong table")
            if check and not img.is_zero():
                bid = img.bidegree()
                expected = (g.weight + weight_shift, (g.parity + parity_shift) % 2)
                if bid != expected:
                    raise AlgebraError(
                        f"derivation image of {g.name!r} has bidegree {bid}, "
                        f"expected {expected}"
                    )
            imgs.append(img)
        self.images: tuple[Element, ...] = tuple(imgs)

    def image_of(self, name: str) -> Element:
        return self.images[self.table.position(name)]

    def __call__(self, element: Element) -> Element:
        if element.table != self.table:
            raise AlgebraError("element is not over the derivation's table")
        out = Element.zero(self.table)
        for i, g in enumerate(self.table.generators):
            img = self.images[i]
            if img.is_zero():
                continue
            out = out + img * partial(element, g.name)
        return out

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        if self.table != other.table or self.images != other.images:
            return False
        if not self.is_zero() and (
            self.weight_shift != other.weight_shift
            or self.parity_shift != other.parity_shift
        ):
            return False
        return True

    def __add__(self, other: "Derivation") -> "Derivation":
        if self.table != other.table:
            raise AlgebraError("derivations live over different tables")
        if not self.is_zero() and not other.is_zero() and (
            (self.weight_shift, self.parity_shift)
            != (other.weight_shift, other.parity_shift)
        ):
            raise AlgebraError("cannot add derivations of different bidegrees")
        shift = (other if self.is_zero() else self)
        images = {
            g.name: self.images[i] + other.images[i]
            for i, g in enumerate(self.table.generators)
        }
        return Derivation(self.table, images, shift.weight_shift, shift.parity_shift,
                          check=False)

    def __neg__(self) -> "Derivation":
        images = {g.name: -self.images[i] for i, g in enumerate(self.table.generators)}
        return Derivation(self.table, images, self.weight_shift, self.parity_shift,
                          check=False)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + (-other)

    def scale(self, c) -> "Derivation":
        c = as_scalar(c)
        images = {g.name: self.images[i] * c for i, g in enumerate(self.table.generators)}
        return Derivation(self.table, images, self.weight_shift, self.parity_shift,
                          check=False)

    def bracket(self, other: "Derivation") -> "Derivation":
        """Super commutator [D, D'] = D D' - (-1)^{|D||D'|} D' D.

        The commutator of two derivations is again a derivation even though
        the plain composites are not.
        """
        if self.table != other.table:
            raise AlgebraError("derivations live over different tables")
        sign = -1 if (self.parity_shift and other.parity_shift) else 1
        images = {}
        for g in self.table.generators:
            gen = Element.generator(self.table, g.name)
            first = self(other(gen))
            second = other(self(gen))
            images[g.name] = first - second * sign if sign > 0 else first + second
        return Derivation(
            self.table,
            images,
            self.weight_shift + other.weight_shift,
            (self.parity_shift + other.parity_shift) % 2,
        )

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{g.name} -> {render(self.images[i])}"
            for i, g in enumerate(self.table.generators)
            if not self.images[i].is_zero()
        )
        return (
            f"Derivation({inner or '0'}; shift=({self.weight_shift}, "
            f"{parity_name(self.parity_shift)}))"
        )


def euler_derivation(table: GeneratorTable) -> Derivation:
    """The weight Euler derivation g -> weight(g) * g; eigenvalue = weight."""
    images = {
        g.name: Element.generator(table, g.name) * g.weight for g in table.generators
    }
    return Derivation(table, images, 0, EVEN)


def leibniz_defect(D: Derivation, a: Element, b: Element) -> Element:
    """D(ab) - D(a)b - (-1)^{|D||a|} a D(b); zero on homogeneous a."""
    sign = -1 if (D.parity_shift and a.parity() == ODD) else 1
    return D(a * b) - D(a) * b - (a * D(b)) * sign


# -- differential graded algebras --------------------------------------------


class DGAlgebra:
    """A free graded-commutative algebra with a square-zero differential.

    The differential must have bidegree (+1, odd).  d o d = 0 is checked on
    generators, which suffices because d^2 = [d, d]/2 is itself a derivation.
    """

    def __init__(self, table: GeneratorTable, differential: Derivation, check: bool = True):
        if differential.table != table:
            raise AlgebraError("differential is defined over a different table")
        if differential.weight_shift != 1 or differential.parity_shift != ODD:
            raise AlgebraError(
                "a differential must raise weight by 1 and flip parity; got shift "
                f"({differential.weight_shift}, {parity_name(differential.parity_shift)})"
            )
        self.table = table
        self.differential = differential
        if check:
            bad = self.square_witnesses()
            if bad:
                name, value = bad[0]
                raise AlgebraError(
                    f"differential does not square to zero: d(d({name})) = {render(value)}"
                )

    def square_witnesses(self) -> list[tuple[str, Element]]:
        d = self.differential
        out = []
        for g in self.table.generators:
            val = d(d(Element.generator(self.table, g.name)))
            if not val.is_zero():
                out.append((g.name, val))
        return out

    def d(self, element: Element) -> Element:
        return self.differential(element)

    def cohomology(self, w_min: int, w_max: int, cap: int) -> "CohomologyReport":
        return compute_cohomology(self.table, self.differential, w_min, w_max, cap)


class CohomologyReport:
    """Per-bidegree cohomology dimensions with exactness flags."""

    def __init__(self, w_min: int, w_max: int, cap: int):
        self.w_min = w_min
        self.w_max = w_max
        self.cap = cap
        self.entries: dict[tuple[int, int], dict] = {}

    def dim(self, weight: int, parity: int) -> int:
        return self.entries[(weight, parity)]["dim"]

    def exact(self, weight: int, parity: int) -> bool:
        return self.entries[(weight, parity)]["exact"]

    def representatives(self, weight: int, parity: int) -> list[str]:
        return self.entries[(weight, parity)]["representatives"]

    def dims(self) -> dict[tuple[int, int], int]:
        return {key: entry["dim"] for key, entry in self.entries.items()}

    def total_dim(self) -> int:
        return sum(entry["dim"] for entry in self.entries.values())

    def to_dict(self) -> dict:
        return {
            "window": [self.w_min, self.w_max],
            "degree_cap": self.cap,
            "entries": [
                {
                    "weight": w,
                    "parity": parity_name(p),
                    "dim": entry["dim"],
                    "exact": entry["exact"],
                    "representatives": entry["representatives"],
                }
                for (w, p), entry in sorted(self.entries.items())
            ],
        }


def _differential_matrix(table: GeneratorTable, d: Derivation,
                         src: list[tuple[int, ...]], dst: list[tuple[int, ...]]):
    """Matrix of d on monomial bases; raises if an image leaves the basis."""
    index = {mono: i for i, mono in enumerate(dst)}
    mat = linalg.zeros(len(dst), len(src))
    for j, mono in enumerate(src):
        image = d(Element.monomial(table, mono))
        for m, c in image.terms.items():
            if m not in index:
                raise AlgebraError(
                    "differential image left the truncated basis; "
                    "degree caps were grown incorrectly"
                )
            mat[index[m]][j] = c
    return mat


def compute_cohomology(table: GeneratorTable, d: Derivation,
                       w_min: int, w_max: int, cap: int) -> CohomologyReport:
    if w_min > w_max:
        raise AlgebraError("empty weight window")
    growth = 0
    for img in d.images:
        if not img.is_zero():
            growth = max(growth, img.degree() - 1)
    caps: dict[int, int] = {}
    caps[w_min - 1] = cap
    for w in range(w_min, w_max + 2):
        caps[w] = caps[w - 1] + growth

    bases: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for w in range(w_min - 1, w_max + 2):
        for p in (EVEN, ODD):
            bases[(w, p)] = monomial_basis(table, w, p, caps[w])

    bounds: dict[int, int | None] = {
        w: weight_degree_bound(table, w) for w in range(w_min - 1, w_max + 1)
    }

    report = CohomologyReport(w_min, w_max, cap)
    for w in range(w_min, w_max + 1):
        for p in (EVEN, ODD):
            cur = bases[(w, p)]
            prev = bases[(w - 1, (p + 1) % 2)]
            nxt = bases[(w + 1, (p + 1) % 2)]
            mat_out = _differential_matrix(table, d, cur, nxt)
            mat_in = _differential_matrix(table, d, prev, cur)
            kernel = linalg.nullspace(mat_out, len(cur))
            image = [[mat_in[i][j] for i in range(len(cur))] for j in range(len(prev))]
            rank_in = linalg.rank(mat_in)
            dim_h = len(kernel) - rank_in
            reps = linalg.quotient_representatives(kernel, image, len(cur))
            rep_strings = []
            for vec in reps:
                elem = Element.zero(table)
                for i, c in enumerate(vec):
                    if c != 0:
                        elem = elem + Element.monomial(table, cur[i], c)
                rep_strings.append(render(elem))
            bound_cur = bounds[w]
            bound_prev = bounds[w - 1]
            exact = (
                bound_cur is not None
                and caps[w] >= bound_cur
                and bound_prev is not None
                and caps[w - 1] >= bound_prev
            )
            report.entries[(w, p)] = {
                "dim": dim_h,
                "exact": exact,
                "representatives": rep_strings,
            }
    return report


# -- square-zero extensions ---------------------------------------------------


class SquareZeroExtension:
    """A[eps] = A + A*eps with eps^2 = 0, for a formal symbol eps.

    Sections of the projection correspond to derivations: a bidegree (s, e)
    derivation D gives the algebra section g -> g + eps * D(g) when eps has
    bidegree (-s, e), and conversely.
    """

    def __init__(self, table: GeneratorTable, eps_name: str, eps_weight: int, eps_parity):
        from .core import Generator, parity_of

        eps_parity = parity_of(eps_parity)
        if eps_name in table.index:
            raise AlgebraError(f"symbol {eps_name!r} already names a generator")
        gens = list(table.generators) + [Generator(eps_name, eps_weight, eps_parity)]
        self.base = table
        self.eps_name = eps_name
        self.eps_weight = eps_weight
        self.eps_parity = eps_parity
        self.table = GeneratorTable(gens, allow_d_names=True)
        self._eps_pos = self.table.position(eps_name)

    def truncate(self, element: Element) -> Element:
        """Kill every monomial containing eps at least twice."""
        pos = self._eps_pos
        terms = {m: c for m, c in element.terms.items() if m[pos] < 2}
        return Element(self.table, terms)

    def multiply(self, a: Element, b: Element) -> Element:
        return self.truncate(a * b)

    def include(self, element: Element) -> Element:
        """A -> A[eps]."""
        if element.table != self.base:
            raise AlgebraError("element is not over the base table")
        terms = {m + (0,): c for m, c in element.terms.items()}
        return Element(self.table, terms)

    def project(self, element: Element) -> Element:
        """A[eps] -> A, eps -> 0."""
        pos = self._eps_pos
        terms = {m[:-1]: c for m, c in element.terms.items() if m[pos] == 0}
        return Element(self.base, terms)

    def eps(self) -> Element:
        return Element.generator(self.table, self.eps_name)

    def eps_coefficient(self, element: Element) -> Element:
        """The A-part m of eps * m inside an extension element."""
        stripped = partial(element, self.eps_name)
        terms = {m[:-1]: c for m, c in stripped.terms.items()}
        return Element(self.base, terms)

    def derivation_to_section(self, D: Derivation) -> AlgebraMap:
        """Algebra section g -> g + eps * D(g) of the projection."""
        if D.table != self.base:
            raise AlgebraError("derivation is not over the base table")
        if (self.eps_weight, self.eps_parity) != (-D.weight_shift, D.parity_shift):
            raise AlgebraError(
                "eps bidegree does not match the derivation: need "
                f"({-D.weight_shift}, {parity_name(D.parity_shift)})"
            )
        eps = self.eps()
        images = {}
        for g in self.base.generators:
            lifted = self.include(Element.generator(self.base, g.name))
            images[g.name] = lifted + eps * self.include(D.image_of(g.name))
        return AlgebraMap(self.base, self.table, images)

    def section_to_derivation(self, section: AlgebraMap,
                              weight_shift: int | None = None,
                              parity_shift: int | None = None) -> Derivation:
        """Extract D(g) = eps-coefficient of section(g)."""
        if section.source != self.base or section.target != self.table:
            raise AlgebraError("map is not a section candidate for this extension")
        for g in self.base.generators:
            gen = Element.generator(self.base, g.name)
            if self.project(section(gen)) != gen:
                raise AlgebraError(f"map is not a section: projection moves {g.name!r}")
        if weight_shift is None:
            weight_shift = -self.eps_weight
        if parity_shift is None:
            parity_shift = self.eps_parity
        images = {
            g.name: self.eps_coefficient(section.image_of(g.name))
            for g in self.base.generators
        }
        return Derivation(self.base, images, weight_shift, parity_shift)

    def section_defect(self, section: AlgebraMap, a: Element, b: Element) -> Element:
        """sigma(ab) - sigma(a)sigma(b) in the truncated arithmetic."""
        return self.truncate(section(a * b)) - self.multiply(section(a), section(b))


# -- Kahler differentials ------------------------------------------------------


class KahlerModule:
    """The module of Kahler differentials of a free algebra.

    Omega^1 is the free module on symbols d(g), one per generator, carrying the
    same bidegree as g so that the universal derivation has bidegree (0, even).
    Elements are represented inside the extended algebra A[dg...] as the span of
    monomials of differential degree exactly one.
    """

    def __init__(self, table: GeneratorTable):
        from .core import Generator

        gens = list(table.generators)
        for g in table.generators:
            gens.append(Generator("d" + g.name, g.weight, g.parity))
        self.base = table
        self.table = GeneratorTable(gens, allow_d_names=True)
        self.nbase = len(table)

    def include(self, element: Element) -> Element:
        if element.table != self.base:
            raise AlgebraError("element is not over the base table")
        pad = (0,) * self.nbase
        terms = {m + pad: c for m, c in element.terms.items()}
        return Element(self.table, terms)

    def restrict(self, element: Element) -> Element:
        """Extended element with no differential symbols back to the base."""
        n = self.nbase
        terms = {}
        for m, c in element.terms.items():
            if any(m[n:]):
                raise AlgebraError("element contains differential symbols")
            terms[m[:n]] = c
        return Element(self.base, terms)

    def differential_degree(self, mono: tuple[int, ...]) -> int:
        return sum(mono[self.nbase:])

    def is_module_element(self, element: Element) -> bool:
        return all(self.differential_degree(m) == 1 for m in element.terms)

    def d_symbol(self, name: str) -> Element:
        return Element.generator(self.table, "d" + name)

    def universal(self, element: Element) -> Element:
        """d(a) = sum_g d(g) * da/dg, an even derivation into Omega^1."""
        if element.table != self.base:
            raise AlgebraError("element is not over the base table")
        out = Element.zero(self.table)
        for g in self.base.generators:
            part = partial(element, g.name)
            if part.is_zero():
                continue
            out = out + self.d_symbol(g.name) * self.include(part)
        return out

    def universal_factorization(self, D: Derivation, omega: Element) -> Element:
        """The module map f_D with f_D(universal(a)) = D(a), applied to omega.

        On a term c * dg the value is (-1)^{|D| |c|} c * D(g); the parity twist
        is what makes f_D factor the universal derivation for odd D.
        """
        if D.table != self.base:
            raise AlgebraError("derivation is not over the base table")
        if omega.table != self.table:
            raise AlgebraError("form is not over the extended table")
        if not self.is_module_element(omega):
            raise AlgebraError("element is not of differential degree one")
        n = self.nbase
        out = Element.zero(self.base)
        for m, c in omega.terms.items():
            dpos = next(i for i in range(n, len(m)) if m[i])
            gen = self.base.generators[dpos - n]
            base_mono = m[:n]
            coeff = Element.monomial(self.base, base_mono, c)
            if D.parity_shift and self.base.monomial_parity(base_mono):
                coeff = -coeff
            out = out + coeff * D.image_of(gen.name)
        return out
