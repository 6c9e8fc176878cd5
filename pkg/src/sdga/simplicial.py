"""Polynomial differential forms on simplices, Whitney calculus and cotensors.

Omega_n is the free graded-commutative algebra on t1..tn (weight 0, even) and
dt1..dtn (weight 1, odd) with d(ti) = dti; the barycentric coordinate t0 is
eliminated as 1 - sum(ti).  Monotone maps phi: [m] -> [n] act contravariantly
by t_k -> sum over phi-preimages, which makes Omega a functor on the simplex
category.

The Whitney forms

    w_I = k! * sum_q (-1)^q t_{i_q} dt_{i_0} ... (omit q) ... dt_{i_k}

span a finite subcomplex isomorphic to simplicial cochains, and integration
over the face spanned by I is exactly dual to them.  The dilation towards a
vertex provides contraction operators h^i; the classical simplicial homotopy
s assembled from them satisfies id - P = d s + s d for the Whitney projection
P, all verified here with exact rational coefficients.

Tensoring with a coefficient algebra B and imposing the face compatibility
constraints computes B^K for K a simplex, a boundary or a horn; surjectivity
of the restriction maps onto horns and boundaries is decided by exact rank
computations on truncated bases.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .core import (
    EVEN,
    ODD,
    AlgebraError,
    AlgebraMap,
    Element,
    Generator,
    GeneratorTable,
    monomial_basis,
    parity_name,
)
from .core import partial as partial_derivative
from .dg import Derivation, DGAlgebra
from .forms import Cylinder, integrate, substitute

# Frozen convention for the simplicial homotopy
#
#     s = sum_k (-1)^k sum_{i_0 < ... < i_k} w_I * (h^{i_k} o ... o h^{i_0}),
#
# i.e. the composite applies the contraction toward the smallest index first
# and each length contributes with the alternating sign (-1)^k.  A machine
# sweep over composition orders, multiplication sides and sign patterns shows
# this is the unique combination for which d s + s d = id - P holds on both
# Omega_2 and Omega_3; several impostors pass on Omega_2 alone.  Tuples of
# length n+1 are skipped: a composite of n+1 contractions lowers form weight
# below zero and vanishes identically.
_DUPONT_SIGN = lambda k: -1 if k % 2 else 1


class SimplexForms:
    """Polynomial forms on the n-simplex in eliminated coordinates."""

    def __init__(self, n: int):
        if n < 0:
            raise AlgebraError("simplex dimension must be non-negative")
        self.n = n
        gens = [Generator(f"t{i}", 0, EVEN) for i in range(1, n + 1)]
        gens += [Generator(f"dt{i}", 1, ODD) for i in range(1, n + 1)]
        self.table = GeneratorTable(gens, allow_d_names=True)
        images = {
            f"t{i}": Element.generator(self.table, f"dt{i}") for i in range(1, n + 1)
        }
        self.differential = Derivation(self.table, images, 1, ODD)
        self.dga = DGAlgebra(self.table, self.differential)
        self._whitney_cache: dict[tuple[int, ...], Element] = {}
        self._integral_cache: dict[tuple, Fraction] = {}
        self._dilation_cache: dict[int, tuple[Cylinder, AlgebraMap]] = {}
        self._h_cache: dict[tuple[int, tuple[int, ...]], Element] = {}
        self._s_cache: dict[tuple[int, ...], Element] = {}
        self._p_cache: dict[tuple[int, ...], Element] = {}

    def t(self, i: int) -> Element:
        if not 0 <= i <= self.n:
            raise AlgebraError(f"vertex index {i} out of range for n={self.n}")
        if i == 0:
            out = Element.one(self.table)
            for j in range(1, self.n + 1):
                out = out - Element.generator(self.table, f"t{j}")
            return out
        return Element.generator(self.table, f"t{i}")

    def dt(self, i: int) -> Element:
        if not 0 <= i <= self.n:
            raise AlgebraError(f"vertex index {i} out of range for n={self.n}")
        if i == 0:
            out = Element.zero(self.table)
            for j in range(1, self.n + 1):
                out = out - Element.generator(self.table, f"dt{j}")
            return out
        return Element.generator(self.table, f"dt{i}")

    def form_weight_of(self, mono: tuple[int, ...]) -> int:
        return sum(mono[self.n:])

    def vertex_value(self, element: Element, i: int) -> Fraction:
        """Evaluate the function part at vertex i (t_j = delta_ij, dt = 0)."""
        values: dict[str, Element | int | Fraction] = {}
        for j in range(1, self.n + 1):
            values[f"t{j}"] = 1 if j == i else 0
            values[f"dt{j}"] = 0
        return substitute(element, values).constant_term()

    def d(self, element: Element) -> Element:
        return self.differential(element)


@lru_cache(maxsize=None)
def simplex_forms(n: int) -> SimplexForms:
    return SimplexForms(n)


# -- simplicial operators -----------------------------------------------------


def face_tuple(n: int, i: int) -> tuple[int, ...]:
    """The injection [n-1] -> [n] skipping i."""
    if not 0 <= i <= n:
        raise AlgebraError("face index out of range")
    return tuple(j if j < i else j + 1 for j in range(n))


def degeneracy_tuple(n: int, i: int) -> tuple[int, ...]:
    """The surjection [n+1] -> [n] repeating i."""
    if not 0 <= i <= n:
        raise AlgebraError("degeneracy index out of range")
    return tuple(j if j <= i else j - 1 for j in range(n + 2))


def compose_tuples(outer: tuple[int, ...], inner: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(outer[j] for j in inner)


def pullback(phi: tuple[int, ...], source: SimplexForms, target: SimplexForms) -> AlgebraMap:
    """Omega(phi): Omega_{source.n} -> Omega_{target.n} for phi: [target.n] -> [source.n]."""
    if len(phi) != target.n + 1:
        raise AlgebraError("operator tuple has the wrong length")
    if any(not 0 <= v <= source.n for v in phi):
        raise AlgebraError("operator tuple value out of range")
    if any(phi[j] > phi[j + 1] for j in range(len(phi) - 1)):
        raise AlgebraError("operator tuple is not monotone")
    images: dict[str, Element] = {}
    for k in range(1, source.n + 1):
        tsum = Element.zero(target.table)
        dsum = Element.zero(target.table)
        for j, value in enumerate(phi):
            if value == k:
                tsum = tsum + target.t(j)
                dsum = dsum + target.dt(j)
        images[f"t{k}"] = tsum
        images[f"dt{k}"] = dsum
    return AlgebraMap(source.table, target.table, images, check=False)


def face_pullback(n: int, i: int) -> AlgebraMap:
    """Restriction Omega_n -> Omega_{n-1} to the facet opposite vertex i."""
    return pullback(face_tuple(n, i), simplex_forms(n), simplex_forms(n - 1))


# -- Whitney forms -------------------------------------------------------------


def whitney(forms: SimplexForms, indices: tuple[int, ...]) -> Element:
    """The elementary form w_I; antisymmetric in I, zero on repeats."""
    I = tuple(indices)
    if any(not 0 <= i <= forms.n for i in I):
        raise AlgebraError("vertex index out of range")
    if len(set(I)) != len(I):
        return Element.zero(forms.table)
    order = tuple(sorted(I))
    sign = _permutation_sign(I, order)
    cached = forms._whitney_cache.get(order)
    if cached is None:
        k = len(order) - 1
        acc = Element.zero(forms.table)
        for q in range(k + 1):
            term = forms.t(order[q])
            for r in range(k + 1):
                if r != q:
                    term = term * forms.dt(order[r])
            acc = acc + term * ((-1) ** q)
        cached = acc * math.factorial(k)
        forms._whitney_cache[order] = cached
    return cached if sign > 0 else -cached


def _permutation_sign(perm: tuple[int, ...], sorted_perm: tuple[int, ...]) -> int:
    del sorted_perm
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def whitney_tuples(n: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(n + 1), k + 1))


def whitney_differential_identity(forms: SimplexForms, indices: tuple[int, ...]) -> bool:
    """d w_I = sum_i w_{(i,) + I}, the elementary complex structure."""
    lhs = forms.d(whitney(forms, indices))
    rhs = Element.zero(forms.table)
    for i in range(forms.n + 1):
        rhs = rhs + whitney(forms, (i,) + tuple(indices))
    return lhs == rhs


# -- the redundant (barycentric) presentation ----------------------------------


@lru_cache(maxsize=None)
def barycentric_table(n: int) -> GeneratorTable:
    """Generators t0..tn and dt0..dtn of the redundant presentation."""
    gens = [Generator(f"t{i}", 0, EVEN) for i in range(n + 1)]
    gens += [Generator(f"dt{i}", 1, ODD) for i in range(n + 1)]
    return GeneratorTable(gens, allow_d_names=True)


def simplex_relations(n: int) -> tuple[Element, Element]:
    """The defining relations t0 + ... + tn - 1 and dt0 + ... + dtn."""
    table = barycentric_table(n)
    rel = -Element.one(table)
    drel = Element.zero(table)
    for i in range(n + 1):
        rel = rel + Element.generator(table, f"t{i}")
        drel = drel + Element.generator(table, f"dt{i}")
    return rel, drel


def eliminate(forms: SimplexForms, element: Element) -> Element:
    """Quotient map from the redundant presentation to normal form.

    Substitutes t0 = 1 - t1 - ... - tn and dt0 = -dt1 - ... - dtn; the two
    defining relations map to zero, so this is well defined on the quotient.
    """
    table = barycentric_table(forms.n)
    if element.table != table:
        raise AlgebraError("element is not in the redundant presentation")
    images: dict[str, Element] = {}
    for i in range(forms.n + 1):
        images[f"t{i}"] = forms.t(i)
        images[f"dt{i}"] = forms.dt(i)
    return AlgebraMap(table, forms.table, images)(element)


def barycentric_section(forms: SimplexForms, element: Element) -> Element:
    """The section of eliminate fixing the coordinates t1..tn, dt1..dtn."""
    table = barycentric_table(forms.n)
    images: dict[str, Element] = {}
    for i in range(1, forms.n + 1):
        images[f"t{i}"] = Element.generator(table, f"t{i}")
        images[f"dt{i}"] = Element.generator(table, f"dt{i}")
    return AlgebraMap(forms.table, table, images)(element)


def barycentric_whitney(n: int, indices: tuple[int, ...]) -> Element:
    """w_I in the redundant presentation: k! sum_q (-1)^q t_{i_q} dt...dt."""
    table = barycentric_table(n)
    I = tuple(indices)
    if any(not 0 <= i <= n for i in I):
        raise AlgebraError("vertex index out of range")
    if len(set(I)) != len(I):
        return Element.zero(table)
    k = len(I) - 1
    acc = Element.zero(table)
    for q in range(k + 1):
        term = Element.generator(table, f"t{I[q]}")
        for r in range(k + 1):
            if r != q:
                term = term * Element.generator(table, f"dt{I[r]}")
        acc = acc + term * ((-1) ** q)
    return acc * math.factorial(k)


def elementary_subcomplex(n: int) -> dict:
    """Basis and boundary matrices of the span of the elementary forms.

    The span is a subcomplex: d w_I expands exactly in elementary forms one
    degree up, with coefficients read off by the dual integrals.  The matrix
    in degree k sends the basis of k-tuples to the basis of (k+1)-tuples and
    agrees with the simplicial-cochain coboundary of the n-simplex.
    """
    forms = simplex_forms(n)
    basis = {k: whitney_tuples(n, k) for k in range(n + 1)}
    matrices: dict[int, list[list[Fraction]]] = {}
    for k in range(n + 1):
        rows_idx = basis.get(k + 1, [])
        mat = [[Fraction(0)] * len(basis[k]) for _ in rows_idx]
        for j, I in enumerate(basis[k]):
            image = forms.d(whitney(forms, I))
            for r, J in enumerate(rows_idx):
                mat[r][j] = simplex_integral(forms, J, image)
            # the expansion is exact: subtracting it leaves zero
            check = image
            for r, J in enumerate(rows_idx):
                check = check - whitney(forms, J) * mat[r][j]
            if not check.is_zero():
                raise AlgebraError("elementary span is not closed under d")
        matrices[k] = mat
    return {"basis": basis, "differential": matrices}


def simplicial_coboundary(n: int, k: int) -> list[list[Fraction]]:
    """The coboundary matrix of the simplicial cochain complex of the n-simplex."""
    rows = whitney_tuples(n, k + 1)
    cols = whitney_tuples(n, k)
    mat = [[Fraction(0)] * len(cols) for _ in rows]
    for r, J in enumerate(rows):
        for q in range(len(J)):
            face = J[:q] + J[q + 1:]
            c = cols.index(face)
            mat[r][c] += (-1) ** q
    return mat


# -- integration over faces ------------------------------------------------------


@lru_cache(maxsize=None)
def _integration_table(k: int) -> GeneratorTable:
    gens = [Generator(f"u{q}", 0, EVEN) for q in range(1, k + 1)]
    gens += [Generator(f"du{q}", 1, ODD) for q in range(1, k + 1)]
    return GeneratorTable(gens, allow_d_names=True)


def simplex_integral(forms: SimplexForms, indices: tuple[int, ...], element: Element,
                     method: str = "dirichlet") -> Fraction:
    """Integral over the oriented face spanned by I of the matching form part.

    Components whose form weight differs from len(I) - 1 integrate to zero
    automatically.  method='dirichlet' uses the factorial formula for monomial
    integrals over the simplex; method='iterated' performs nested univariate
    integrals with symbolic bounds.  Both are exact.
    """
    I = tuple(indices)
    if len(set(I)) != len(I):
        raise AlgebraError("face indices must be distinct")
    if any(not 0 <= i <= forms.n for i in I):
        raise AlgebraError("vertex index out of range")
    if method not in ("dirichlet", "iterated"):
        raise AlgebraError(f"unknown integration method {method!r}")
    k = len(I) - 1
    if k == 0:
        total = Fraction(0)
        for mono, c in element.terms.items():
            if forms.form_weight_of(mono) == 0:
                total += c * _vertex_monomial_value(forms, mono, I[0])
        return total
    total = Fraction(0)
    for mono, c in element.terms.items():
        if forms.form_weight_of(mono) != k:
            continue
        key = (I, mono, method)
        cached = forms._integral_cache.get(key)
        if cached is None:
            cached = _monomial_face_integral(forms, I, mono, method)
            forms._integral_cache[key] = cached
        total += c * cached
    return total


def _vertex_monomial_value(forms: SimplexForms, mono: tuple[int, ...], vertex: int) -> Fraction:
    value = Fraction(1)
    for j in range(1, forms.n + 1):
        e = mono[j - 1]
        if e:
            if j != vertex:
                return Fraction(0)
    if vertex != 0:
        return Fraction(1)
    return Fraction(1) if all(e == 0 for e in mono[: forms.n]) else Fraction(0)


def _monomial_face_integral(forms: SimplexForms, I: tuple[int, ...],
                            mono: tuple[int, ...], method: str) -> Fraction:
    k = len(I) - 1
    U = _integration_table(k)
    images: dict[str, Element] = {}
    u_elems = [Element.generator(U, f"u{q}") for q in range(1, k + 1)]
    du_elems = [Element.generator(U, f"du{q}") for q in range(1, k + 1)]
    base = Element.one(U)
    dbase = Element.zero(U)
    for u in u_elems:
        base = base - u
    for du in du_elems:
        dbase = dbase - du
    param_t: dict[int, Element] = {I[0]: base}
    param_dt: dict[int, Element] = {I[0]: dbase}
    for q in range(1, k + 1):
        param_t[I[q]] = u_elems[q - 1]
        param_dt[I[q]] = du_elems[q - 1]
    for j in range(1, forms.n + 1):
        images[f"t{j}"] = param_t.get(j, Element.zero(U))
        images[f"dt{j}"] = param_dt.get(j, Element.zero(U))
    sub = AlgebraMap(forms.table, U, images, check=False)
    pulled = sub(Element.monomial(forms.table, mono))
    top = (0,) * k + (1,) * k
    coeff_terms = {}
    for m, c in pulled.terms.items():
        if m[k:] == top[k:]:
            coeff_terms[m[:k] + (0,) * k] = c
    coeff = Element(U, coeff_terms)
    if coeff.is_zero():
        return Fraction(0)
    if method == "dirichlet":
        total = Fraction(0)
        for m, c in coeff.terms.items():
            exps = m[:k]
            num = 1
            for e in exps:
                num *= math.factorial(e)
            total += c * Fraction(num, math.factorial(sum(exps) + k))
        return total
    value = coeff
    for q in range(k, 0, -1):
        upper = Element.one(U)
        for r in range(1, q):
            upper = upper - u_elems[r - 1]
        value = integrate(value, f"u{q}", 0, upper)
    return value.constant_term()


# -- Whitney projection and the simplicial homotopy -----------------------------


def whitney_projection(forms: SimplexForms, element: Element) -> Element:
    """P = sum_I w_I * integral_I; idempotent chain map onto the Whitney span."""
    out = Element.zero(forms.table)
    for mono, c in element.terms.items():
        cached = forms._p_cache.get(mono)
        if cached is None:
            cached = _projection_of_monomial(forms, mono)
            forms._p_cache[mono] = cached
        out = out + cached * c
    return out


def _projection_of_monomial(forms: SimplexForms, mono: tuple[int, ...]) -> Element:
    k = forms.form_weight_of(mono)
    if k > forms.n:
        return Element.zero(forms.table)
    elem = Element.monomial(forms.table, mono)
    out = Element.zero(forms.table)
    for I in whitney_tuples(forms.n, k):
        value = simplex_integral(forms, I, elem)
        if value:
            out = out + whitney(forms, I) * value
    return out


def dilation(forms: SimplexForms, i: int) -> tuple[Cylinder, AlgebraMap]:
    """The straight-line pullback toward vertex i, as a map into Omega_n[u, du].

    t_j maps to u t_j + (1 - u) delta_ij; at u = 1 this is the identity and at
    u = 0 it is evaluation at the vertex.
    """
    if not 0 <= i <= forms.n:
        raise AlgebraError("vertex index out of range")
    cached = forms._dilation_cache.get(i)
    if cached is not None:
        return cached
    cyl = Cylinder(forms.dga, var="u")
    u = cyl.t()
    du = cyl.dt()
    one = Element.one(cyl.table)
    images: dict[str, Element] = {}
    for j in range(1, forms.n + 1):
        tj = cyl.include(forms.t(j))
        dtj = cyl.include(forms.dt(j))
        img = u * tj
        dimg = du * tj + u * dtj
        if j == i:
            img = img + (one - u)
            dimg = dimg - du
        images[f"t{j}"] = img
        images[f"dt{j}"] = dimg
    phi = AlgebraMap(forms.table, cyl.table, images, check=False)
    forms._dilation_cache[i] = (cyl, phi)
    return cyl, phi


def dilation_homotopy(forms: SimplexForms, i: int, element: Element) -> Element:
    """h^i = int_0^1 (d/du) dilation_i; h^i d + d h^i = id - (vertex i)."""
    out = Element.zero(forms.table)
    for mono, c in element.terms.items():
        key = (i, mono)
        cached = forms._h_cache.get(key)
        if cached is None:
            cyl, phi = dilation(forms, i)
            value = cyl.integrate_over(phi(Element.monomial(forms.table, mono)))
            forms._h_cache[key] = value
            cached = value
        out = out + cached * c
    return out


def vertex_projection(forms: SimplexForms, i: int, element: Element) -> Element:
    """Evaluation at vertex i, as a scalar-valued idempotent into Omega_n."""
    return Element.scalar(forms.table, forms.vertex_value(element, i))


def dupont_homotopy(forms: SimplexForms, element: Element) -> Element:
    """The simplicial contraction s with d s + s d = id - P."""
    out = Element.zero(forms.table)
    for mono, c in element.terms.items():
        cached = forms._s_cache.get(mono)
        if cached is None:
            cached = _dupont_of_monomial(forms, mono)
            forms._s_cache[mono] = cached
        out = out + cached * c
    return out


def _dupont_of_monomial(forms: SimplexForms, mono: tuple[int, ...]) -> Element:
    out = Element.zero(forms.table)
    for k in range(0, forms.n):
        sign = _DUPONT_SIGN(k)
        for I in whitney_tuples(forms.n, k):
            value = Element.monomial(forms.table, mono)
            for vertex in I:
                value = dilation_homotopy(forms, vertex, value)
                if value.is_zero():
                    break
            if not value.is_zero():
                out = out + whitney(forms, I) * value * sign
    return out


def dupont_defect(forms: SimplexForms, element: Element) -> Element:
    """d s + s d + P - id, applied to an element; identically zero."""
    s = dupont_homotopy
    return (
        forms.d(s(forms, element))
        + s(forms, forms.d(element))
        + whitney_projection(forms, element)
        - element
    )


def poincare_witness(forms: SimplexForms, element: Element) -> Element:
    """W = s + kappa P with kappa the cochain contraction toward vertex 0.

    For closed omega of positive form weight, d(W omega) = omega exactly; the
    underlying operator identity is d W + W d = id - e0 P with e0 the
    evaluation of the 0-form part at vertex 0.
    """
    out = dupont_homotopy(forms, element)
    for k in range(1, forms.n + 1):
        for I in whitney_tuples(forms.n, k):
            if I[0] != 0:
                continue
            value = simplex_integral(forms, I, element)
            if value:
                out = out + whitney(forms, I[1:]) * value
    return out


def poincare_defect(forms: SimplexForms, element: Element) -> Element:
    """d W + W d + e0 P - id applied to an element; identically zero."""
    W = poincare_witness
    e0 = simplex_integral(forms, (0,), whitney_projection(forms, element))
    return (
        forms.d(W(forms, element))
        + W(forms, forms.d(element))
        + Element.scalar(forms.table, e0)
        - element
    )


# -- tensoring with coefficients -------------------------------------------------


class TensorForms:
    """B tensor Omega_n for a coefficient dg algebra B."""

    def __init__(self, coefficients: DGAlgebra, n: int):
        self.coefficients = coefficients
        self.n = n
        self.forms = simplex_forms(n)
        base = coefficients.table
        for g in base.generators:
            if g.name in self.forms.table.index:
                raise AlgebraError(
                    f"coefficient generator {g.name!r} collides with a simplex variable"
                )
        gens = list(base.generators) + list(self.forms.table.generators)
        self.table = GeneratorTable(gens, allow_d_names=True)
        self.nbase = len(base)
        images: dict[str, Element] = {}
        for g in base.generators:
            images[g.name] = self.include_base(coefficients.differential.image_of(g.name))
        for i in range(1, n + 1):
            images[f"t{i}"] = Element.generator(self.table, f"dt{i}")
        self.differential = Derivation(self.table, images, 1, ODD)
        self.dga = DGAlgebra(self.table, self.differential)
        self._face_cache: dict[int, AlgebraMap] = {}

    def include_base(self, element: Element) -> Element:
        if element.table != self.coefficients.table:
            raise AlgebraError("element is not over the coefficient table")
        pad = (0,) * (2 * self.n)
        return Element(self.table, {m + pad: c for m, c in element.terms.items()})

    def include_forms(self, element: Element) -> Element:
        if element.table != self.forms.table:
            raise AlgebraError("element is not over the simplex table")
        pad = (0,) * self.nbase
        return Element(self.table, {pad + m: c for m, c in element.terms.items()})

    def face_restriction(self, i: int) -> AlgebraMap:
        """Restrict to the facet opposite vertex i, in B tensor Omega_{n-1}."""
        cached = self._face_cache.get(i)
        if cached is None:
            target = tensor_forms(self.coefficients, self.n - 1)
            cached = _operator_pullback_tensor(self, target, face_tuple(self.n, i))
            self._face_cache[i] = cached
        return cached


@lru_cache(maxsize=None)
def tensor_forms(coefficients: DGAlgebra, n: int) -> TensorForms:
    return TensorForms(coefficients, n)


def _operator_pullback_tensor(src: TensorForms, dst: TensorForms,
                              phi: tuple[int, ...]) -> AlgebraMap:
    fmap = pullback(phi, src.forms, dst.forms)
    images: dict[str, Element] = {}
    for g in src.coefficients.table.generators:
        images[g.name] = Element.generator(dst.table, g.name)
    for k in range(1, src.n + 1):
        images[f"t{k}"] = dst.include_forms(fmap.image_of(f"t{k}"))
        images[f"dt{k}"] = dst.include_forms(fmap.image_of(f"dt{k}"))
    return AlgebraMap(src.table, dst.table, images, check=False)


# The zero algebra (1 = 0) is terminal; its cotensor with any simplicial set
# is again the zero algebra.  Passing this sentinel to the cotensor routines
# reports zero dimensions everywhere without building any table.
ZERO_ALGEBRA = "zero"


def _facet_list(n: int, shape: str, horn_vertex: int | None) -> list[int]:
    if shape == "boundary":
        return list(range(n + 1))
    if shape == "horn":
        if horn_vertex is None or not 0 <= horn_vertex <= n:
            raise AlgebraError("horn vertex out of range")
        return [j for j in range(n + 1) if j != horn_vertex]
    raise AlgebraError(f"unknown shape {shape!r}")


class SubShapeCotensor:
    """B^K for K the boundary or a horn of the n-simplex, via face equalizers.

    An element is a family (w_j) over the facets of K, compatible along the
    shared (n-2)-faces.  Per bidegree and degree cap this is the exact kernel
    of a rational constraint matrix.
    """

    def __init__(self, coefficients: DGAlgebra, n: int, shape: str,
                 horn_vertex: int | None = None):
        if n < 1:
            raise AlgebraError("boundary and horn cotensors need n >= 1")
        self.coefficients = coefficients
        self.n = n
        self.shape = shape
        self.horn_vertex = horn_vertex
        self.facets = _facet_list(n, shape, horn_vertex)
        self.facet_forms = tensor_forms(coefficients, n - 1)
        self.overlap_forms = tensor_forms(coefficients, n - 2) if n >= 2 else None
        self._restrictions: dict[tuple[int, int], AlgebraMap] = {}

    def _restriction(self, facet: int, face: int) -> AlgebraMap:
        key = (facet, face)
        cached = self._restrictions.get(key)
        if cached is None:
            phi = face_tuple(self.n - 1, face)
            cached = _operator_pullback_tensor(self.facet_forms, self.overlap_forms, phi)
            self._restrictions[key] = cached
        return cached

    def facet_basis(self, weight: int, parity: int, cap: int) -> list[tuple[int, ...]]:
        return monomial_basis(self.facet_forms.table, weight, parity, cap)

    def basis(self, weight: int, parity: int, cap: int) -> list[list[Element]]:
        """Compatible families as lists of facet components."""
        vectors, fb = self._kernel(weight, parity, cap)
        families = []
        for vec in vectors:
            family = []
            for fi in range(len(self.facets)):
                terms = {}
                for bi, mono in enumerate(fb):
                    c = vec[fi * len(fb) + bi]
                    if c != 0:
                        terms[mono] = c
                family.append(Element(self.facet_forms.table, terms))
            families.append(family)
        return families

    def dimension(self, weight: int, parity: int, cap: int) -> int:
        vectors, _ = self._kernel(weight, parity, cap)
        return len(vectors)

    def _kernel(self, weight: int, parity: int, cap: int):
        fb = self.facet_basis(weight, parity, cap)
        nfac = len(self.facets)
        ncols = nfac * len(fb)
        if self.n < 2 or not fb:
            return [linalg.unit_vector(ncols, j) for j in range(ncols)], fb
        ob = monomial_basis(self.overlap_forms.table, weight, parity, cap)
        oidx = {m: i for i, m in enumerate(ob)}
        rows: list[list[Fraction]] = []
        for a in range(nfac):
            for b in range(a + 1, nfac):
                j, jp = self.facets[a], self.facets[b]
                ra = self._restriction(j, jp - 1)
                rb = self._restriction(jp, j)
                block = [[Fraction(0)] * ncols for _ in range(len(ob))]
                for bi, mono in enumerate(fb):
                    elem = Element.monomial(self.facet_forms.table, mono)
                    va = ra(elem)
                    vb = rb(elem)
                    for m, c in va.terms.items():
                        block[oidx[m]][a * len(fb) + bi] += c
                    for m, c in vb.terms.items():
                        block[oidx[m]][b * len(fb) + bi] -= c
                rows.extend(block)
        return linalg.nullspace(rows, ncols), fb

    def restriction_vector(self, element: Element, weight: int, parity: int, cap: int):
        """Coordinates of the facet restrictions of a global form."""
        fb = self.facet_basis(weight, parity, cap)
        fidx = {m: i for i, m in enumerate(fb)}
        total = tensor_forms(self.coefficients, self.n)
        vec = [Fraction(0)] * (len(self.facets) * len(fb))
        for fi, j in enumerate(self.facets):
            restricted = total.face_restriction(j)(element)
            for m, c in restricted.terms.items():
                if m not in fidx:
                    raise AlgebraError("restriction leaves the truncated basis")
                vec[fi * len(fb) + fidx[m]] = c
        return vec


def filling_report(coefficients, n: int, shape: str, horn_vertex: int | None,
                   w_min: int, w_max: int, cap: int, max_extra: int = 3) -> dict:
    """Check surjectivity of B tensor Omega_n onto the sub-shape cotensor.

    For each bidegree in the window, every compatible family of total degree
    at most cap must be the restriction of a global form; the domain degree
    cap escalates up to cap + max_extra before reporting failure.
    """
    out: dict = {
        "shape": shape,
        "n": n,
        "horn_vertex": horn_vertex,
        "window": [w_min, w_max],
        "degree_cap": cap,
        "entries": [],
        "all_surjective": True,
    }
    if coefficients == ZERO_ALGEBRA:
        for w in range(w_min, w_max + 1):
            for p in (EVEN, ODD):
                out["entries"].append(
                    {"weight": w, "parity": parity_name(p), "target_dim": 0,
                     "surjective": True, "cap_used": cap}
                )
        return out
    cot = SubShapeCotensor(coefficients, n, shape, horn_vertex)
    total = tensor_forms(coefficients, n)
    for w in range(w_min, w_max + 1):
        for p in (EVEN, ODD):
            targets, fb = cot._kernel(w, p, cap)
            entry = {"weight": w, "parity": parity_name(p),
                     "target_dim": len(targets), "surjective": False, "cap_used": None}
            if not targets:
                entry["surjective"] = True
                entry["cap_used"] = cap
                out["entries"].append(entry)
                continue
            for extra in range(0, max_extra + 1):
                cap_dom = cap + extra
                fb_big = cot.facet_basis(w, p, cap_dom)
                big_idx = {m: i for i, m in enumerate(fb_big)}
                nfac = len(cot.facets)
                ncols_big = nfac * len(fb_big)
                dom_basis = monomial_basis(total.table, w, p, cap_dom)
                columns = []
                for mono in dom_basis:
                    elem = Element.monomial(total.table, mono)
                    vec = [Fraction(0)] * ncols_big
                    ok = True
                    for fi, j in enumerate(cot.facets):
                        restricted = total.face_restriction(j)(elem)
                        for m, c in restricted.terms.items():
                            if m not in big_idx:
                                ok = False
                                break
                            vec[fi * len(fb_big) + big_idx[m]] = c
                        if not ok:
                            break
                    if not ok:
                        raise AlgebraError("face restriction left the truncated basis")
                    columns.append(vec)
                padded_targets = []
                for tvec in targets:
                    big = [Fraction(0)] * ncols_big
                    for fi in range(nfac):
                        for bi, mono in enumerate(fb):
                            c = tvec[fi * len(fb) + bi]
                            if c != 0:
                                big[fi * len(fb_big) + big_idx[mono]] = c
                    padded_targets.append(big)
                mat = [[columns[j][i] for j in range(len(columns))]
                       for i in range(ncols_big)]
                aug = [mat[i] + [tv[i] for tv in padded_targets]
                       for i in range(ncols_big)]
                if linalg.rank(mat) == linalg.rank(aug):
                    entry["surjective"] = True
                    entry["cap_used"] = cap_dom
                    break
            if not entry["surjective"]:
                out["all_surjective"] = False
            out["entries"].append(entry)
    return out


def cotensor_report(coefficients, n: int, shape: str, horn_vertex: int | None,
                    w_min: int, w_max: int, cap: int) -> dict:
    """Dimensions per bidegree of B^K on truncated bases."""
    out: dict = {
        "shape": shape,
        "n": n,
        "horn_vertex": horn_vertex,
        "window": [w_min, w_max],
        "degree_cap": cap,
        "entries": [],
    }
    if coefficients == ZERO_ALGEBRA:
        for w in range(w_min, w_max + 1):
            for p in (EVEN, ODD):
                out["entries"].append(
                    {"weight": w, "parity": parity_name(p), "dim": 0}
                )
        return out
    if shape == "simplex":
        total = tensor_forms(coefficients, n)
        for w in range(w_min, w_max + 1):
            for p in (EVEN, ODD):
                dim = len(monomial_basis(total.table, w, p, cap))
                out["entries"].append(
                    {"weight": w, "parity": parity_name(p), "dim": dim}
                )
        return out
    cot = SubShapeCotensor(coefficients, n, shape, horn_vertex)
    for w in range(w_min, w_max + 1):
        for p in (EVEN, ODD):
            out["entries"].append(
                {"weight": w, "parity": parity_name(p),
                 "dim": cot.dimension(w, p, cap)}
            )
    return out
