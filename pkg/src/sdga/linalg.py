"""Exact linear algebra over the rationals.

Matrices are lists of rows of Fractions.  A matrix represents a linear map
column-wise: column j is the image of the j-th source basis vector.  Nothing
here is clever; the point is that every pivot decision is exact, so ranks,
kernels and solutions carry no floating-point doubt.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = list[list[Fraction]]
Vector = list[Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(nrows: int, ncols: int) -> Matrix:
    return [[ZERO] * ncols for _ in range(nrows)]


def identity(n: int) -> Matrix:
    mat = zeros(n, n)
    for i in range(n):
        mat[i][i] = ONE
    return mat


def copy_matrix(mat: Matrix) -> Matrix:
    return [row[:] for row in mat]


def mat_vec(mat: Matrix, vec: Vector) -> Vector:
    return [sum((row[j] * vec[j] for j in range(len(vec))), ZERO) for row in mat]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        for k in range(inner):
            aik = row[k]
            if aik == 0:
                continue
            brow = b[k]
            orow = out[i]
            for j in range(cols):
                if brow[j] != 0:
                    orow[j] += aik * brow[j]
    return out


def mats_agree(a: Matrix, b: Matrix) -> bool:
    """Entrywise equality with missing rows and columns read as zero.

    Products through a zero-dimensional space degenerate to [] or [[]] and
    lose their nominal shape; as linear maps they are still zero, and this
    comparison treats them that way.
    """
    for i in range(max(len(a), len(b))):
        row_a = a[i] if i < len(a) else []
        row_b = b[i] if i < len(b) else []
        for j in range(max(len(row_a), len(row_b))):
            va = row_a[j] if j < len(row_a) else ZERO
            vb = row_b[j] if j < len(row_b) else ZERO
            if va != vb:
                return False
    return True


def rref(mat: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; returns (rref matrix, pivot column list)."""
    m = copy_matrix(mat)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        pivot_row = None
        for r in range(row, nrows):
            if m[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[row], m[pivot_row] = m[pivot_row], m[row]
        inv = ONE / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for r in range(nrows):
            if r != row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    return m, pivots


def rank(mat: Matrix) -> int:
    return len(rref(mat)[1])


def nullspace(mat: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of the right kernel {x : mat @ x = 0}.

    Pass ncols explicitly when mat may have zero rows; a 0 x n matrix is just
    [] as a list of rows and would otherwise read as 0 x 0.
    """
    nrows = len(mat)
    if ncols is None:
        ncols = len(mat[0]) if nrows else 0
    if ncols == 0:
        return []
    if nrows == 0:
        return [unit_vector(ncols, j) for j in range(ncols)]
    reduced, pivots = rref(mat)
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [ZERO] * ncols
        vec[free] = ONE
        for r, col in enumerate(pivots):
            vec[col] = -reduced[r][free]
        basis.append(vec)
    return basis


def unit_vector(n: int, j: int) -> Vector:
    vec = [ZERO] * n
    vec[j] = ONE
    return vec


def solve(mat: Matrix, rhs: Vector) -> Vector | None:
    """One exact solution of mat @ x = rhs, or None when inconsistent."""
    sol, _ = solve_with_certificate(mat, rhs)
    return sol


def solve_with_certificate(mat: Matrix, rhs: Vector) -> tuple[Vector | None, dict]:
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    aug = [mat[i][:] + [rhs[i]] for i in range(nrows)]
    reduced, pivots = rref(aug)
    rank_aug = len(pivots)
    if pivots and pivots[-1] == ncols:
        cert = {"rank": rank_aug - 1, "rank_augmented": rank_aug, "consistent": False}
        return None, cert
    sol = [ZERO] * ncols
    for r, col in enumerate(pivots):
        sol[col] = reduced[r][ncols]
    cert = {"rank": rank_aug, "rank_augmented": rank_aug, "consistent": True}
    return sol, cert


class RowSpan:
    """Incrementally maintained row space with exact reduction.

    add() returns True when the vector enlarged the span, which makes it handy
    both for rank bookkeeping and for picking representatives independent of a
    previously seeded subspace.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[Vector] = []
        self.pivots: list[int] = []

    def reduce(self, vec: Vector) -> Vector:
        v = vec[:]
        for row, piv in zip(self.rows, self.pivots):
            if v[piv] != 0:
                factor = v[piv]
                v = [a - factor * b for a, b in zip(v, row)]
        return v

    def add(self, vec: Vector) -> bool:
        v = self.reduce(vec)
        piv = next((j for j, x in enumerate(v) if x != 0), None)
        if piv is None:
            return False
        inv = ONE / v[piv]
        v = [x * inv for x in v]
        for i, row in enumerate(self.rows):
            if row[piv] != 0:
                factor = row[piv]
                self.rows[i] = [a - factor * b for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(piv)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


def quotient_representatives(kernel: list[Vector], image: list[Vector], ncols: int) -> list[Vector]:
    """Vectors from `kernel` that are independent modulo span(image)."""
    span = RowSpan(ncols)
    for vec in image:
        span.add(vec)
    reps: list[Vector] = []
    for vec in kernel:
        if span.add(vec):
            reps.append(vec)
    return reps
