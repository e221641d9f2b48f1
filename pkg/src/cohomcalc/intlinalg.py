"""Exact integer matrix normal forms and finitely generated abelian groups.

Matrices are dense lists of rows of arbitrary-precision Python ints.  The
module provides row-style Hermite normal form, Smith normal form with both
transforms, integer linear solving, kernel bases, fraction-free (Bareiss)
determinants, and the canonical form of a finitely generated abelian group
as free rank plus a divisibility chain of invariant factors.

Sizes in this package stay tiny (well under 50x50), so the classical
algorithms with intermediate reduction are plenty.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


Matrix = list  # list of rows; all rows of equal length


class MatrixShapeError(ValueError):
    """Input dimensions do not match the operation."""


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def copy(M: Matrix) -> Matrix:
    return [row[:] for row in M]


def shape(M: Matrix):
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(r) != cols for r in M):
        raise MatrixShapeError("ragged matrix")
    return rows, cols


def transpose(M: Matrix) -> Matrix:
    rows, cols = shape(M)
    return [[M[i][j] for i in range(rows)] for j in range(cols)]


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    ra, ca = shape(A)
    rb, cb = shape(B)
    if ca != rb:
        raise MatrixShapeError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    out = zeros(ra, cb)
    for i in range(ra):
        Ai = A[i]
        row = out[i]
        for k in range(ca):
            a = Ai[k]
            if a:
                Bk = B[k]
                for j in range(cb):
                    row[j] += a * Bk[j]
    return out


def mat_vec(M: Matrix, v: list) -> list:
    rows, cols = shape(M)
    if len(v) != cols:
        raise MatrixShapeError("vector length does not match column count")
    return [sum(M[i][j] * v[j] for j in range(cols)) for i in range(rows)]


def _xgcd(a: int, b: int):
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b), g >= 0."""
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def hermite_normal_form(M: Matrix):
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular, U*M == H, pivots positive, entries
    above each pivot reduced into [0, pivot).

    >>> H, U = hermite_normal_form([[2, 4], [1, 3]])
    >>> H
    [[1, 1], [0, 2]]
    >>> mat_mul(U, [[2, 4], [1, 3]]) == H
    True
    """
    rows, cols = shape(M)
    H = copy(M)
    U = identity(rows)
    pivot_row = 0
    for col in range(cols):
        if pivot_row >= rows:
            break
        # clear the column below pivot_row with gcd row combinations
        for i in range(pivot_row + 1, rows):
            if H[i][col] == 0:
                continue
            a, b = H[pivot_row][col], H[i][col]
            if a == 0:
                H[pivot_row], H[i] = H[i], H[pivot_row]
                U[pivot_row], U[i] = U[i], U[pivot_row]
                continue
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            rp, ri = H[pivot_row], H[i]
            up, ui = U[pivot_row], U[i]
            for j in range(cols):
                rp[j], ri[j] = x * rp[j] + y * ri[j], -bg * rp[j] + ag * ri[j]
            for j in range(rows):
                up[j], ui[j] = x * up[j] + y * ui[j], -bg * up[j] + ag * ui[j]
        if H[pivot_row][col] == 0:
            continue
        if H[pivot_row][col] < 0:
            H[pivot_row] = [-v for v in H[pivot_row]]
            U[pivot_row] = [-v for v in U[pivot_row]]
        piv = H[pivot_row][col]
        for i in range(pivot_row):
            q = H[i][col] // piv
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[pivot_row])]
                U[i] = [a - q * b for a, b in zip(U[i], U[pivot_row])]
        pivot_row += 1
    return H, U


def hnf_pivots(H: Matrix) -> list:
    """(row, column) positions of the pivots of a matrix in row HNF."""
    out = []
    rows, cols = shape(H)
    for i in range(rows):
        for j in range(cols):
            if H[i][j]:
                out.append((i, j))
                break
    return out


def smith_normal_form(M: Matrix):
    """Smith normal form with transforms.

    Returns (D, U, V) with U, V unimodular, U*M*V == D, D diagonal with
    d1 | d2 | ... and all di >= 0.

    >>> D, U, V = smith_normal_form([[2, 0], [0, 3]])
    >>> [D[0][0], D[1][1]]
    [1, 6]
    """
    rows, cols = shape(M)
    D = copy(M)
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def row_combine(i, j, x, y, bg, ag):
        # (row_i, row_j) <- (x*row_i + y*row_j, -bg*row_i + ag*row_j)
        ri, rj = D[i], D[j]
        ui, uj = U[i], U[j]
        for k in range(cols):
            ri[k], rj[k] = x * ri[k] + y * rj[k], -bg * ri[k] + ag * rj[k]
        for k in range(rows):
            ui[k], uj[k] = x * ui[k] + y * uj[k], -bg * ui[k] + ag * uj[k]

    def col_combine(i, j, x, y, bg, ag):
        for r in D:
            r[i], r[j] = x * r[i] + y * r[j], -bg * r[i] + ag * r[j]
        for r in V:
            r[i], r[j] = x * r[i] + y * r[j], -bg * r[i] + ag * r[j]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # find a nonzero entry of least magnitude in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(D[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            # clear column t
            for i in range(t + 1, rows):
                if D[i][t]:
                    a, b = D[t][t], D[i][t]
                    if b % a == 0:
                        q = b // a
                        D[i] = [u - q * v for u, v in zip(D[i], D[t])]
                        U[i] = [u - q * v for u, v in zip(U[i], U[t])]
                    else:
                        g, x, y = _xgcd(a, b)
                        row_combine(t, i, x, y, b // g, a // g)
            # clear row t
            dirty = False
            for j in range(t + 1, cols):
                if D[t][j]:
                    a, b = D[t][t], D[t][j]
                    if b % a == 0:
                        q = b // a
                        for r in D:
                            r[j] -= q * r[t]
                        for r in V:
                            r[j] -= q * r[t]
                    else:
                        g, x, y = _xgcd(a, b)
                        col_combine(t, j, x, y, b // g, a // g)
                        dirty = True
            if not dirty and all(D[i][t] == 0 for i in range(t + 1, rows)):
                break
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
        # enforce divisibility: d_t must divide the trailing block
        piv = D[t][t]
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if D[i][j] % piv:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            D[t] = [u + v for u, v in zip(D[t], D[offender])]
            U[t] = [u + v for u, v in zip(U[t], U[offender])]
            continue  # redo this pivot
        t += 1
    return D, U, V


def determinant(M: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination.

    >>> determinant([[78, 45], [45, 26]])
    3
    """
    rows, cols = shape(M)
    if rows != cols:
        raise MatrixShapeError("determinant of a non-square matrix")
    n = rows
    if n == 0:
        return 1
    A = copy(M)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            A[i][k] = 0
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def solve_integer(M: Matrix, b: list):
    """Some integer solution x of M*x == b, or None when no solution exists.

    >>> solve_integer([[2]], [4])
    [2]
    >>> solve_integer([[2]], [3]) is None
    True
    """
    rows, cols = shape(M)
    if len(b) != rows:
        raise MatrixShapeError("right-hand side length does not match row count")
    D, U, V = smith_normal_form(M)
    c = mat_vec(U, list(b))
    y = [0] * cols
    for i in range(rows):
        d = D[i][i] if i < cols else 0
        if d:
            if c[i] % d:
                return None
            if i < cols:
                y[i] = c[i] // d
        elif c[i]:
            return None
    return mat_vec(V, y)


def kernel_basis(M: Matrix) -> list:
    """Basis (as column vectors) of the integer kernel {x : M*x == 0}."""
    rows, cols = shape(M)
    D, _, V = smith_normal_form(M)
    rank = sum(1 for i in range(min(rows, cols)) if D[i][i])
    return [[V[i][j] for i in range(cols)] for j in range(rank, cols)]


@dataclass(frozen=True)
class FgAbelianGroup:
    """Finitely generated abelian group in canonical form.

    ``torsion`` is the divisibility chain of invariant factors d1 | d2 | ...
    with every di > 1; the representation is unique.
    """

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        prev = 1
        for d in self.torsion:
            if d <= 1:
                raise ValueError("invariant factors must be > 1")
            if d % prev:
                raise ValueError("invariant factors must form a divisibility chain")
            prev = d

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel(M: Matrix) -> FgAbelianGroup:
    """Canonical form of Z^rows / (column span of M).

    >>> str(cokernel([[15], [-26]]))
    'Z'
    >>> str(cokernel([[3]]))
    'Z/3'
    """
    rows, cols = shape(M) if M else (0, 0)
    if rows == 0:
        return FgAbelianGroup(0)
    if cols == 0:
        return FgAbelianGroup(rows)
    D, _, _ = smith_normal_form(M)
    diag = [D[i][i] for i in range(min(rows, cols))]
    rank = sum(1 for d in diag if d)
    torsion = tuple(d for d in diag if d > 1)
    return FgAbelianGroup(rows - rank, torsion)


def is_unimodular(M: Matrix) -> bool:
    rows, cols = shape(M)
    return rows == cols and determinant(M) in (1, -1)


def is_primitive(M: Matrix) -> bool:
    """True when the rows of M extend to a basis of the ambient lattice.

    Equivalent to the Smith normal form having full row rank with all
    invariant factors equal to 1.
    """
    rows, cols = shape(M)
    if rows == 0:
        return True
    if rows > cols:
        return False
    D, _, _ = smith_normal_form(M)
    return all(D[i][i] == 1 for i in range(rows))


def complete_to_unimodular(F: Matrix, n: int) -> Matrix:
    """Rows extending the primitive rows of F to a basis of Z^n."""
    rows = len(F)
    if rows == 0:
        return identity(n)
    if not is_primitive(F):
        raise ValueError("rows are not primitive, cannot complete")
    _, _, V = smith_normal_form(F)
    # F*V == [I | 0] up to units, so the last n-rows columns of V span a
    # complement; their coordinates w.r.t. the standard basis come from V^-1.
    Vinv = _unimodular_inverse(V)
    return [Vinv[i] for i in range(rows, n)]


def _unimodular_inverse(M: Matrix) -> Matrix:
    H, U = hermite_normal_form(M)
    if H != identity(len(M)):
        raise ValueError("matrix is not unimodular")
    return U


def content(values) -> int:
    """Non-negative gcd of an iterable of integers."""
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
