"""Dense exact linear algebra over a :class:`~skewcy.scalars.Field`.

Matrices are lists of rows of :class:`Scalar`. Nothing here is clever; the
matrices that occur are at most a few hundred entries on a side.
"""

from __future__ import annotations

from .errors import SingularMatrix
from .scalars import Field, Scalar

Matrix = list[list[Scalar]]


def identity(F: Field, n: int) -> Matrix:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def zeros(F: Field, rows: int, cols: int) -> Matrix:
    return [[F.zero] * cols for _ in range(rows)]


def transpose(M: Matrix) -> Matrix:
    return [list(r) for r in zip(*M)] if M else []


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    F = A[0][0].field
    Bt = transpose(B)
    out = []
    for row in A:
        out.append([_dot(F, row, col) for col in Bt])
    return out


def matvec(A: Matrix, v: list[Scalar]) -> list[Scalar]:
    if not A:
        return []
    F = A[0][0].field
    return [_dot(F, row, v) for row in A]


def _dot(F, u, v):
    acc = F.zero
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def scale(M: Matrix, c) -> Matrix:
    return [[c * x for x in row] for row in M]


def rref(M: Matrix, F: Field) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [list(r) for r in M]
    rows = len(R)
    cols = len(R[0]) if R else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = R[r][c].inverse()
        R[r] = [x * inv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y if y else x for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(M: Matrix, F: Field) -> int:
    return len(rref(M, F)[1])


def nullspace(M: Matrix, F: Field, ncols: int | None = None) -> list[list[Scalar]]:
    """Basis of ``{v : M v = 0}``."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [[F.one if i == j else F.zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(M, F)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve(M: Matrix, b: list[Scalar], F: Field) -> list[Scalar] | None:
    """One solution of ``M x = b`` or ``None`` if inconsistent."""
    ncols = len(M[0]) if M else 0
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = rref(aug, F)
    if ncols in pivots:
        return None
    x = [F.zero] * ncols
    for i, p in enumerate(pivots):
        x[p] = R[i][ncols]
    return x


def inverse(M: Matrix, F: Field) -> Matrix:
    n = len(M)
    aug = [list(row) + e for row, e in zip(M, identity(F, n))]
    R, pivots = rref(aug, F)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in R]


def det(M: Matrix, F: Field) -> Scalar:
    R = [list(r) for r in M]
    n = len(R)
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if R[i][c]), None)
        if piv is None:
            return F.zero
        if piv != c:
            R[c], R[piv] = R[piv], R[c]
            d = -d
        d = d * R[c][c]
        inv = R[c][c].inverse()
        for i in range(c + 1, n):
            if R[i][c]:
                f = R[i][c] * inv
                R[i] = [x - f * y for x, y in zip(R[i], R[c])]
    return d


def mat_equal(A: Matrix, B: Matrix) -> bool:
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb)) for ra, rb in zip(A, B)
    )


def format_matrix(M: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in M]
