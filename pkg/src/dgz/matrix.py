"""Small dense matrices over a :class:`~dgz.gf.Field`, entries as codes."""
from __future__ import annotations

from .errors import SingularMatrix
from .gf import Field, FieldElem

Matrix = tuple[tuple[int, ...], ...]


def as_codes(field: Field, A) -> Matrix:
    """Accept rows of ints (codes) or FieldElems and return a tuple matrix."""
    rows = []
    for row in A:
        out = []
        for a in row:
            if isinstance(a, FieldElem):
                if a.field != field:
                    from .errors import FieldMismatch

                    raise FieldMismatch(f"matrix entry over {a.field!r}, expected {field!r}")
                out.append(a.value)
            else:
                out.append(int(a))
        rows.append(tuple(out))
    return tuple(rows)


def identity(n: int = 3) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(F: Field, A: Matrix, B: Matrix) -> Matrix:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = 0
            for t in range(k):
                if A[i][t] and B[t][j]:
                    acc = F.add(acc, F.mul(A[i][t], B[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(F: Field, A: Matrix, v) -> tuple[int, ...]:
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return tuple(out)


def det3(F: Field, A: Matrix) -> int:
    """Determinant of a 3x3 matrix by cofactor expansion along the first row."""
    m, a, s = F.mul, F.add, F.sub

    def minor(r1, r2, c1, c2):
        return s(m(A[r1][c1], A[r2][c2]), m(A[r1][c2], A[r2][c1]))

    t0 = m(A[0][0], minor(1, 2, 1, 2))
    t1 = m(A[0][1], minor(1, 2, 0, 2))
    t2 = m(A[0][2], minor(1, 2, 0, 1))
    return a(s(t0, t1), t2)


def elementary_factors(F: Field, A: Matrix) -> list[tuple]:
    """Factor an invertible A as E_1 E_2 ... E_k with elementary E_i.

    Each factor is one of ``("swap", i, j)``, ``("scale", i, c)`` or
    ``("add", i, j, c)``; the last means the matrix ``I + c e_ij``.
    Gaussian elimination gives ``R_k ... R_1 A = I``; the factors are the
    inverses ``R_1^-1, ..., R_k^-1`` in that order.
    """
    n = len(A)
    M = [list(r) for r in A]
    inverses = []
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible")
        if piv != col:
            M[piv], M[col] = M[col], M[piv]
            inverses.append(("swap", col, piv))
        c = M[col][col]
        if c != 1:
            ci = F.inv(c)
            M[col] = [F.mul(ci, x) for x in M[col]]
            inverses.append(("scale", col, c))
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                # R: row_r -= f row_col, inverse adds it back
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[col])]
                inverses.append(("add", r, col, f))
    return inverses


def elementary_matrix(F: Field, op, n: int = 3) -> Matrix:
    M = [list(r) for r in identity(n)]
    if op[0] == "swap":
        _, i, j = op
        M[i], M[j] = M[j], M[i]
    elif op[0] == "scale":
        _, i, c = op
        M[i][i] = c
    else:
        _, i, j, c = op
        M[i][j] = F.add(M[i][j], c)
    return tuple(tuple(r) for r in M)


def mat_inv(F: Field, A: Matrix) -> Matrix:
    n = len(A)
    M = [list(A[i]) + list(identity(n)[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible")
        M[piv], M[col] = M[col], M[piv]
        ci = F.inv(M[col][col])
        M[col] = [F.mul(ci, x) for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[r], M[col])]
    return tuple(tuple(r[n:]) for r in M)


def rank(F: Field, rows) -> int:
    """Rank of an arbitrary rectangular matrix over F."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[piv], M[r] = M[r], M[piv]
        ci = F.inv(M[r][col])
        M[r] = [F.mul(ci, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                f = M[i][col]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def map_entries(A: Matrix, fn) -> Matrix:
    return tuple(tuple(fn(a) for a in row) for row in A)
