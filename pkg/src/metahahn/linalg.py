"""Dense exact matrices over Q, stored as lists of lists of Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from .exact import Q, poly_exact_div, poly_mul, poly_sub, trim

Matrix = List[List[Fraction]]


def zeros(n: int, m: Optional[int] = None) -> Matrix:
    return [[Fraction(0)] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def diag(values: Sequence) -> Matrix:
    out = zeros(len(values))
    for i, v in enumerate(values):
        out[i][i] = Q(v)
    return out


def copy(a: Matrix) -> Matrix:
    return [list(row) for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Matrix, c) -> Matrix:
    c = Q(c)
    return [[c * x for x in row] for row in a]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def lincomb(*pairs) -> Matrix:
    """sum c_i A_i for pairs (c_i, A_i)."""
    out = None
    for c, m in pairs:
        term = scale(m, c)
        out = term if out is None else add(out, term)
    return out


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return sub(matmul(a, b), matmul(b, a))


def anticommutator(a: Matrix, b: Matrix) -> Matrix:
    return add(matmul(a, b), matmul(b, a))


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def max_abs_entry(a: Matrix):
    """(|value|, row, col) of the largest entry; (0, None, None) for a zero matrix."""
    best = (Fraction(0), None, None)
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if abs(x) > best[0]:
                best = (abs(x), i, j)
    return best


def nonzero_entries(a: Matrix) -> list:
    return [(i, j) for i, row in enumerate(a) for j, x in enumerate(row) if x != 0]


def is_lower_hessenberg(a: Matrix) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(i + 2, len(a)))


def is_upper_hessenberg(a: Matrix) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(0, i - 1))


def is_tridiagonal(a: Matrix) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(len(a)) if abs(i - j) > 1)


def is_lower_bidiagonal(a: Matrix) -> bool:
    return all(
        a[i][j] == 0 for i in range(len(a)) for j in range(len(a)) if not (i == j or i == j + 1)
    )


def rref(a: Matrix):
    """Reduced row echelon form and pivot columns."""
    m = copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def nullspace(a: Matrix) -> list:
    """Basis of the right kernel; each vector has a 1 in its free slot."""
    cols = len(a[0])
    m, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(v)
    return basis


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in m]


def det_gauss(a: Matrix) -> Fraction:
    """Determinant by ordinary Gaussian elimination over Q."""
    m = copy(a)
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def _bareiss(m: list, mul, sub_, exact_div, is_zero_, one):
    n = len(m)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if is_zero_(m[k][k]):
            p = next((i for i in range(k + 1, n) if not is_zero_(m[i][k])), None)
            if p is None:
                return None
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(sub_(mul(m[i][j], m[k][k]), mul(m[i][k], m[k][j])), prev)
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else sub_(None, m[n - 1][n - 1])


def det_bareiss(a: Matrix) -> Fraction:
    """Fraction-free (Bareiss) determinant."""
    res = _bareiss(
        copy(a),
        lambda x, y: x * y,
        lambda x, y: -y if x is None else x - y,
        lambda x, y: x / y,
        lambda x: x == 0,
        Fraction(1),
    )
    return Fraction(0) if res is None else res


def charpoly(a: Matrix) -> list:
    """Coefficients (low to high) of det(t I - A), by Bareiss elimination over Q[t]."""
    n = len(a)
    m = [[trim([-a[i][j], Fraction(1)] if i == j else [-a[i][j]]) for j in range(n)] for i in range(n)]
    res = _bareiss(
        m,
        poly_mul,
        lambda x, y: poly_sub([], y) if x is None else poly_sub(x, y),
        poly_exact_div,
        lambda x: not x,
        [Fraction(1)],
    )
    return [] if res is None else trim(res)
