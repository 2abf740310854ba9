"""Exact integer and rational matrix helpers.

Matrices are tuples of row tuples and act on column vectors, so
``matvec(M, v)[i] = sum_j M[i][j] * v[j]``.  Entries are Python ints, or
``fractions.Fraction`` where rational arithmetic is unavoidable.  Nothing
in this module (or the package) touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import BoundExceededError

Vec = tuple
Mat = tuple


def vector(entries: Iterable) -> Vec:
    return tuple(entries)


def matrix(rows: Iterable[Iterable]) -> Mat:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_vec(n: int) -> Vec:
    return (0,) * n


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return sum(a * b for a, b in zip(u, v))


def matvec(m: Mat, v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in m)


def matmul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


def add_vec(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub_vec(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def neg_vec(u: Sequence) -> Vec:
    return tuple(-a for a in u)


def scale_vec(c, u: Sequence) -> Vec:
    return tuple(c * a for a in u)


def flat(m: Mat) -> tuple:
    """Row-major flattening, the fixed total order used for canonical reps."""
    return tuple(x for row in m for x in row)


def is_identity(m: Mat) -> bool:
    n = len(m)
    return all(m[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def det(m: Mat):
    """Determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    if any(isinstance(x, Fraction) for row in a for x in row):
        return _det_fraction(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def _det_fraction(a) -> Fraction:
    n = len(a)
    a = [[Fraction(x) for x in row] for row in a]
    result = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            result = -result
        result *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            factor = a[i][k] * inv
            for j in range(k, n):
                a[i][j] -= factor * a[k][j]
    return result


def inv(m: Mat) -> Mat:
    """Exact inverse with Fraction entries; raises on singular input."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(m)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[k], a[pivot] = a[pivot], a[k]
        pv = a[k][k]
        a[k] = [x / pv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                factor = a[i][k]
                a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
    return tuple(tuple(row[n:]) for row in a)


def inv_unimodular(m: Mat) -> Mat:
    """Inverse of an integer matrix with det +-1, returned over the ints."""
    fm = inv(m)
    out = []
    for row in fm:
        irow = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
            irow.append(int(x))
        out.append(tuple(irow))
    return tuple(out)


def costar(m: Mat) -> Mat:
    """Inverse transpose: the induced action on the dual lattice."""
    return transpose(inv_unimodular(m))


def matrix_order(m: Mat, bound: int = 10000) -> int:
    p = m
    for k in range(1, bound + 1):
        if is_identity(p):
            return k
        p = matmul(p, m)
    raise BoundExceededError(f"matrix order exceeds {bound}")


def matrix_power(m: Mat, k: int) -> Mat:
    out = identity(len(m))
    p = m
    while k:
        if k & 1:
            out = matmul(out, p)
        p = matmul(p, p)
        k >>= 1
    return out


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(a: Mat) -> tuple[Mat, Mat, Mat]:
    """Return (S, U, V) with S = U @ a @ V diagonal, nonnegative, and with
    the divisibility chain S[0][0] | S[1][1] | ...; U and V are unimodular.
    """
    n = len(a)
    m = len(a[0]) if n else 0
    s = [list(row) for row in a]
    u = [list(row) for row in identity(n)]
    v = [list(row) for row in identity(m)]

    def row_swap(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def row_addmul(i, j, c):
        s[i] = [x + c * y for x, y in zip(s[i], s[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def col_addmul(i, j, c):
        for r in s:
            r[i] += c * r[j]
        for r in v:
            r[i] += c * r[j]

    def row_negate(i):
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(n, m):
        # pivot: smallest |entry| != 0 in the trailing block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if s[i][j] != 0 and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            row_swap(t, best[0])
        if best[1] != t:
            col_swap(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, n):
                if s[i][t] != 0:
                    q = s[i][t] // s[t][t]
                    row_addmul(i, t, -q)
                    if s[i][t] != 0:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, m):
                if s[t][j] != 0:
                    q = s[t][j] // s[t][t]
                    col_addmul(j, t, -q)
                    if s[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
        if s[t][t] < 0:
            row_negate(t)
        # divisibility fix: pull any non-multiple into the pivot's reach
        offender = None
        for i in range(t + 1, n):
            for j in range(t + 1, m):
                if s[i][j] % s[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_addmul(t, offender, 1)
            continue
        t += 1
    return matrix(s), matrix(u), matrix(v)


def cokernel(rows: Sequence[Sequence[int]], n: int):
    """Structure of Z^n modulo the span of the given row vectors.

    Returns ``(free_rank, divisors, torsion_gens)`` where ``divisors`` are
    the elementary divisors > 1 and ``torsion_gens[i]`` is an integer vector
    whose class has exact order ``divisors[i]``.
    """
    rows = [tuple(r) for r in rows]
    if not rows:
        return n, (), ()
    at = transpose(matrix(rows))  # n x k, columns span the sublattice
    s, u, _v = smith_normal_form(at)
    uinv = inv_unimodular(u)
    k = len(rows)
    divisors = []
    gens = []
    rank = 0
    for i in range(min(n, k)):
        d = s[i][i]
        if d == 0:
            break
        rank += 1
        if d > 1:
            divisors.append(d)
            gens.append(tuple(uinv[r][i] for r in range(n)))
    return n - rank, tuple(divisors), tuple(gens)


def in_lattice(rows: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    """Whether ``vec`` lies in the integer span of the given row vectors."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return all(x == 0 for x in vec)
    at = transpose(matrix(rows))
    s, u, _v = smith_normal_form(at)
    w = matvec(u, tuple(vec))
    k = len(rows)
    n = len(vec)
    for i in range(n):
        d = s[i][i] if i < min(n, k) else 0
        if d == 0:
            if w[i] != 0:
                return False
        elif w[i] % d != 0:
            return False
    return True


def solve_integer(rows: Sequence[Sequence[int]], vec: Sequence[int]):
    """One integer solution x of ``x @ rows = vec``, or None."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return () if all(x == 0 for x in vec) else None
    at = transpose(matrix(rows))
    s, u, v = smith_normal_form(at)
    w = matvec(u, tuple(vec))
    k = len(rows)
    n = len(vec)
    y = [0] * k
    for i in range(n):
        d = s[i][i] if i < min(n, k) else 0
        if d == 0:
            if w[i] != 0:
                return None
        else:
            if w[i] % d != 0:
                return None
            y[i] = w[i] // d
    return matvec(v, tuple(y))


def rational_kernel_dim(m: Mat) -> int:
    n = len(m)
    if n == 0:
        return 0
    cols = len(m[0])
    a = [[Fraction(x) for x in row] for row in m]
    rank = 0
    for j in range(cols):
        pivot = next((i for i in range(rank, n) if a[i][j] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        pv = a[rank][j]
        a[rank] = [x / pv for x in a[rank]]
        for i in range(n):
            if i != rank and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return cols - rank


def solve_rational(columns: Sequence[Sequence], target: Sequence):
    """Coefficients c with sum_i c[i] * columns[i] = target, over Q, or None."""
    k = len(columns)
    n = len(target)
    a = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])]
         for i in range(n)]
    piv_cols = []
    r = 0
    for j in range(k):
        pivot = next((i for i in range(r, n) if a[i][j] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][j]
        a[r] = [x / pv for x in a[r]]
        for i in range(n):
            if i != r and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(j)
        r += 1
    for i in range(r, n):
        if a[i][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for idx, j in enumerate(piv_cols):
        sol[j] = a[idx][k]
    return tuple(sol)


def enumerate_sign_patterns(n: int):
    """All +-1 vectors of length n, in a fixed order (test helper)."""
    return [tuple(p) for p in product((1, -1), repeat=n)]
