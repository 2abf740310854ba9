"""Brute-force ground truth over explicit finite fields.

Everything here is deliberately independent of the lattice machinery: fields
are polynomial residue rings over a deterministically chosen irreducible
polynomial, matrix groups are generated by explicit transvections and
verified against the classical order formulas, and conjugacy classes come
from plain orbit refinement.  No character theory, no shortcuts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import intmat
from .errors import BoundExceededError, DatumError, FinweilError
from .finite_torus import prime_of

DEFAULT_GROUP_BOUND = 10**6
DEFAULT_POINT_BOUND = 10**6


# ---------------------------------------------------------------------------
# Polynomial arithmetic over F_p (coefficient tuples, low degree first)
# ---------------------------------------------------------------------------

def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df and a:
        if a[-1] == 0:
            a.pop()
            continue
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, x in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * x) % p
        a.pop()
    return _poly_trim(a)


def _poly_powmod(a, e, f, p):
    result = (1,)
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        inv_lead = pow(b[-1], p - 2, p)
        r = list(a)
        while len(r) >= len(b) and r:
            if r[-1] == 0:
                r.pop()
                continue
            coef = (r[-1] * inv_lead) % p
            shift = len(r) - len(b)
            for i, x in enumerate(b):
                r[shift + i] = (r[shift + i] - coef * x) % p
            r.pop()
        a, b = b, _poly_trim(r)
    return a


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def find_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree m over F_p."""
    if m == 1:
        return (0, 1)
    from itertools import product as iter_product
    x = (0, 1)
    for tail in iter_product(range(p), repeat=m):
        f = _poly_trim(tail + (1,))
        if len(f) != m + 1 or f[0] == 0:
            continue  # x divides, or leading coefficient got trimmed
        xq = _poly_powmod(x, p ** m, f, p)
        if _poly_sub(xq, x, p) != ():
            continue
        ok = True
        for ell in _prime_factors(m):
            xq_sub = _poly_powmod(x, p ** (m // ell), f, p)
            g = _poly_gcd(f, _poly_sub(xq_sub, x, p), p)
            if len(g) - 1 != 0:
                ok = False
                break
        if ok:
            return f
    raise FinweilError(f"no irreducible of degree {m} over F_{p}")


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    return _poly_trim(tuple(((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                            for i in range(n)))


class GF:
    """The field F_{p^m} with elements encoded as integers 0..p^m-1.

    The encoding is base-p digits of the residue polynomial; addition and
    multiplication go through precomputed tables, so matrix work is fast.
    The defining polynomial is deterministic and exposed for reproducibility.
    """

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = find_irreducible(p, m)
        polys = []
        for code in range(self.q):
            digits = []
            c = code
            for _ in range(m):
                digits.append(c % p)
                c //= p
            polys.append(_poly_trim(digits))
        self._polys = polys
        self._codes = {poly: i for i, poly in enumerate(polys)}
        self.add_table = [
            [self._codes[_poly_sub(polys[i], tuple(-c for c in polys[j]), p)]
             for j in range(self.q)] for i in range(self.q)
        ]
        self.mul_table = [
            [self._codes[_poly_mod(_poly_mul(polys[i], polys[j], p), self.modulus, p)]
             for j in range(self.q)] for i in range(self.q)
        ]
        self.neg_table = [self._codes[_poly_sub((), polys[i], p)] for i in range(self.q)]
        self.inv_table = [0] * self.q
        for a in range(1, self.q):
            for b in range(1, self.q):
                if self.mul_table[a][b] == 1:
                    self.inv_table[a] = b
                    break
    zero = 0
    one = 1

    def add(self, a, b):
        return self.add_table[a][b]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def neg(self, a):
        return self.neg_table[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("field inverse of zero")
        return self.inv_table[a]

    def power(self, a, e: int):
        if e < 0:
            return self.power(self.inv(a), -e)
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def units(self):
        return range(1, self.q)


@lru_cache(maxsize=None)
def field(p: int, m: int) -> GF:
    return GF(p, m)


# ---------------------------------------------------------------------------
# Matrix groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MatrixGroupSpec:
    family: str  # GL, SL, Sp
    n: int       # matrix size
    q: int

    def __post_init__(self):
        if self.family not in ("GL", "SL", "Sp"):
            raise DatumError(f"unsupported oracle family {self.family}")
        if self.family == "Sp" and self.n % 2 != 0:
            raise DatumError("Sp needs even matrix size")
        prime_of(self.q)


def group_order(spec: MatrixGroupSpec) -> int:
    q, n = spec.q, spec.n
    if spec.family in ("GL", "SL"):
        order = 1
        for i in range(n):
            order *= q ** n - q ** i
        if spec.family == "SL":
            order //= q - 1
        return order
    m = n // 2
    order = q ** (m * m)
    for i in range(1, m + 1):
        order *= q ** (2 * i) - 1
    return order


def _mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(F: GF, a, b):
    n = len(a)
    bt = tuple(zip(*b))
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = 0
            arow = a[i]
            bcol = bt[j]
            for k in range(n):
                acc = F.add(acc, F.mul(arow[k], bcol[k]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _mat_det(F: GF, a):
    n = len(a)
    rows = [list(r) for r in a]
    det = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if pivot is None:
            return 0
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
            det = F.neg(det)
        det = F.mul(det, rows[k][k])
        inv = F.inv(rows[k][k])
        for i in range(k + 1, n):
            if rows[i][k]:
                factor = F.mul(rows[i][k], inv)
                for j in range(k, n):
                    rows[i][j] = F.add(rows[i][j], F.neg(F.mul(factor, rows[k][j])))
    return det


def _symplectic_j(F: GF, n):
    m = n // 2
    out = [[0] * n for _ in range(n)]
    for i in range(m):
        out[i][m + i] = 1
        out[m + i][i] = F.neg(1)
    return tuple(tuple(r) for r in out)


def _is_symplectic(F: GF, j, g):
    n = len(g)
    gt = tuple(zip(*g))
    return _mat_mul(F, _mat_mul(F, gt, j), g) == j


def _generators(spec: MatrixGroupSpec, F: GF):
    n = spec.n
    gens = []
    if spec.family in ("GL", "SL"):
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for c in F.units():
                    g = [list(r) for r in _mat_identity(n)]
                    g[i][j] = c
                    gens.append(tuple(tuple(r) for r in g))
        if spec.family == "GL":
            for a in F.units():
                if a == 1:
                    continue
                g = [list(r) for r in _mat_identity(n)]
                g[0][0] = a
                gens.append(tuple(tuple(r) for r in g))
        return gens
    j = _symplectic_j(F, n)
    from itertools import product as iter_product
    for v in iter_product(range(F.q), repeat=n):
        if not any(v):
            continue
        for c in F.units():
            # symplectic transvection x -> x + c * B(x, v) * v
            cols = []
            for basis_idx in range(n):
                e = [1 if t == basis_idx else 0 for t in range(n)]
                bxv = 0
                for r in range(n):
                    acc = 0
                    for t in range(n):
                        acc = F.add(acc, F.mul(j[r][t], v[t]))
                    bxv = F.add(bxv, F.mul(e[r], acc))
                col = [F.add(e[t], F.mul(F.mul(c, bxv), v[t])) for t in range(n)]
                cols.append(col)
            g = tuple(tuple(cols[col][row] for col in range(n)) for row in range(n))
            gens.append(g)
    return gens


@lru_cache(maxsize=None)
def group_elements(spec: MatrixGroupSpec,
                   bound: int = DEFAULT_GROUP_BOUND) -> tuple:
    """Closure of the generating set; verified against the order formula."""
    expected = group_order(spec)
    if expected > bound:
        raise BoundExceededError(f"group order {expected} exceeds bound {bound}")
    p, k = prime_of(spec.q)
    F = field(p, k)
    gens = _generators(spec, F)
    ident = _mat_identity(spec.n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        g = frontier.pop()
        for h in gens:
            x = _mat_mul(F, g, h)
            if x not in seen:
                seen.add(x)
                frontier.append(x)
                if len(seen) > expected:
                    raise FinweilError("generated group exceeds the classical order")
    if len(seen) != expected:
        raise FinweilError(
            f"generated group has order {len(seen)}, expected {expected}")
    if spec.family == "Sp":
        j = _symplectic_j(F, spec.n)
        for g in list(seen)[:50]:
            if not _is_symplectic(F, j, g):
                raise FinweilError("generator closure left the symplectic group")
    return tuple(sorted(seen))


def conj_class_count(spec: MatrixGroupSpec, bound: int = DEFAULT_GROUP_BOUND) -> int:
    """Number of conjugacy classes, by orbit refinement under conjugation."""
    elements = group_elements(spec, bound)
    p, k = prime_of(spec.q)
    F = field(p, k)
    gens = _generators(spec, F)
    gen_invs = []
    ident = _mat_identity(spec.n)
    for g in gens:
        acc = g
        prev = ident
        while acc != ident:
            prev = acc
            acc = _mat_mul(F, acc, g)
        gen_invs.append(prev)
    remaining = set(elements)
    count = 0
    while remaining:
        x = next(iter(remaining))
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g, gi in zip(gens, gen_invs):
                z = _mat_mul(F, _mat_mul(F, g, y), gi)
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        remaining -= orbit
        count += 1
    return count


# ---------------------------------------------------------------------------
# Twisted torus points and norm maps, by field enumeration
# ---------------------------------------------------------------------------

def torus_point_count(m, q: int, level: int | None = None,
                      bound: int = DEFAULT_POINT_BOUND) -> int:
    """Count solutions of t^M = t^q in the units of F_{q^level}^rank.

    ``m`` is the integer matrix of the twisted Frobenius on the cocharacter
    lattice (a FrobeniusElement is accepted); the level defaults to the
    multiplicative order of the matrix, which bounds every solution.
    """
    cochar = getattr(m, "cochar", None)
    mat = cochar if cochar is not None else intmat.matrix(m)
    p, k = prime_of(q)
    if level is None:
        level = intmat.matrix_order(mat)
    units = q ** level - 1
    rank = len(mat)
    if units ** rank > bound:
        raise BoundExceededError(f"{units}^{rank} points exceed bound {bound}")
    F = field(p, k * level)
    from itertools import product as iter_product
    count = 0
    for t in iter_product(F.units(), repeat=rank):
        ok = True
        for i in range(rank):
            lhs = 1
            for jj in range(rank):
                e = mat[i][jj]
                if e:
                    lhs = F.mul(lhs, F.power(t[jj], e))
            if lhs != F.power(t[i], q):
                ok = False
                break
        if ok:
            count += 1
    return count


@dataclass(frozen=True)
class NormCheck:
    q: int
    m: int
    d: int
    surjective: bool
    kernel_order: int
    expected_kernel: int


def norm_surjectivity_check(q: int, m: int, d: int,
                            bound: int = DEFAULT_POINT_BOUND) -> NormCheck:
    """Enumerate the norm map F_{q^{md}}^x -> F_{q^m}^x and audit it."""
    p, k = prime_of(q)
    if q ** (m * d) > bound:
        raise BoundExceededError(f"q^(m*d) = {q ** (m * d)} exceeds bound {bound}")
    F = field(p, k * m * d)
    exp = (q ** (m * d) - 1) // (q ** m - 1)
    image = set()
    kernel = 0
    for x in F.units():
        y = F.power(x, exp)
        image.add(y)
        if y == 1:
            kernel += 1
    subfield_units = {x for x in F.units() if F.power(x, q ** m) == x}
    return NormCheck(q=q, m=m, d=d,
                     surjective=image == subfield_units,
                     kernel_order=kernel,
                     expected_kernel=exp)
