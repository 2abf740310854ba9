"""Based root data with Galois twists, standard families, and duality.

Conventions used throughout the package:

* Both the character lattice X* and the cocharacter lattice X_* of a rank-n
  datum are identified with Z^n, and the canonical pairing is the dot
  product.  Isogeny type is encoded purely by which vectors the roots and
  coroots are: the rank-1 datum with root 2 / coroot 1 is simply connected,
  the one with root 1 / coroot 2 is adjoint.
* Roots live on the X* side, coroots on the X_* side, and share one index
  set: ``roots[i]`` pairs with ``coroots[i]``.
* Matrices act on column vectors of X*.  The induced action on X_* is the
  inverse transpose (``intmat.costar``).

All values are immutable after construction and safe to share freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import intmat
from .errors import DatumError, ParseError
from .intmat import Mat, Vec

MAX_ROOTS = 1000

FAMILIES = ("GL", "SL", "PGL", "Sp", "SO", "torus")


@dataclass(frozen=True)
class BasedRootDatum:
    rank: int
    roots: tuple[Vec, ...]
    coroots: tuple[Vec, ...]
    simples: tuple[int, ...]

    def pairing(self, i: int, j: int) -> int:
        """<alpha_i, alpha_j-vee>."""
        return intmat.dot(self.roots[i], self.coroots[j])

    @property
    def semisimple_rank(self) -> int:
        return len(self.simples)

    def __repr__(self) -> str:
        return (f"BasedRootDatum(rank={self.rank}, roots={len(self.roots)}, "
                f"simples={len(self.simples)})")


@dataclass(frozen=True)
class GaloisTwist:
    """A finite-order lattice automorphism preserving the based datum."""

    matrix: Mat
    order: int


def reflection(datum: BasedRootDatum, i: int) -> Mat:
    """Matrix of s_i on X*: lam -> lam - <lam, alpha_i-vee> alpha_i."""
    n = datum.rank
    alpha = datum.roots[i]
    coalpha = datum.coroots[i]
    return tuple(
        tuple((1 if r == c else 0) - alpha[r] * coalpha[c] for c in range(n))
        for r in range(n)
    )


def simple_reflections(datum: BasedRootDatum) -> tuple[Mat, ...]:
    return tuple(reflection(datum, i) for i in datum.simples)


def validate(datum: BasedRootDatum) -> None:
    """Check every axiom; raise DatumError naming the first violation."""
    n = datum.rank
    roots, coroots = datum.roots, datum.coroots
    if len(roots) != len(coroots):
        raise DatumError("index sets of roots and coroots differ in length")
    for i, (a, b) in enumerate(zip(roots, coroots)):
        if len(a) != n or len(b) != n:
            raise DatumError(f"vector length mismatch at index {i}")
    for i in datum.simples:
        if not 0 <= i < len(roots):
            raise DatumError(f"simple index {i} out of range")
    if len(set(datum.simples)) != len(datum.simples):
        raise DatumError("duplicate simple indices")

    for i in range(len(roots)):
        if datum.pairing(i, i) != 2:
            raise DatumError(f"pairing axiom violated: <alpha, alpha-vee> != 2 at root {i}")

    root_index = {r: i for i, r in enumerate(roots)}
    if len(root_index) != len(roots):
        raise DatumError("roots are not distinct")
    for i, r in enumerate(roots):
        if intmat.neg_vec(r) not in root_index:
            raise DatumError(f"closure under negation violated at root {i}")
        if intmat.scale_vec(2, r) in root_index:
            raise DatumError(f"reducedness violated at root {i}")

    # reflections must permute roots and coroots through the same permutation
    for i in range(len(roots)):
        s = reflection(datum, i)
        s_co = intmat.transpose(s)  # s is an involution, so costar(s) = s^T
        for j in range(len(roots)):
            img = intmat.matvec(s, roots[j])
            k = root_index.get(img)
            if k is None:
                raise DatumError(f"reflection s_{i} does not permute the roots (root {j})")
            if intmat.matvec(s_co, coroots[j]) != coroots[k]:
                raise DatumError(f"reflection s_{i} is incompatible with coroots (root {j})")

    if datum.simples:
        simple_vecs = [roots[i] for i in datum.simples]
        for j, r in enumerate(roots):
            coeffs = intmat.solve_rational(simple_vecs, r)
            if coeffs is None:
                raise DatumError(f"root {j} is not in the span of the simples")
            if any(c.denominator != 1 for c in coeffs):
                raise DatumError(f"root {j} is not an integer combination of simples")
            if not (all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)):
                raise DatumError(f"root {j} has mixed signs over the base")
    elif roots:
        raise DatumError("nonempty root list with empty base")


def _complete_datum(rank: int, simple_pairs: list[tuple[Vec, Vec]]) -> BasedRootDatum:
    """Generate the full (root, coroot) list from simple pairs by closure."""
    pairs = list(simple_pairs)
    seen = {p[0]: p[1] for p in pairs}
    frontier = list(pairs)
    refls = []
    for alpha, coalpha in simple_pairs:
        n = rank
        s = tuple(tuple((1 if r == c else 0) - alpha[r] * coalpha[c] for c in range(n))
                  for r in range(n))
        refls.append(s)
    while frontier:
        beta, cobeta = frontier.pop()
        for (alpha, coalpha), s in zip(simple_pairs, refls):
            img = intmat.matvec(s, beta)
            if img not in seen:
                co_img = intmat.sub_vec(cobeta, intmat.scale_vec(intmat.dot(alpha, cobeta), coalpha))
                seen[img] = co_img
                frontier.append((img, co_img))
                if len(seen) > MAX_ROOTS:
                    raise DatumError("root closure exceeded bound; base is not crystallographic")
    ordered = sorted(seen)
    roots = tuple(ordered)
    coroots = tuple(seen[r] for r in ordered)
    simples = tuple(roots.index(p[0]) for p in simple_pairs)
    datum = BasedRootDatum(rank=rank, roots=roots, coroots=coroots, simples=simples)
    validate(datum)
    return datum


def _e(n: int, i: int, c: int = 1) -> Vec:
    return tuple(c if j == i else 0 for j in range(n))


def _cartan_A(m: int) -> list[list[int]]:
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(m)]
            for i in range(m)]


@lru_cache(maxsize=None)
def standard_datum(family: str, n: int) -> BasedRootDatum:
    """Standard based root datum of a classical family.

    GL n    : rank n, roots e_i - e_j.
    SL n    : rank n-1, simply connected type A_{n-1} (coroots = unit vectors).
    PGL n   : rank n-1, adjoint type A_{n-1} (roots = unit vectors).
    Sp n    : n = 2m, rank m, type C_m, simply connected.
    SO n    : rank floor(n/2); type B_m for n = 2m+1, type D_m for n = 2m.
    torus n : rank n, no roots.
    """
    if family == "torus":
        if n < 0:
            raise DatumError("torus rank must be nonnegative")
        return BasedRootDatum(rank=n, roots=(), coroots=(), simples=())
    if family == "GL":
        if n < 1:
            raise DatumError("GL requires n >= 1")
        if n == 1:
            return BasedRootDatum(rank=1, roots=(), coroots=(), simples=())
        pairs = [(intmat.sub_vec(_e(n, i), _e(n, i + 1)),) * 2 for i in range(n - 1)]
        return _complete_datum(n, [(a, b) for a, b in pairs])
    if family in ("SL", "PGL"):
        if n < 2:
            raise DatumError(f"{family} requires n >= 2")
        m = n - 1
        cartan = _cartan_A(m)
        if family == "SL":
            pairs = [(tuple(cartan[i]), _e(m, i)) for i in range(m)]
        else:
            pairs = [(_e(m, i), tuple(cartan[j][i] for j in range(m))) for i in range(m)]
        return _complete_datum(m, pairs)
    if family == "Sp":
        if n < 2 or n % 2 != 0:
            raise DatumError("Sp requires even n >= 2")
        m = n // 2
        pairs = [(intmat.sub_vec(_e(m, i), _e(m, i + 1)),) * 2 for i in range(m - 1)]
        pairs = [(a, b) for a, b in pairs]
        pairs.append((_e(m, m - 1, 2), _e(m, m - 1)))
        return _complete_datum(m, pairs)
    if family == "SO":
        if n < 2:
            raise DatumError("SO requires n >= 2")
        m = n // 2
        if n % 2 == 1:
            pairs = [(intmat.sub_vec(_e(m, i), _e(m, i + 1)),) * 2 for i in range(m - 1)]
            pairs = [(a, b) for a, b in pairs]
            pairs.append((_e(m, m - 1), _e(m, m - 1, 2)))
            return _complete_datum(m, pairs)
        if n == 2:
            return BasedRootDatum(rank=1, roots=(), coroots=(), simples=())
        pairs = [(intmat.sub_vec(_e(m, i), _e(m, i + 1)),) * 2 for i in range(m - 1)]
        pairs = [(a, b) for a, b in pairs]
        last = intmat.add_vec(_e(m, m - 2), _e(m, m - 1))
        pairs.append((last, last))
        return _complete_datum(m, pairs)
    raise DatumError(f"unsupported family {family!r}; expected one of {FAMILIES}")


def dualize(datum: BasedRootDatum) -> BasedRootDatum:
    """Swap the two lattices: roots become coroots and vice versa."""
    dual = BasedRootDatum(rank=datum.rank, roots=datum.coroots,
                          coroots=datum.roots, simples=datum.simples)
    validate(dual)
    return dual


def trivial_twist(datum: BasedRootDatum) -> GaloisTwist:
    return GaloisTwist(matrix=intmat.identity(datum.rank), order=1)


def make_twist(m: Mat, datum: BasedRootDatum, order_bound: int = 1000) -> GaloisTwist:
    """Validate that m preserves the based datum and wrap it as a twist."""
    m = intmat.matrix(m)
    if len(m) != datum.rank or any(len(r) != datum.rank for r in m):
        raise DatumError("twist matrix has the wrong shape")
    d = intmat.det(m)
    if d not in (1, -1):
        raise DatumError("twist matrix is not unimodular")
    order = intmat.matrix_order(m, order_bound)
    m_co = intmat.costar(m)
    root_index = {r: i for i, r in enumerate(datum.roots)}
    perm = {}
    for i, r in enumerate(datum.roots):
        img = intmat.matvec(m, r)
        j = root_index.get(img)
        if j is None:
            raise DatumError("twist does not permute the roots")
        if intmat.matvec(m_co, datum.coroots[i]) != datum.coroots[j]:
            raise DatumError("twist acts incompatibly on the coroots")
        perm[i] = j
    if {perm[i] for i in datum.simples} != set(datum.simples):
        raise DatumError("twist does not preserve the base")
    return GaloisTwist(matrix=m, order=order)


def dual_twist(twist: GaloisTwist, datum: BasedRootDatum) -> GaloisTwist:
    """Action of the same Galois element on the dual datum: inverse transpose."""
    make_twist(twist.matrix, datum)  # twist must preserve the datum it came from
    return make_twist(intmat.costar(twist.matrix), dualize(datum))


# ---------------------------------------------------------------------------
# Isomorphism-invariant canonical form
# ---------------------------------------------------------------------------

def canonical_key(datum: BasedRootDatum) -> tuple:
    """Canonical invariants of a datum, relative to its stored simple order.

    Roots are rewritten in the simple basis and sorted lexicographically;
    the pairing matrix in that order plus the elementary divisors of the
    root and coroot matrices pin the datum for all supported constructor
    families.  This is not a general lattice-isomorphism test.
    """
    if not datum.roots:
        return ("torus", datum.rank)
    simple_vecs = [datum.roots[i] for i in datum.simples]
    coords = []
    for i, r in enumerate(datum.roots):
        c = intmat.solve_rational(simple_vecs, r)
        coords.append((tuple(int(x) for x in c), i))
    coords.sort()
    order = [i for _, i in coords]
    pairing = tuple(
        tuple(datum.pairing(i, j) for j in order) for i in order
    )
    def divisors(vectors):
        s, _u, _v = intmat.smith_normal_form(intmat.matrix(vectors))
        return tuple(s[i][i] for i in range(min(len(vectors), datum.rank)))
    return (
        datum.rank,
        tuple(c for c, _ in coords),
        pairing,
        divisors(datum.roots),
        divisors(datum.coroots),
    )


def is_isomorphic(a: BasedRootDatum, b: BasedRootDatum) -> bool:
    return canonical_key(a) == canonical_key(b)


# ---------------------------------------------------------------------------
# Textual format: one record per line
#   rank=<n>
#   root <v1,...,vn> coroot <v1,...,vn> [simple]
#   twist <n*n ints, row-major, comma separated>
# ---------------------------------------------------------------------------

def parse_datum(text: str) -> tuple[BasedRootDatum, Optional[GaloisTwist]]:
    rank = None
    roots: list[Vec] = []
    coroots: list[Vec] = []
    simples: list[int] = []
    twist_entries = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0].startswith("rank="):
            try:
                rank = int(tokens[0][5:])
            except ValueError:
                raise ParseError(f"line {lineno}: bad rank") from None
        elif tokens[0] == "root":
            if rank is None:
                raise ParseError(f"line {lineno}: rank must come first")
            if len(tokens) < 4 or tokens[2] != "coroot":
                raise ParseError(f"line {lineno}: expected 'root <v> coroot <v> [simple]'")
            try:
                root = tuple(int(x) for x in tokens[1].split(","))
                coroot = tuple(int(x) for x in tokens[3].split(","))
            except ValueError:
                raise ParseError(f"line {lineno}: bad vector") from None
            if len(root) != rank or len(coroot) != rank:
                raise ParseError(f"line {lineno}: vector length != rank")
            if len(tokens) == 5 and tokens[4] == "simple":
                simples.append(len(roots))
            elif len(tokens) > 4:
                raise ParseError(f"line {lineno}: trailing tokens")
            roots.append(root)
            coroots.append(coroot)
        elif tokens[0] == "twist":
            if rank is None:
                raise ParseError(f"line {lineno}: rank must come first")
            try:
                twist_entries = [int(x) for x in tokens[1].split(",")]
            except (ValueError, IndexError):
                raise ParseError(f"line {lineno}: bad twist") from None
            if len(twist_entries) != rank * rank:
                raise ParseError(f"line {lineno}: twist needs rank*rank entries")
        else:
            raise ParseError(f"line {lineno}: unknown record {tokens[0]!r}")
    if rank is None:
        raise ParseError("missing rank record")
    datum = BasedRootDatum(rank=rank, roots=tuple(roots), coroots=tuple(coroots),
                           simples=tuple(simples))
    validate(datum)
    twist = None
    if twist_entries is not None:
        m = tuple(tuple(twist_entries[i * rank + j] for j in range(rank))
                  for i in range(rank))
        twist = make_twist(m, datum)
    return datum, twist


def format_datum(datum: BasedRootDatum, twist: Optional[GaloisTwist] = None) -> str:
    lines = [f"rank={datum.rank}"]
    simple_set = set(datum.simples)
    for i, (r, c) in enumerate(zip(datum.roots, datum.coroots)):
        line = f"root {','.join(map(str, r))} coroot {','.join(map(str, c))}"
        if i in simple_set:
            line += " simple"
        lines.append(line)
    if twist is not None:
        lines.append("twist " + ",".join(str(x) for x in intmat.flat(twist.matrix)))
    return "\n".join(lines) + "\n"
