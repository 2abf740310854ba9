"""Finite torus arithmetic: torsion points, fixed-point groups, norm maps.

A twisted torus over F_q is modelled by a finite-order integer matrix M
acting on the (co)character lattice Z^n.  Its group of rational points is
the kernel of (M - q) on Q^n / Z^n, presented through the Smith normal form
of the integer matrix (q*I - M); the multiplicative groups of the fields
F_{q^m} themselves only ever appear as abstract cyclic groups Z/(q^m - 1),
never through a chosen field embedding.  Everything is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from math import gcd

from . import intmat
from .errors import BoundExceededError, DatumError, FinweilError
from .intmat import Mat

DEFAULT_LEVEL_BOUND = 64


def prime_of(q: int) -> tuple[int, int]:
    """Decompose a prime power q = p**k; raise otherwise."""
    if q < 2:
        raise FinweilError(f"q = {q} is not a prime power")
    p = None
    m = q
    for cand in range(2, q + 1):
        if cand * cand > q and p is None:
            p = q
            break
        if m % cand == 0:
            p = cand
            break
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        raise FinweilError(f"q = {q} is not a prime power")
    return p, k


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def normalize_vector(v) -> tuple[Fraction, ...]:
    return tuple(_mod1(Fraction(x)) for x in v)


def multiplicative_order(q: int, modulus: int, bound: int = DEFAULT_LEVEL_BOUND) -> int:
    if modulus == 1:
        return 1
    if gcd(q, modulus) != 1:
        raise DatumError(f"q = {q} is not invertible modulo {modulus}")
    acc = q % modulus
    for m in range(1, bound + 1):
        if acc == 1:
            return m
        acc = (acc * q) % modulus
    raise BoundExceededError(f"level of q = {q} mod {modulus} exceeds bound {bound}")


@dataclass(frozen=True)
class TorusTorsionPoint:
    """A rational vector modulo the lattice, of order prime to char(F_q)."""

    vector: tuple[Fraction, ...]
    level: int  # minimal m with (q**m - 1) * vector integral

    def denominator(self) -> int:
        d = 1
        for x in self.vector:
            d = d * x.denominator // gcd(d, x.denominator)
        return d

    def __repr__(self) -> str:
        return f"TorusTorsionPoint(({', '.join(map(str, self.vector))}), level={self.level})"


def torsion_point(vector, q: int, level_bound: int = DEFAULT_LEVEL_BOUND) -> TorusTorsionPoint:
    vec = normalize_vector(vector)
    p, _ = prime_of(q)
    den = 1
    for x in vec:
        if x.denominator % p == 0:
            raise DatumError(f"denominator of {x} is divisible by the characteristic {p}")
        den = den * x.denominator // gcd(den, x.denominator)
    return TorusTorsionPoint(vector=vec, level=multiplicative_order(q, den, level_bound))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """d_1 | d_2 | ... presentation of the points of a twisted torus."""

    matrix: Mat                       # lattice action whose q-eigenspace we took
    q: int
    divisors: tuple[int, ...]         # elementary divisors > 1
    generators: tuple[tuple[Fraction, ...], ...]
    order: int
    level: int

    def rank(self) -> int:
        return len(self.matrix)

    def __repr__(self) -> str:
        inv = " x ".join(f"Z/{d}" for d in self.divisors) or "1"
        return f"FiniteAbelianGroup({inv}, order={self.order})"


def _acting_matrix(x) -> Mat:
    cochar = getattr(x, "cochar", None)
    if cochar is not None:
        return cochar
    return intmat.matrix(x)


def fixed_point_group(x, q: int, level_bound: int = DEFAULT_LEVEL_BOUND) -> FiniteAbelianGroup:
    """Solutions of M*v = q*v on Q^n/Z^n, via SNF of (q*I - M).

    ``x`` may be a FrobeniusElement (its cocharacter action is used) or a
    plain integer matrix acting on the lattice the points live in.
    """
    m = _acting_matrix(x)
    p, _ = prime_of(q)
    n = len(m)
    b = tuple(tuple(q * (1 if i == j else 0) - m[i][j] for j in range(n)) for i in range(n))
    s, u, v = intmat.smith_normal_form(b)
    order = 1
    for i in range(n):
        order *= s[i][i]
    if order == 0:
        raise DatumError("q*I - M is singular; M must have finite order and q > 1")
    divisors = []
    gens = []
    for i in range(n):
        d = s[i][i]
        if d > 1:
            if d % p == 0:
                raise DatumError("elementary divisor divisible by the characteristic")
            divisors.append(d)
            col = tuple(Fraction(v[r][i], d) for r in range(n))
            gens.append(normalize_vector(col))
    for d, g in zip(divisors, gens):
        img = normalize_vector(intmat.matvec(m, g))
        tgt = normalize_vector(intmat.scale_vec(q, g))
        if img != tgt:
            raise FinweilError("internal error: generator fails the defining relation")
    level = multiplicative_order(q, divisors[-1], level_bound) if divisors else 1
    return FiniteAbelianGroup(matrix=m, q=q, divisors=tuple(divisors),
                              generators=tuple(gens), order=order, level=level)


def elements(group: FiniteAbelianGroup) -> tuple[tuple[Fraction, ...], ...]:
    """All points, one per coordinate tuple, in mixed-radix order."""
    n = group.rank()
    out = []
    for coords in iter_product(*(range(d) for d in group.divisors)):
        v = (Fraction(0),) * n
        for a, g in zip(coords, group.generators):
            v = tuple(x + a * y for x, y in zip(v, g))
        out.append(normalize_vector(v))
    if len(set(out)) != group.order:
        raise FinweilError("internal error: generator coordinates collide")
    return tuple(out)


def element_coords(group: FiniteAbelianGroup):
    """Mapping from point to its coordinate tuple over the divisors."""
    table = {}
    for coords in iter_product(*(range(d) for d in group.divisors)):
        v = (Fraction(0),) * group.rank()
        for a, g in zip(coords, group.generators):
            v = tuple(x + a * y for x, y in zip(v, g))
        table[normalize_vector(v)] = coords
    return table


def characters(group: FiniteAbelianGroup) -> tuple[tuple[int, ...], ...]:
    """Hom(G, Q/Z) as coordinate tuples: c sends generator i to c_i / d_i."""
    return tuple(iter_product(*(range(d) for d in group.divisors)))


def character_value(group: FiniteAbelianGroup, char: tuple[int, ...],
                    coords: tuple[int, ...]) -> Fraction:
    total = Fraction(0)
    for a, c, d in zip(coords, char, group.divisors):
        total += Fraction(a * c, d)
    return _mod1(total)


def _check_preserves(group: FiniteAbelianGroup, mats, coords_table) -> None:
    for m in mats:
        for g in group.generators:
            img = normalize_vector(intmat.matvec(m, g))
            if img not in coords_table:
                raise DatumError("automorphism does not preserve the group")


def point_orbits(group: FiniteAbelianGroup, mats) -> tuple[tuple, ...]:
    """Orbits of lattice automorphisms on the points; canonical reps first."""
    mats = [intmat.matrix(m) for m in mats]
    coords_table = element_coords(group)
    _check_preserves(group, mats, coords_table)
    pts = set(coords_table)
    orbits = []
    while pts:
        start = min(pts)
        orbit = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for m in mats:
                w = normalize_vector(intmat.matvec(m, v))
                if w not in orbit:
                    orbit.add(w)
                    frontier.append(w)
        orbits.append(tuple(sorted(orbit)))
        pts -= orbit
    orbits.sort()
    return tuple(orbits)


def character_orbits(group: FiniteAbelianGroup, mats) -> tuple[tuple, ...]:
    """Orbits of the induced action on Hom(G, Q/Z), canonical reps first.

    An automorphism f acts by (f . chi)(g) = chi(f^{-1} g); the coordinates
    of the image character are read off on the generators.
    """
    mats = [intmat.matrix(m) for m in mats]
    coords_table = element_coords(group)
    _check_preserves(group, mats, coords_table)
    inv_images = []
    for m in mats:
        minv = intmat.inv(m)
        img_coords = []
        for g in group.generators:
            w = normalize_vector(intmat.matvec(minv, g))
            if w not in coords_table:
                raise DatumError("automorphism does not preserve the group")
            img_coords.append(coords_table[w])
        inv_images.append(img_coords)

    def act(mi: int, char: tuple[int, ...]) -> tuple[int, ...]:
        out = []
        for i, d in enumerate(group.divisors):
            val = character_value(group, char, inv_images[mi][i])
            scaled = val * d
            if scaled.denominator != 1:
                raise FinweilError("internal error: character image not integral")
            out.append(int(scaled) % d)
        return tuple(out)

    chars = set(characters(group))
    orbits = []
    while chars:
        start = min(chars)
        orbit = {start}
        frontier = [start]
        while frontier:
            c = frontier.pop()
            for mi in range(len(mats)):
                c2 = act(mi, c)
                if c2 not in orbit:
                    orbit.add(c2)
                    frontier.append(c2)
        orbits.append(tuple(sorted(orbit)))
        chars -= orbit
    orbits.sort()
    return tuple(orbits)


@dataclass(frozen=True)
class NormMap:
    """Norm between abstract cyclic models of field multiplicative groups."""

    q: int
    m: int
    d: int
    source_modulus: int
    target_modulus: int
    multiplier: int
    kernel_order: int

    def apply(self, x: int) -> int:
        # image multiplier*x mod (q^{md}-1) sits in the subgroup of index
        # multiplier, identified with Z/(q^m - 1) by dividing out multiplier
        return x % self.target_modulus


def norm_map(q: int, m: int, d: int) -> NormMap:
    if m < 1 or d < 1:
        raise DatumError("norm_map needs m, d >= 1")
    prime_of(q)
    source = q ** (m * d) - 1
    target = q ** m - 1
    multiplier = source // target
    if multiplier * target != source:
        raise FinweilError("internal error: norm multiplier not integral")
    return NormMap(q=q, m=m, d=d, source_modulus=source, target_modulus=target,
                   multiplier=multiplier, kernel_order=multiplier)
