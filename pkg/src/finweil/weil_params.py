"""Enumeration of rigid, Weil, and inertial parameter classes.

All computations happen on the dual side: the datum passed in is the dual
datum, its twist is the dual twist, and torsion points live on its
cocharacter lattice.  A rigid class is a Weyl-orbit of compatible pairs
(torsion point, Frobenius coset element); the compatibility equation is

    M_x . v = q . v   (mod Z^n)

with M_x the cocharacter action of the Frobenius element x.  Rigid classes
refine Weil classes (Frobenius parts taken modulo right multiplication by
the reflection subgroup W(R_v) of the centralizer subsystem, and modulo
conjugation by the stabilizer W_v), which in turn refine inertial classes
(the Weyl orbit of the point alone).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intmat
from .centralizer import centralizer_roots, subsystem_weyl, weyl_stabilizer
from .errors import DatumError, IncompatibleParameterError
from .finite_torus import (DEFAULT_LEVEL_BOUND, FiniteAbelianGroup, TorusTorsionPoint,
                           character_orbits, elements, fixed_point_group,
                           normalize_vector, point_orbits, torsion_point)
from .intmat import Mat
from .root_datum import BasedRootDatum, GaloisTwist, dualize, dual_twist, make_twist
from .weyl import (DEFAULT_WEYL_BOUND, FrobeniusElement, TwistedClass, WeylGroup,
                   coset_centralizer, costar, frobenius_element, generate,
                   twisted_classes)


def _orbit_of_point(vec, mats):
    orbit = {vec}
    frontier = [vec]
    while frontier:
        v = frontier.pop()
        for m in mats:
            w = normalize_vector(intmat.matvec(costar(m), v))
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return orbit


def canonical_point(W: WeylGroup, vec) -> tuple[Fraction, ...]:
    """Lexicographically least point in the full Weyl orbit."""
    return min(_orbit_of_point(normalize_vector(vec), W.elements))


def is_compatible(x: FrobeniusElement, vec, q: int) -> bool:
    lhs = normalize_vector(intmat.matvec(x.cochar, vec))
    rhs = normalize_vector(intmat.scale_vec(q, vec))
    return lhs == rhs


@dataclass(frozen=True)
class RigidClass:
    """A Weyl orbit of compatible (point, Frobenius) pairs."""

    frob: FrobeniusElement                 # canonical twisted-class representative
    point: tuple[Fraction, ...]            # canonical in its centralizer orbit
    inertial_rep: tuple[Fraction, ...]     # canonical in the full Weyl orbit
    level: int
    orbit_size: int                        # size of the centralizer orbit of the point
    pair_class_size: int                   # size of the Weyl orbit of pairs
    packet_bound: int
    torus_divisors: tuple[int, ...]

    def key(self) -> tuple:
        return (self.frob.sort_key(), self.point)


def enumerate_rigid(datum: BasedRootDatum, twist: GaloisTwist, q: int,
                    weyl_bound: int = DEFAULT_WEYL_BOUND,
                    level_bound: int = DEFAULT_LEVEL_BOUND) -> tuple[RigidClass, ...]:
    """All rigid classes: per twisted class, centralizer orbits of points."""
    W = generate(datum, weyl_bound)
    out = []
    for cls in twisted_classes(W, twist):
        x = cls.rep
        group = fixed_point_group(x, q, level_bound)
        cent = coset_centralizer(W, x)
        for orbit in point_orbits(group, cent):
            point = orbit[0]
            level = torsion_point(point, q, level_bound).level
            stab_pair = sum(
                1 for w in cent
                if normalize_vector(intmat.matvec(costar(w), point)) == point
            )
            out.append(RigidClass(
                frob=x,
                point=point,
                inertial_rep=canonical_point(W, point),
                level=level,
                orbit_size=len(orbit),
                pair_class_size=W.order // stab_pair,
                packet_bound=packet_size_bound(W, point, x, q),
                torus_divisors=group.divisors,
            ))
    out.sort(key=lambda r: r.key())
    return tuple(out)


def rigid_count_check(datum: BasedRootDatum, twist: GaloisTwist, q: int) -> tuple:
    """Per twisted class: (number of rigid classes, number of character orbits).

    The two counts realize the same quantity along independent routes: orbits
    of the coset centralizer on the points of the twisted torus, and orbits
    of the same group on the character side.
    """
    W = generate(datum)
    rows = []
    for cls in twisted_classes(W, twist):
        x = cls.rep
        group = fixed_point_group(x, q)
        cent = coset_centralizer(W, x)
        rows.append((len(point_orbits(group, cent)),
                     len(character_orbits(group, cent))))
    return tuple(rows)


def frobenius_candidates(datum: BasedRootDatum, twist: GaloisTwist, q: int,
                         vec) -> tuple[FrobeniusElement, ...]:
    """All coset elements x with M_x v = q v; a single right W_v-coset."""
    W = generate(datum)
    vec = normalize_vector(vec)
    out = []
    for w in W.elements:
        x = frobenius_element(W, twist, w)
        if is_compatible(x, vec, q):
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class WeilParameterClass:
    """Rigid classes merged along right multiplication by W(R_v)."""

    inertial: TorusTorsionPoint
    frob_rep: FrobeniusElement
    rigid_keys: tuple
    size: int

    def key(self) -> tuple:
        return (self.inertial.vector, self.frob_rep.sort_key())


def _weil_key(W: WeylGroup, twist: GaloisTwist, q: int, point, x: FrobeniusElement):
    """Canonical (inertial point, collapsed Frobenius set) for a rigid pair."""
    vec = normalize_vector(point)
    target = canonical_point(W, vec)
    mover = None
    for u in W.elements:
        if normalize_vector(intmat.matvec(costar(u), vec)) == target:
            mover = u
            break
    xc = intmat.matmul(intmat.matmul(mover, x.combined), intmat.inv_unimodular(mover))
    pseudo = centralizer_roots(W.datum, target)
    sub = subsystem_weyl(W, pseudo)
    stab = weyl_stabilizer(W, target)
    stab_inv = [intmat.inv_unimodular(u) for u in stab]
    closure = {xc}
    frontier = [xc]
    while frontier:
        y = frontier.pop()
        for g in sub:
            z = intmat.matmul(y, g)
            if z not in closure:
                closure.add(z)
                frontier.append(z)
        for u, uinv in zip(stab, stab_inv):
            z = intmat.matmul(intmat.matmul(u, y), uinv)
            if z not in closure:
                closure.add(z)
                frontier.append(z)
    return target, min(closure, key=intmat.flat)


def weil_classes(datum: BasedRootDatum, twist: GaloisTwist, q: int,
                 weyl_bound: int = DEFAULT_WEYL_BOUND,
                 level_bound: int = DEFAULT_LEVEL_BOUND) -> tuple[WeilParameterClass, ...]:
    W = generate(datum, weyl_bound)
    rigid = enumerate_rigid(datum, twist, q, weyl_bound, level_bound)
    buckets: dict = {}
    for r in rigid:
        target, frob_flat = _weil_key(W, twist, q, r.point, r.frob)
        buckets.setdefault((target, frob_flat), []).append(r.key())
    out = []
    for (target, combined), members in sorted(
            buckets.items(), key=lambda kv: (kv[0][0], intmat.flat(kv[0][1]))):
        weyl_part = intmat.matmul(intmat.inv_unimodular(twist.matrix), combined)
        frob = frobenius_element(W, twist, weyl_part)
        out.append(WeilParameterClass(
            inertial=torsion_point(target, q, level_bound),
            frob_rep=frob,
            rigid_keys=tuple(sorted(members)),
            size=len(members),
        ))
    out.sort(key=lambda c: c.key())
    return tuple(out)


def rigid_to_weil(datum: BasedRootDatum, twist: GaloisTwist, q: int,
                  rigid: RigidClass) -> WeilParameterClass:
    """The Weil class containing a rigid class."""
    for cls in weil_classes(datum, twist, q):
        if rigid.key() in cls.rigid_keys:
            return cls
    raise DatumError("rigid class does not belong to this (datum, twist, q)")


@dataclass(frozen=True)
class InertialClass:
    rep: TorusTorsionPoint
    weil_count: int
    rigid_count: int

    def key(self):
        return self.rep.vector


def inertial_class(weil: WeilParameterClass) -> InertialClass:
    return InertialClass(rep=weil.inertial, weil_count=1, rigid_count=weil.size)


def inertial_classes(datum: BasedRootDatum, twist: GaloisTwist, q: int,
                     weyl_bound: int = DEFAULT_WEYL_BOUND,
                     level_bound: int = DEFAULT_LEVEL_BOUND) -> tuple[InertialClass, ...]:
    buckets: dict = {}
    for cls in weil_classes(datum, twist, q, weyl_bound, level_bound):
        key = cls.inertial.vector
        entry = buckets.setdefault(key, [cls.inertial, 0, 0])
        entry[1] += 1
        entry[2] += cls.size
    out = [InertialClass(rep=v[0], weil_count=v[1], rigid_count=v[2])
           for v in buckets.values()]
    out.sort(key=lambda c: c.key())
    return tuple(out)


def packet_size_bound(W: WeylGroup, vec, x: FrobeniusElement, q: int) -> int:
    """Order of the x-fixed subgroup of the Weyl group of the centralizer
    subsystem of the point; 1 exactly when the subsystem is empty."""
    vec = normalize_vector(vec)
    if not is_compatible(x, vec, q):
        raise IncompatibleParameterError("Frobenius element is incompatible with the point")
    pseudo = centralizer_roots(W.datum, vec)
    sub = subsystem_weyl(W, pseudo)
    xc = x.combined
    return sum(1 for w in sub if intmat.matmul(w, xc) == intmat.matmul(xc, w))


# ---------------------------------------------------------------------------
# The torus case: parameters match characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorusLanglandsTable:
    parameter_group: FiniteAbelianGroup
    character_group: FiniteAbelianGroup
    pairs: tuple  # (parameter coordinates, character coordinates)

    @property
    def size(self) -> int:
        return len(self.pairs)


def torus_langlands(datum: BasedRootDatum, twist: GaloisTwist, q: int,
                    level_bound: int = DEFAULT_LEVEL_BOUND) -> TorusLanglandsTable:
    """Explicit matching between parameter classes of a torus and characters
    of its rational points.

    The parameter side is computed on the dual datum (where the Galois
    action is the inverse transpose); the character side is the abstract
    group of rational points of the torus itself.  Both are presented by
    identical divisor chains and matched coordinate-by-coordinate; the
    matching depends on the chosen generators, only its existence and the
    cardinality identity are canonical.
    """
    if datum.roots:
        raise DatumError("torus_langlands requires a datum with no roots")
    make_twist(twist.matrix, datum)
    param_group = fixed_point_group(twist.matrix, q, level_bound)
    char_group = fixed_point_group(intmat.costar(twist.matrix), q, level_bound)
    if param_group.divisors != char_group.divisors:
        raise DatumError("parameter and character groups disagree; invalid twist")
    coords = [c for c in _mixed_radix(param_group.divisors)]
    pairs = tuple((c, c) for c in coords)
    return TorusLanglandsTable(parameter_group=param_group,
                               character_group=char_group, pairs=pairs)


def _mixed_radix(divisors):
    from itertools import product as iter_product
    return iter_product(*(range(d) for d in divisors))


def dual_side(datum: BasedRootDatum, twist: GaloisTwist) -> tuple[BasedRootDatum, GaloisTwist]:
    """Convenience: the dual datum with the dual twist, ready for enumeration."""
    return dualize(datum), dual_twist(twist, datum)
