"""Weyl groups as integer matrices, and conjugacy on the Frobenius coset.

The group W of a datum is generated by the simple reflections acting on the
character lattice; elements are stored as matrices together with a reduced
word in the simple generators.  A Frobenius element is a point of the coset
sigma_q * W inside the extended group <twist> x| W; it is stored as the pair
(weyl part, twist) and compared through the combined matrix twist @ weyl,
flattened row-major, which is the fixed total order used for canonical
class representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from . import intmat
from .errors import BoundExceededError, DatumError
from .intmat import Mat
from .root_datum import BasedRootDatum, GaloisTwist, simple_reflections, make_twist

DEFAULT_WEYL_BOUND = 10**6


@dataclass(frozen=True)
class WeylGroup:
    datum: BasedRootDatum
    elements: tuple[Mat, ...]
    generators: tuple[Mat, ...]
    words: Mapping[Mat, tuple[int, ...]] = field(hash=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def word(self, m: Mat) -> tuple[int, ...]:
        return self.words[m]

    def word_str(self, m: Mat) -> str:
        w = self.words[m]
        return "e" if not w else "*".join(f"s{i + 1}" for i in w)

    def __contains__(self, m: Mat) -> bool:
        return m in self.words

    def __repr__(self) -> str:
        return f"WeylGroup(order={self.order})"


@lru_cache(maxsize=None)
def generate(datum: BasedRootDatum, bound: int = DEFAULT_WEYL_BOUND) -> WeylGroup:
    """Breadth-first closure of the simple reflections; words are reduced."""
    gens = simple_reflections(datum)
    ident = intmat.identity(datum.rank)
    words: dict[Mat, tuple[int, ...]] = {ident: ()}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for gi, g in enumerate(gens):
                prod = intmat.matmul(m, g)
                if prod not in words:
                    words[prod] = words[m] + (gi,)
                    nxt.append(prod)
                    if len(words) > bound:
                        raise BoundExceededError(f"Weyl group exceeds bound {bound}")
        frontier = nxt
    elements = tuple(sorted(words, key=intmat.flat))
    return WeylGroup(datum=datum, elements=elements, generators=gens, words=words)


@lru_cache(maxsize=None)
def _costar_cache(m: Mat) -> Mat:
    return intmat.costar(m)


def costar(m: Mat) -> Mat:
    """Action of an element on the cocharacter lattice (inverse transpose)."""
    return _costar_cache(m)


@dataclass(frozen=True)
class FrobeniusElement:
    """A point sigma_q * w of the Frobenius coset acting on the lattices."""

    weyl_part: Mat
    twist: GaloisTwist
    combined: Mat   # action on X*
    cochar: Mat     # action on X_*
    order: int

    def sort_key(self) -> tuple:
        return intmat.flat(self.combined)

    def __repr__(self) -> str:
        return f"FrobeniusElement(order={self.order})"


def frobenius_element(W: WeylGroup, twist: GaloisTwist, weyl_part: Mat,
                      order_bound: int = 10**5) -> FrobeniusElement:
    if weyl_part not in W:
        raise DatumError("weyl_part is not an element of the given Weyl group")
    make_twist(twist.matrix, W.datum)
    combined = intmat.matmul(twist.matrix, weyl_part)
    order = intmat.matrix_order(combined, order_bound)
    return FrobeniusElement(weyl_part=weyl_part, twist=twist, combined=combined,
                            cochar=costar(combined), order=order)


@dataclass(frozen=True)
class TwistedClass:
    """A W-conjugacy class in the coset sigma_q * W."""

    rep: FrobeniusElement
    size: int
    weyl_parts: tuple[Mat, ...]

    def __repr__(self) -> str:
        return f"TwistedClass(size={self.size})"


def twisted_classes(W: WeylGroup, twist: GaloisTwist) -> tuple[TwistedClass, ...]:
    """Partition of {sigma * w : w in W} under conjugation by W.

    Conjugation by u sends the combined matrix X to u X u^{-1}; the class
    representative is the element with the lexicographically least combined
    matrix, so the output is deterministic.
    """
    make_twist(twist.matrix, W.datum)
    a = twist.matrix
    remaining = {intmat.matmul(a, w): w for w in W.elements}
    inverses = {u: intmat.inv_unimodular(u) for u in W.elements}
    classes = []
    while remaining:
        start = min(remaining, key=intmat.flat)
        orbit = {intmat.matmul(intmat.matmul(u, start), inverses[u]) for u in W.elements}
        parts = tuple(sorted((remaining[x] for x in orbit), key=intmat.flat))
        for x in orbit:
            del remaining[x]
        rep_combined = min(orbit, key=intmat.flat)
        rep = frobenius_element(W, twist, _weyl_part_of(rep_combined, a))
        classes.append(TwistedClass(rep=rep, size=len(orbit), weyl_parts=parts))
    classes.sort(key=lambda c: c.rep.sort_key())
    return tuple(classes)


def _weyl_part_of(combined: Mat, twist_matrix: Mat) -> Mat:
    return intmat.matmul(intmat.inv_unimodular(twist_matrix), combined)


def coset_centralizer(W: WeylGroup, x: FrobeniusElement) -> tuple[Mat, ...]:
    """The subgroup {w in W : w x = x w} inside the extended group."""
    xc = x.combined
    out = []
    for w in W.elements:
        if intmat.matmul(w, xc) == intmat.matmul(xc, w):
            out.append(w)
    return tuple(out)


def subgroup_closure(W: WeylGroup, gens: tuple[Mat, ...]) -> tuple[Mat, ...]:
    """Closure of a generator set inside W, sorted canonically."""
    ident = intmat.identity(W.datum.rank)
    seen = {ident}
    frontier = [ident]
    while frontier:
        m = frontier.pop()
        for g in gens:
            p = intmat.matmul(m, g)
            if p not in seen:
                if p not in W:
                    raise DatumError("generators leave the Weyl group")
                seen.add(p)
                frontier.append(p)
    return tuple(sorted(seen, key=intmat.flat))
