"""Parameters of Weil-Deligne type: nilpotent orbit labels, specialness,
component groups A, Abar, Atilde, A_phi, and the full class enumeration.

Nilpotent orbits of the classical factors of a centralizer subsystem are
labelled by partitions with the usual parity constraints (type A: of n;
type B: of 2n+1 with even parts of even multiplicity; type C: of 2n with
odd parts of even multiplicity; type D: of 2n with even parts of even
multiplicity, plus an I/II tag on very even partitions).  The duality map
d is transpose followed by the parity collapse, implemented directly as
"largest valid partition dominated by the transpose", which is the
defining property; a partition is special exactly when its transpose
already satisfies the parity constraint of the ambient type (type A:
always), and this is cross-checked against d(d(lambda)) = lambda.

Component groups of unipotent centralizers are computed modulo the center
of the factor's standard classical realization: generators are indexed by
the distinct part sizes of the relevant parity (odd sizes for orthogonal
factors, even sizes for symplectic ones), subject to the determinant
relation in orthogonal types and to the class of the central element -1.
The canonical quotient of such a group has order equal to the number of
orbits in the special piece, {mu : d(d(mu)) = lambda}; which generators
the quotient map merges is a normalization (the last ones, in decreasing
part-size order), since conjugation never acts inside a factor, only by
permuting isomorphic factors.

Exceptional factors are rejected with a structured error naming the factor.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iter_product
from typing import Optional

from . import intmat
from .centralizer import (ComponentGroupPresentation, FactorInfo, PseudoLevi,
                          TableGroup, centralizer_roots, pi0_centralizer,
                          subsystem_weyl, weyl_stabilizer)
from .errors import (DatumError, FinweilError, IncompatibleParameterError,
                     UnsupportedFactorError)
from .finite_torus import DEFAULT_LEVEL_BOUND, normalize_vector, torsion_point
from .intmat import Mat
from .root_datum import BasedRootDatum, GaloisTwist
from .weyl import (DEFAULT_WEYL_BOUND, FrobeniusElement, WeylGroup,
                   costar, frobenius_element, generate)
from .weil_params import canonical_point, enumerate_rigid, is_compatible

CLASSICAL = ("A", "B", "C", "D")


# ---------------------------------------------------------------------------
# Partitions and the duality map
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of n as weakly decreasing tuples."""
    if n == 0:
        return ((),)
    out = []

    def rec(remaining, maximum, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, maximum), 0, -1):
            rec(remaining - part, part, prefix + [part])

    rec(n, n, [])
    return tuple(out)


def transpose_partition(parts: tuple[int, ...]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


def dominates(lam: tuple[int, ...], mu: tuple[int, ...]) -> bool:
    """lam >= mu in the dominance order (equal totals assumed)."""
    total_l = 0
    total_m = 0
    for i in range(max(len(lam), len(mu))):
        total_l += lam[i] if i < len(lam) else 0
        total_m += mu[i] if i < len(mu) else 0
        if total_l < total_m:
            return False
    return True


def partition_valid(letter: str, parts: tuple[int, ...]) -> bool:
    counts = Counter(parts)
    if letter == "A":
        return True
    if letter == "B" or letter == "D":
        return all(m % 2 == 0 for p, m in counts.items() if p % 2 == 0)
    if letter == "C":
        return all(m % 2 == 0 for p, m in counts.items() if p % 2 == 1)
    raise UnsupportedFactorError(f"no partition model for type {letter}")


@lru_cache(maxsize=None)
def valid_partitions(letter: str, total: int) -> tuple[tuple[int, ...], ...]:
    return tuple(p for p in partitions(total) if partition_valid(letter, p))


@lru_cache(maxsize=None)
def collapse(letter: str, parts: tuple[int, ...]) -> tuple[int, ...]:
    """The largest valid partition dominated by ``parts`` (the X-collapse)."""
    if partition_valid(letter, parts):
        return parts
    total = sum(parts)
    candidates = [p for p in valid_partitions(letter, total) if dominates(parts, p)]
    if not candidates:
        raise FinweilError(f"no valid partition below {parts} in type {letter}")
    best = [p for p in candidates
            if all(dominates(p, q) for q in candidates)]
    if len(best) != 1:
        raise FinweilError(f"collapse of {parts} in type {letter} is not unique")
    return best[0]


@lru_cache(maxsize=None)
def duality(letter: str, parts: tuple[int, ...]) -> tuple[int, ...]:
    """Transpose-and-collapse duality map on orbit partitions."""
    if letter == "A":
        return transpose_partition(parts)
    return collapse(letter, transpose_partition(parts))


def special_partition(letter: str, parts: tuple[int, ...]) -> bool:
    """Parity characterization of special partitions.

    B: transpose again satisfies the B parity rule; C and D: the transpose
    satisfies the C parity rule; A: everything.  Equivalent to d(d(p)) = p.
    """
    if letter == "A":
        return True
    t = transpose_partition(parts)
    if letter == "B":
        return partition_valid("B", t)
    if letter in ("C", "D"):
        return partition_valid("C", t)
    raise UnsupportedFactorError(f"no specialness rule for type {letter}")


@lru_cache(maxsize=None)
def special_piece(letter: str, parts: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """All valid partitions mu with d(d(mu)) = parts."""
    total = sum(parts)
    return tuple(mu for mu in valid_partitions(letter, total)
                 if duality(letter, duality(letter, mu)) == parts)


# ---------------------------------------------------------------------------
# Orbit labels of a pseudo-Levi
# ---------------------------------------------------------------------------

# one factor's label: (partition, tag); tag is '' except for the two members
# of a very even pair in type D, which carry 'I' and 'II'
FactorLabel = tuple[tuple[int, ...], str]
OrbitLabel = tuple[FactorLabel, ...]


def _require_classical(factors: tuple[FactorInfo, ...]) -> None:
    for f in factors:
        if f.letter not in CLASSICAL:
            raise UnsupportedFactorError(
                f"unsupported exceptional factor {f.label} (roots {f.nodes})")


def factor_partition_total(f: FactorInfo) -> int:
    if f.letter == "A":
        return f.rank + 1
    if f.letter == "B":
        return 2 * f.rank + 1
    return 2 * f.rank


def factor_orbit_labels(f: FactorInfo) -> tuple[FactorLabel, ...]:
    _require_classical((f,))
    total = factor_partition_total(f)
    out: list[FactorLabel] = []
    for p in valid_partitions(f.letter, total):
        if f.letter == "D" and p and all(x % 2 == 0 for x in p):
            out.append((p, "I"))
            out.append((p, "II"))
        else:
            out.append((p, ""))
    return tuple(out)


def enumerate_orbits(pseudo: PseudoLevi) -> tuple[OrbitLabel, ...]:
    """All nilpotent orbit labels of the subsystem, the zero orbit included."""
    _require_classical(pseudo.factors)
    per_factor = [factor_orbit_labels(f) for f in pseudo.factors]
    if not per_factor:
        return ((),)
    return tuple(sorted(iter_product(*per_factor)))


def zero_label(pseudo: PseudoLevi) -> OrbitLabel:
    out = []
    for f in pseudo.factors:
        out.append(((1,) * factor_partition_total(f), ""))
    return tuple(out)


def is_special(pseudo: PseudoLevi, label: OrbitLabel) -> bool:
    return all(special_partition(f.letter, parts)
               for f, (parts, _tag) in zip(pseudo.factors, label))


def label_str(label: OrbitLabel) -> str:
    if not label:
        return "[]"
    chunks = []
    for parts, tag in label:
        s = "[" + ",".join(map(str, parts)) + "]"
        if tag:
            s += tag
        chunks.append(s)
    return "+".join(chunks)


# ---------------------------------------------------------------------------
# GF(2) helpers for the elementary abelian parts
# ---------------------------------------------------------------------------

def _pivot(v: int) -> int:
    return v.bit_length() - 1


def _echelon(vectors) -> tuple[int, ...]:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            if v >> _pivot(b) & 1:
                v ^= b
        if v:
            basis.append(v)
            basis.sort(key=_pivot, reverse=True)
    return tuple(basis)


def _reduce(v: int, basis) -> int:
    for b in basis:
        if v >> _pivot(b) & 1:
            v ^= b
    return v


def _span(basis) -> tuple[int, ...]:
    out = {0}
    for b in basis:
        out |= {x ^ b for x in out}
    return tuple(sorted(out))


@dataclass(frozen=True)
class FactorSpace:
    """The component group of one factor's unipotent centralizer, mod center.

    Elements are canonical bitmask representatives of S/K where S is the
    span of the generators cut by the determinant relation (orthogonal
    types) and K is the span of the central element's class.
    """

    sizes: tuple[int, ...]       # generator part sizes, decreasing
    space: tuple[int, ...]       # echelon basis of S
    kernel: tuple[int, ...]      # echelon basis of K (central relations)

    def element_set(self) -> tuple[int, ...]:
        return tuple(sorted({_reduce(v, self.kernel) for v in _span(self.space)}))

    def dim(self) -> int:
        return len(self.space) - len(self.kernel)


@lru_cache(maxsize=None)
def factor_component_space(letter: str, parts: tuple[int, ...]) -> FactorSpace:
    counts = Counter(parts)
    if letter == "A":
        return FactorSpace(sizes=(), space=(), kernel=())
    if letter == "C":
        sizes = tuple(sorted((p for p in counts if p % 2 == 0), reverse=True))
        k = len(sizes)
        space = _echelon([1 << i for i in range(k)])
        center = 0
        for i, p in enumerate(sizes):
            if counts[p] % 2 == 1:
                center |= 1 << i
        kernel = _echelon([center]) if center else ()
        return FactorSpace(sizes=sizes, space=space, kernel=kernel)
    if letter in ("B", "D"):
        sizes = tuple(sorted((p for p in counts if p % 2 == 1), reverse=True))
        k = len(sizes)
        # S = kernel of the determinant functional (even support)
        space = _echelon([(1 << i) | (1 << (i + 1)) for i in range(k - 1)])
        kernel: tuple[int, ...] = ()
        if letter == "D":
            center = 0
            for i, p in enumerate(sizes):
                if counts[p] % 2 == 1:
                    center |= 1 << i
            if center:
                if bin(center).count("1") % 2 != 0:
                    raise FinweilError("central class escapes the determinant kernel")
                kernel = _echelon([center])
        return FactorSpace(sizes=sizes, space=space, kernel=kernel)
    raise UnsupportedFactorError(f"no component-group rule for type {letter}")


@lru_cache(maxsize=None)
def factor_quotient_kernel(letter: str, parts: tuple[int, ...]) -> tuple[int, ...]:
    """Kernel of the canonical-quotient map on one factor, as an extension
    of the central relations; its codimension is log2 of the special piece."""
    fs = factor_component_space(letter, parts)
    a_dim = fs.dim()
    piece = len(special_piece(letter, parts)) if special_partition(letter, parts) else None
    if piece is None:
        raise FinweilError("canonical quotient is only defined for special labels")
    b_dim = piece.bit_length() - 1
    if 1 << b_dim != piece:
        raise FinweilError(f"special piece of {parts} ({letter}) has size {piece}, "
                           f"not a power of two")
    if b_dim > a_dim:
        raise FinweilError(f"special piece of {parts} ({letter}) exceeds the "
                           f"component group")
    # quotient basis in canonical order; merge away the trailing generators
    quotient_basis = [v for v in fs.space if _reduce(v, fs.kernel)]
    quotient_basis = _echelon([_reduce(v, fs.kernel) for v in quotient_basis])
    extra = list(quotient_basis)[b_dim:] if b_dim < a_dim else []
    return _echelon(list(fs.kernel) + [_reduce(v, fs.kernel) for v in extra])


# ---------------------------------------------------------------------------
# Label transport along Weyl elements
# ---------------------------------------------------------------------------

def _factor_root_sets(pseudo: PseudoLevi):
    """Map each sub-root index to its factor index."""
    datum = pseudo.datum
    owner = {}
    for fi, f in enumerate(pseudo.factors):
        simple_vecs = [datum.roots[i] for i in f.nodes]
        for i in pseudo.sub_roots:
            if intmat.solve_rational(simple_vecs, datum.roots[i]) is not None:
                owner[i] = fi
    return owner


def label_action(W: WeylGroup, pseudo: PseudoLevi, m: Mat,
                 label: OrbitLabel) -> OrbitLabel:
    """Transport an orbit label along a lattice automorphism preserving the
    subsystem: partitions follow the induced permutation of the factors,
    and a very even tag toggles when the factor's fork leaves are swapped."""
    datum = pseudo.datum
    if not pseudo.factors:
        return label
    root_index = {r: i for i, r in enumerate(datum.roots)}
    owner = _factor_root_sets(pseudo)
    perm = []
    for f in pseudo.factors:
        img_vec = intmat.matvec(m, datum.roots[f.nodes[0]])
        j = root_index.get(img_vec)
        if j is None or j not in owner:
            raise FinweilError("automorphism does not preserve the subsystem")
        perm.append(owner[j])
    new_label: list[Optional[FactorLabel]] = [None] * len(pseudo.factors)
    for fi, fj in enumerate(perm):
        src = pseudo.factors[fi]
        dst = pseudo.factors[fj]
        if (src.letter, src.rank) != (dst.letter, dst.rank):
            raise FinweilError("automorphism maps a factor to a different type")
        parts, tag = label[fi]
        if tag:
            if _fork_swapped(W, pseudo, m, fi, fj):
                tag = "II" if tag == "I" else "I"
        new_label[fj] = (parts, tag)
    return tuple(new_label)  # type: ignore[arg-type]


def _fork_swapped(W: WeylGroup, pseudo: PseudoLevi, m: Mat, fi: int, fj: int) -> bool:
    """Whether m, corrected to preserve the base of the target factor,
    exchanges the two fork leaves of a D-type factor."""
    datum = pseudo.datum
    src = pseudo.factors[fi]
    dst = pseudo.factors[fj]
    if not src.fork_nodes or not dst.fork_nodes:
        return False
    images = [intmat.matvec(m, datum.roots[i]) for i in src.nodes]
    target = {datum.roots[i]: i for i in dst.nodes}
    for u in subsystem_weyl(W, pseudo):
        moved = [intmat.matvec(u, v) for v in images]
        if all(v in target for v in moved):
            node_map = {src.nodes[i]: target[moved[i]] for i in range(len(moved))}
            f0, f1 = src.fork_nodes
            return node_map[f0] == dst.fork_nodes[1] and node_map[f1] == dst.fork_nodes[0]
    raise FinweilError("could not normalize the factor map to the base")


# ---------------------------------------------------------------------------
# A(phi_0), the canonical quotient, and the Frobenius extension
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AGroup:
    """A component group presented as bits-by-coset pairs.

    Elements are (bits, c) with bits a tuple of per-factor canonical
    bitmasks and c an index into the coset presentation of W_v / W(R_v);
    multiplication is the split extension, cosets permuting the factor
    blocks of isomorphic factors.
    """

    group: TableGroup
    pi0: ComponentGroupPresentation
    coset_members: tuple[int, ...]        # indices of pi0 cosets fixing the label
    factor_spaces: tuple[FactorSpace, ...]
    kernels: tuple[tuple[int, ...], ...]  # per-factor quotient kernels in force

    @property
    def order(self) -> int:
        return self.group.order

    def iso_label(self) -> str:
        return self.group.iso_label()


def _coset_factor_perm(W: WeylGroup, pseudo: PseudoLevi, m: Mat) -> tuple[int, ...]:
    datum = pseudo.datum
    root_index = {r: i for i, r in enumerate(datum.roots)}
    owner = _factor_root_sets(pseudo)
    perm = []
    for f in pseudo.factors:
        img = root_index[intmat.matvec(m, datum.roots[f.nodes[0]])]
        perm.append(owner[img])
    return tuple(perm)


def _build_a_group(W: WeylGroup, pseudo: PseudoLevi, label: OrbitLabel,
                   pi0: ComponentGroupPresentation,
                   kernels: tuple[tuple[int, ...], ...]) -> AGroup:
    spaces = tuple(factor_component_space(f.letter, parts)
                   for f, (parts, _t) in zip(pseudo.factors, label))
    members = []
    for c in pi0.group.elements:
        if label_action(W, pseudo, pi0.reps[c], label) == label:
            members.append(c)
    # the label stabilizer is a subgroup of pi0
    sub = pi0.group.subgroup(members)
    per_factor_elements = [
        tuple(sorted({_reduce(v, kern) for v in _span(sp.space)}))
        for sp, kern in zip(spaces, kernels)
    ]
    bit_elements = [tuple(t) for t in iter_product(*per_factor_elements)] \
        if per_factor_elements else [()]
    perms = {c: _coset_factor_perm(W, pseudo, pi0.reps[c]) for c in members}

    def act(c: int, bits: tuple[int, ...]) -> tuple[int, ...]:
        perm = perms[c]
        out = [0] * len(bits)
        for i, b in enumerate(bits):
            out[perm[i]] = b
        return tuple(_reduce(b, kernels[i]) for i, b in enumerate(out))

    elements = tuple(sorted((bits, c) for bits in bit_elements for c in members))
    table = {}
    for a in elements:
        for b in elements:
            bits = tuple(x ^ y for x, y in zip(a[0], act(a[1], b[0])))
            bits = tuple(_reduce(x, kernels[i]) for i, x in enumerate(bits))
            table[(a, b)] = (bits, sub.multiply(a[1], b[1]))
    zero_bits = tuple(0 for _ in pseudo.factors)
    group = TableGroup(elements=elements, table=table, identity=(zero_bits, pi0.group.identity))
    return AGroup(group=group, pi0=pi0, coset_members=tuple(members),
                  factor_spaces=spaces, kernels=kernels)


def a_group(W: WeylGroup, v, label: OrbitLabel,
            pseudo: Optional[PseudoLevi] = None) -> AGroup:
    """The component group of the centralizer of (point, orbit), mod center."""
    vec = normalize_vector(_vec_of(v))
    if pseudo is None:
        pseudo = centralizer_roots(W.datum, vec)
    _require_classical(pseudo.factors)
    pi0 = pi0_centralizer(W, vec, pseudo)
    kernels = tuple(factor_component_space(f.letter, parts).kernel
                    for f, (parts, _t) in zip(pseudo.factors, label))
    return _build_a_group(W, pseudo, label, pi0, kernels)


def _vec_of(v):
    vector = getattr(v, "vector", None)
    return vector if vector is not None else v


@dataclass(frozen=True)
class CanonicalQuotient:
    a: AGroup
    abar: AGroup
    projection: dict  # element of a -> element of abar

    def kernel_order(self) -> int:
        return self.a.order // self.abar.order


def canonical_quotient(W: WeylGroup, v, label: OrbitLabel,
                       pseudo: Optional[PseudoLevi] = None) -> CanonicalQuotient:
    vec = normalize_vector(_vec_of(v))
    if pseudo is None:
        pseudo = centralizer_roots(W.datum, vec)
    _require_classical(pseudo.factors)
    if not is_special(pseudo, label):
        raise DatumError("canonical quotient is computed for special labels only")
    pi0 = pi0_centralizer(W, vec, pseudo)
    base_kernels = tuple(factor_component_space(f.letter, parts).kernel
                         for f, (parts, _t) in zip(pseudo.factors, label))
    big_kernels = tuple(factor_quotient_kernel(f.letter, parts)
                        for f, (parts, _t) in zip(pseudo.factors, label))
    a = _build_a_group(W, pseudo, label, pi0, base_kernels)
    abar = _build_a_group(W, pseudo, label, pi0, big_kernels)
    projection = {}
    for bits, c in a.group.elements:
        image = tuple(_reduce(b, big_kernels[i]) for i, b in enumerate(bits))
        projection[(bits, c)] = (image, c)
    for val in projection.values():
        if val not in set(abar.group.elements):
            raise FinweilError("projection misses the quotient group")
    return CanonicalQuotient(a=a, abar=abar, projection=projection)


@dataclass(frozen=True)
class ExtendedComponentGroup:
    """Abar together with the Frobenius conjugation action and the fiber of
    the extension over the first Frobenius power."""

    abar: AGroup
    frobenius_weyl: Mat           # combined matrix of the chosen Frobenius
    frobenius_action: dict        # automorphism of abar induced by it
    fiber_classes: tuple          # (representative, a_phi elements, irr count)

    @property
    def fiber_size(self) -> int:
        return len(self.fiber_classes)


def _frobenius_on_agroup(W: WeylGroup, pseudo: PseudoLevi, ag: AGroup,
                         label: OrbitLabel, xc: Mat) -> dict:
    """Conjugation by a compatible Frobenius element on the (bits, c) model."""
    perm = _coset_factor_perm(W, pseudo, xc)
    xinv = intmat.inv_unimodular(xc)
    coset_map = {}
    rep_lookup = {}
    for idx, rep in enumerate(ag.pi0.reps):
        for u in subsystem_weyl(W, pseudo):
            rep_lookup[intmat.matmul(rep, u)] = idx
    for c in ag.coset_members:
        img = intmat.matmul(intmat.matmul(xc, ag.pi0.reps[c]), xinv)
        coset_map[c] = rep_lookup[img]
    action = {}
    for bits, c in ag.group.elements:
        out = [0] * len(bits)
        for i, b in enumerate(bits):
            out[perm[i]] = b
        out = tuple(_reduce(b, ag.kernels[i]) for i, b in enumerate(out))
        action[(bits, c)] = (out, coset_map[c])
    return action


def extended_group(datum: BasedRootDatum, twist: GaloisTwist, q: int, v,
                   label: OrbitLabel,
                   weyl_bound: int = DEFAULT_WEYL_BOUND) -> ExtendedComponentGroup:
    """Abar extended by the Frobenius coset; raises when no Frobenius is
    compatible with the point and the orbit label."""
    W = generate(datum, weyl_bound)
    vec = normalize_vector(_vec_of(v))
    pseudo = centralizer_roots(datum, vec)
    _require_classical(pseudo.factors)
    candidates = []
    for w in W.elements:
        x = frobenius_element(W, twist, w)
        if is_compatible(x, vec, q):
            candidates.append(x)
    if not candidates:
        raise IncompatibleParameterError("no compatible Frobenius for the point")
    cq = canonical_quotient(W, vec, label, pseudo)
    chosen = None
    for x in sorted(candidates, key=lambda y: y.sort_key()):
        if label_action(W, pseudo, x.combined, label) == label:
            chosen = x
            break
    if chosen is None:
        raise IncompatibleParameterError("no compatible Frobenius fixes the orbit label")
    action = _frobenius_on_agroup(W, pseudo, cq.abar, label, chosen.combined)
    fiber = _twisted_classes_of(cq.abar.group, action)
    return ExtendedComponentGroup(abar=cq.abar, frobenius_weyl=chosen.combined,
                                  frobenius_action=action, fiber_classes=fiber)


def _twisted_classes_of(group: TableGroup, action: dict) -> tuple:
    """Orbits of b ~ a * b * action(a)^{-1}, with the twisted stabilizer of
    each representative and its irreducible-character count."""
    remaining = set(group.elements)
    out = []
    while remaining:
        rep = min(remaining)
        orbit = {rep}
        frontier = [rep]
        while frontier:
            b = frontier.pop()
            for a in group.elements:
                c = group.multiply(group.multiply(a, b), group.inverse(action[a]))
                if c not in orbit:
                    orbit.add(c)
                    frontier.append(c)
        remaining -= orbit
        rep = min(orbit)
        stab = tuple(a for a in group.elements
                     if group.multiply(group.multiply(a, rep), group.inverse(action[a])) == rep)
        irr = group.subgroup(stab).irr_count()
        out.append((rep, stab, irr))
    out.sort(key=lambda t: t[0])
    return tuple(out)


# ---------------------------------------------------------------------------
# The full enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WDClass:
    inertial_vector: tuple[Fraction, ...]
    level: int
    pseudo_levi_type: str
    orbit: OrbitLabel
    special: bool
    a_order: int
    abar_order: int
    a_phi_order: int
    a_phi_irr: int
    frob_coset_id: int

    def key(self):
        return (self.inertial_vector, self.orbit, self.frob_coset_id)


@dataclass(frozen=True)
class WDTable:
    classes: tuple[WDClass, ...]

    @property
    def total_irr(self) -> int:
        return sum(c.a_phi_irr for c in self.classes)

    def __len__(self) -> int:
        return len(self.classes)


def enumerate_special_wd(datum: BasedRootDatum, twist: GaloisTwist, q: int,
                         weyl_bound: int = DEFAULT_WEYL_BOUND,
                         level_bound: int = DEFAULT_LEVEL_BOUND) -> WDTable:
    """All classes of special Frobenius-semisimple parameters with their
    A_phi data; Frobenius semisimplicity is structural, because Frobenius
    images live in the coset model and never acquire a unipotent part."""
    W = generate(datum, weyl_bound)
    _require_classical(centralizer_roots(datum, (Fraction(0),) * datum.rank).factors)
    rigid = enumerate_rigid(datum, twist, q, weyl_bound, level_bound)
    inertial_reps = sorted({r.inertial_rep for r in rigid})
    rows = []
    for vec in inertial_reps:
        pseudo = centralizer_roots(datum, vec)
        _require_classical(pseudo.factors)
        pi0 = pi0_centralizer(W, vec, pseudo)
        labels = enumerate_orbits(pseudo)
        seen = set()
        orbit_reps = []
        for lab in labels:
            if lab in seen:
                continue
            orbit = {lab}
            frontier = [lab]
            while frontier:
                cur = frontier.pop()
                for c in pi0.group.elements:
                    img = label_action(W, pseudo, pi0.reps[c], cur)
                    if img not in orbit:
                        orbit.add(img)
                        frontier.append(img)
            seen |= orbit
            orbit_reps.append(min(orbit))
        level = torsion_point(vec, q, level_bound).level
        for lab in sorted(orbit_reps):
            if not is_special(pseudo, lab):
                continue
            try:
                ext = extended_group(datum, twist, q, vec, lab, weyl_bound)
            except IncompatibleParameterError:
                continue
            a = a_group(W, vec, lab, pseudo)
            for coset_id, (rep, stab, irr) in enumerate(ext.fiber_classes):
                rows.append(WDClass(
                    inertial_vector=vec,
                    level=level,
                    pseudo_levi_type=pseudo.type_label,
                    orbit=lab,
                    special=True,
                    a_order=a.order,
                    abar_order=ext.abar.order,
                    a_phi_order=len(stab),
                    a_phi_irr=irr,
                    frob_coset_id=coset_id,
                ))
    rows.sort(key=lambda r: r.key())
    return WDTable(classes=tuple(rows))
