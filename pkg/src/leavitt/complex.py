"""Bounded slices of the injective Leavitt complex.

A basis vector is a socle symbol over a vertex i (either the vertex symbol
E(i) or an arrow symbol G(a) with t(a) = i) tagged with an admissible pair
(p, q) satisfying s(q) = i; its degree is l(q) - l(p). The differential, the
left kQ/J^2-action, the kernel/image classification, the q-length filtration
and the resolution augmentations all live here.
"""
from __future__ import annotations

import enum
from typing import NamedTuple, Optional

from .algebra import AdmissiblePair, is_admissible, enumerate_pairs, pair_degree, pair_key
from .linalg import LinearCombination
from .quiver import Path, Quiver, compose
from .scalars import sign_pow


class Socle(NamedTuple):
    kind: str    # "E" (vertex symbol) or "G" (arrow symbol)
    label: str


def vertex_socle(v: str) -> Socle:
    return Socle("E", v)


def arrow_socle(a: str) -> Socle:
    return Socle("G", a)


def socle_vertex(quiver: Quiver, s: Socle) -> str:
    return s.label if s.kind == "E" else quiver.arrows[s.label].target


class BasisVector(NamedTuple):
    socle: Socle
    pair: AdmissiblePair


def basis_degree(b: BasisVector) -> int:
    return pair_degree(b.pair)


def basis_key(quiver: Quiver, b: BasisVector):
    """Deterministic order: vertex, socle kind, arrow id, pair order."""
    v = socle_vertex(quiver, b.socle)
    return (v, 0 if b.socle.kind == "E" else 1, b.socle.label, pair_key(b.pair))


def make_basis_vector(quiver: Quiver, socle: Socle, pair: AdmissiblePair) -> BasisVector:
    if socle.kind == "G" and socle.label not in quiver.arrows:
        raise ValueError(f"unknown arrow {socle.label!r} in socle symbol")
    if socle.kind == "E" and socle.label not in quiver.special:
        raise ValueError(f"unknown vertex {socle.label!r} in socle symbol")
    if not is_admissible(quiver, pair.p, pair.q):
        raise ValueError(f"pair is not admissible: {pair}")
    if pair.q.source != socle_vertex(quiver, socle):
        raise ValueError("socle symbol vertex differs from s(q)")
    return BasisVector(socle, pair)


class ChainVector(LinearCombination):
    """A finite combination of complex basis vectors."""

    def degrees(self) -> set[int]:
        return {basis_degree(k) for k in self.terms}

    def degree(self) -> Optional[int]:
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"vector is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()


# -- differentials ------------------------------------------------------

FAULTS = ("flip_unit", "flip_sum", "drop_sum")


def _differential_term(quiver: Quiver, b: BasisVector, coeff, fault: Optional[str]):
    """Image terms of one basis vector under the degree-raising differential."""
    socle, (p, q) = b
    if socle.kind == "E":
        return
    a = socle.label
    src = quiver.arrows[a].source
    if q.is_trivial and not p.is_trivial and p.arrows[-1] == a and quiver.is_special(a):
        ph = quiver.truncate_last(p)
        e_src = quiver.trivial_path(src)
        unit_coeff = -coeff if fault == "flip_unit" else coeff
        yield BasisVector(vertex_socle(src), AdmissiblePair(ph, e_src)), unit_coeff
        if fault != "drop_sum":
            sum_coeff = coeff if fault == "flip_sum" else -coeff
            for beta in quiver.siblings(a):
                bp = compose(quiver.arrow_path(beta), ph)
                bq = quiver.arrow_path(beta)
                yield BasisVector(vertex_socle(src), AdmissiblePair(bp, bq)), sum_coeff
    else:
        qa = compose(q, quiver.arrow_path(a))
        yield BasisVector(vertex_socle(src), AdmissiblePair(p, qa)), coeff


def differential(quiver: Quiver, v: ChainVector, fault: Optional[str] = None) -> ChainVector:
    """The differential of a degree-homogeneous vector (degree l -> l + 1).

    Vertex-socle vectors die; an arrow-socle vector G(a) z_(p,q) maps to
    E(s(a)) z_(p, qa) except when q is trivial and p ends in a with a special,
    where relation-style correction terms appear. `fault` deliberately
    miswires the special case (test hook for the verification suites).
    """
    v.degree()   # raises when inhomogeneous
    return ChainVector.from_items(
        (b2, c2) for b, c in v.items() for b2, c2 in _differential_term(quiver, b, c, fault))


def cokernel_differential(quiver: Quiver, v: ChainVector, fault: Optional[str] = None) -> ChainVector:
    """The differential induced on the quotient by the p-trivial subcomplex:
    apply the differential, then drop image terms whose p is trivial."""
    image = differential(quiver, v, fault)
    return ChainVector({b: c for b, c in image.items() if not b.pair.p.is_trivial})


def quotient_differential(quiver: Quiver, v: ChainVector, fault: Optional[str] = None) -> ChainVector:
    """The differential on the p-length filtration layer: termwise, drop image
    terms whose p got shorter (they fall into lower layers)."""
    out = []
    for b, c in v.items():
        m = b.pair.p.length
        for b2, c2 in _differential_term(quiver, b, c, fault):
            if b2.pair.p.length >= m:
                out.append((b2, c2))
    return ChainVector.from_items(out)


# -- left action of the radical-square-zero algebra ---------------------

class ABasis(NamedTuple):
    kind: str    # "vertex" or "arrow"
    label: str


class AElement(LinearCombination):
    """An element of kQ/J^2 (basis: vertices and arrows)."""


def a_vertex(v: str, coeff=1) -> AElement:
    return AElement.single(ABasis("vertex", v), coeff)


def a_arrow(a: str, coeff=1) -> AElement:
    return AElement.single(ABasis("arrow", a), coeff)


def _a_act_term(quiver: Quiver, g: ABasis, b: BasisVector):
    """Action of a generator of kQ/J^2 on a basis vector: the new vector or None."""
    socle = b.socle
    if g.kind == "vertex":
        if socle.kind == "E":
            return b if socle.label == g.label else None
        return b if quiver.arrows[socle.label].source == g.label else None
    # arrow generator
    if socle.kind == "E":
        return None
    if socle.label != g.label:
        return None
    tgt = quiver.arrows[socle.label].target
    return BasisVector(vertex_socle(tgt), b.pair)


def a_action(quiver: Quiver, a: AElement, v: ChainVector) -> ChainVector:
    """The left kQ/J^2-action; the pair tag never moves."""
    out = []
    for g, ca in a.items():
        for b, cv in v.items():
            nb = _a_act_term(quiver, g, b)
            if nb is not None:
                out.append((nb, ca * cv))
    return ChainVector.from_items(out)


# -- kernel/image classification ----------------------------------------

class BasisClass(enum.Enum):
    """How the differential treats a basis vector."""
    KILLED = "killed"        # mapped to zero (vertex socle)
    SHIFTED = "shifted"      # mapped to a single new basis vector
    EXPANDED = "expanded"    # special case: a kernel vector minus shifted images


def classify(quiver: Quiver, b: BasisVector) -> BasisClass:
    socle, (p, q) = b
    if socle.kind == "E":
        return BasisClass.KILLED
    a = socle.label
    if q.is_trivial and not p.is_trivial and p.arrows[-1] == a and quiver.is_special(a):
        return BasisClass.EXPANDED
    return BasisClass.SHIFTED


def kernel_basis(quiver: Quiver, degree: int, nmax: int) -> list[BasisVector]:
    """All KILLED basis vectors of the given degree with l(q) <= nmax."""
    out = []
    for i in quiver.vertices:
        for n in range(nmax + 1):
            for pair in enumerate_pairs(quiver, i, degree, n):
                out.append(BasisVector(vertex_socle(i), pair))
    return out


def preimage_witness(quiver: Quiver, b: BasisVector) -> ChainVector:
    """A vector w with differential(w) == the given vertex-socle basis vector."""
    socle, (p, q) = b
    if socle.kind != "E":
        raise ValueError("preimage witnesses exist for vertex-socle vectors only")
    i = socle.label
    if q.is_trivial:
        items = []
        for a in quiver.out_arrows(i):
            ap = compose(quiver.arrow_path(a), p)
            e_t = quiver.trivial_path(quiver.arrows[a].target)
            items.append((BasisVector(arrow_socle(a), AdmissiblePair(ap, e_t)), 1))
        return ChainVector.from_items(items)
    a = q.arrows[0]
    qt = quiver.truncate_first(q)
    return ChainVector.single(BasisVector(arrow_socle(a), AdmissiblePair(p, qt)), 1)


# -- filtration ----------------------------------------------------------

class Membership(NamedTuple):
    in_m: bool                    # p trivial: the subcomplex resolving the semisimple
    layer: Optional[int]          # minimal n with the vector in the n-th filtration step
    block_vertex: Optional[str]   # s(p) for layer-1 vectors (projective block)
    block_path: Optional[Path]    # p with its last arrow dropped (layer decomposition tag)


def filtration_membership(quiver: Quiver, b: BasisVector) -> Membership:
    p = b.pair.p
    if p.is_trivial:
        return Membership(True, None, None, None)
    return Membership(
        False,
        p.length,
        p.source if p.length == 1 else None,
        quiver.truncate_last(p),
    )


def filtration_iso(quiver: Quiver, gamma: Path, v: ChainVector) -> ChainVector:
    """The layer isomorphism: strip the common leading segment gamma from p,
    keeping the last arrow, with the shift sign (-1)^(l * l(gamma))."""
    n = gamma.length + 1
    out = []
    for b, c in v.items():
        p = b.pair.p
        if p.length != n or p.arrows[:gamma.length] != gamma.arrows:
            raise ValueError(f"term {b} is not in the {gamma} block")
        beta = quiver.arrow_path(p.arrows[-1])
        sgn = sign_pow(basis_degree(b) * (n - 1))
        out.append((BasisVector(b.socle, AdmissiblePair(beta, b.pair.q)), c if sgn > 0 else -c))
    return ChainVector.from_items(out)


class ResolutionMaps(NamedTuple):
    semisimple_aug: dict[str, ChainVector]   # vertex -> degree-0 cycle
    projective_aug: dict[str, ChainVector]   # vertex -> degree-(-1) cycle of the reduced differential


def resolution_augmentations(quiver: Quiver) -> ResolutionMaps:
    simple = {}
    proj = {}
    for i in quiver.vertices:
        e = quiver.trivial_path(i)
        simple[i] = ChainVector.single(BasisVector(vertex_socle(i), AdmissiblePair(e, e)), 1)
        items = []
        for a in quiver.out_arrows(i):
            ap = quiver.arrow_path(a)
            e_t = quiver.trivial_path(ap.target)
            items.append((BasisVector(arrow_socle(a), AdmissiblePair(ap, e_t)), 1))
        proj[i] = ChainVector.from_items(items)
    return ResolutionMaps(simple, proj)


# -- bounded enumeration --------------------------------------------------

def socles_at(quiver: Quiver, i: str) -> list[Socle]:
    return [vertex_socle(i)] + [arrow_socle(a) for a in quiver.in_arrows(i)]


def slice_basis(quiver: Quiver, degree: int, qmax: int, pmax: Optional[int] = None) -> list[BasisVector]:
    """All basis vectors of one degree with l(q) <= qmax (and l(p) <= pmax if given)."""
    out = []
    for i in quiver.vertices:
        pairs = []
        for n in range(qmax + 1):
            if pmax is not None and n - degree > pmax:
                continue
            pairs.extend(enumerate_pairs(quiver, i, degree, n))
        for socle in socles_at(quiver, i):
            for pair in pairs:
                out.append(BasisVector(socle, pair))
    return out


def bounded_basis(quiver: Quiver, pmax: int, qmax: int) -> list[BasisVector]:
    """All basis vectors with l(p) <= pmax and l(q) <= qmax."""
    out = []
    for i in quiver.vertices:
        pairs = []
        for n in range(qmax + 1):
            for m in range(pmax + 1):
                pairs.extend(enumerate_pairs(quiver, i, n - m, n))
        for socle in socles_at(quiver, i):
            for pair in pairs:
                out.append(BasisVector(socle, pair))
    return out
