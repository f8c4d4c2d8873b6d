"""The right Leavitt-algebra action on the complex and the chain-level
round trip that witnesses quasi-balance.

A degree-n endomorphism candidate is a finite table mapping bounded basis
vectors to vectors; cocycle tables split into per-pair coefficient elements
(one shared element per pair seen through the vertex socle, one per arrow
socle), from which the representing algebra element and an explicit homotopy
are reconstructed and the defect identity is checked exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .algebra import (AdmissiblePair, LPAElement, enumerate_pairs,
                      mul, monomial, pair_degree, arrow_element)
from .complex import (BasisVector, ChainVector, arrow_socle, vertex_socle,
                      bounded_basis, differential)
from .quiver import Quiver, compose
from .scalars import RATIONALS, sign_pow


# -- the right action ------------------------------------------------------

def act_vertex(quiver: Quiver, v: ChainVector, j: str) -> ChainVector:
    """Right action of the vertex idempotent: keep terms with s(p) = j."""
    return ChainVector({b: c for b, c in v.items() if b.pair.p.source == j})


def act_arrow(quiver: Quiver, v: ChainVector, a: str) -> ChainVector:
    """Right action of an arrow: strip the first-traversed arrow of p, or
    append the arrow to the far end of q when p is trivial."""
    arr = quiver.arrows[a]
    out = []
    for b, c in v.items():
        p, q = b.pair
        if p.is_trivial:
            if arr.source == q.target:
                aq = compose(quiver.arrow_path(a), q)
                out.append((BasisVector(b.socle, AdmissiblePair(quiver.trivial_path(arr.target), aq)), c))
        elif p.arrows[0] == a:
            out.append((BasisVector(b.socle, AdmissiblePair(quiver.truncate_first(p), q)), c))
    return ChainVector.from_items(out)


def act_ghost(quiver: Quiver, v: ChainVector, a: str) -> ChainVector:
    """Right action of a ghost arrow: grow p by the arrow, with the special
    correction when p is trivial and q ends in the special arrow a."""
    arr = quiver.arrows[a]
    out = []
    for b, c in v.items():
        p, q = b.pair
        if p.is_trivial and not q.is_trivial and q.arrows[-1] == a and quiver.is_special(a):
            qh = quiver.truncate_last(q)
            out.append((BasisVector(b.socle, AdmissiblePair(quiver.trivial_path(arr.source), qh)), c))
            for beta in quiver.siblings(a):
                bpath = quiver.arrow_path(beta)
                bq = compose(bpath, qh)
                out.append((BasisVector(b.socle, AdmissiblePair(bpath, bq)), -c))
        elif p.source == arr.target:
            pa = compose(p, quiver.arrow_path(a))
            out.append((BasisVector(b.socle, AdmissiblePair(pa, q)), c))
    return ChainVector.from_items(out)


def act_monomial(quiver: Quiver, v: ChainVector, pair: AdmissiblePair) -> ChainVector:
    """Right action of a basis monomial p*q: project onto the s(q) idempotent,
    then apply q's arrows first-traversed-first, then p's arrows as ghosts
    last-traversed-first (the rightmost generator of the word acts first)."""
    w = act_vertex(quiver, v, pair.q.source)
    for a in pair.q.arrows:
        if not w:
            return w
        w = act_arrow(quiver, w, a)
    for a in reversed(pair.p.arrows):
        if not w:
            return w
        w = act_ghost(quiver, w, a)
    return w


def act(quiver: Quiver, v: ChainVector, b: LPAElement) -> ChainVector:
    """The right action of an algebra element in normal form."""
    total = ChainVector.zero()
    for pair, c in b.items():
        total = total + act_monomial(quiver, v, pair).scaled(c)
    return total


def koszul_right_action(quiver: Quiver, b: LPAElement, v: ChainVector) -> ChainVector:
    """Right multiplication with the Koszul sign: (-1)^(|b||v|) v.b for
    homogeneous inputs (the canonical map into the endomorphism complex)."""
    d = b.degree()
    l = v.degree()
    if d is None or l is None:
        return ChainVector.zero()
    w = act(quiver, v, b)
    return w if sign_pow(d * l) > 0 else -w


# -- the socle embeddings --------------------------------------------------

def vertex_socle_embed(quiver: Quiver, b: LPAElement) -> ChainVector:
    """Send each monomial (p, q) to E(s(q)) z_(p,q); injective."""
    return ChainVector.from_items(
        (BasisVector(vertex_socle(pair.q.source), pair), c) for pair, c in b.items())


def arrow_socle_embed(quiver: Quiver, beta: str, b: LPAElement) -> ChainVector:
    """Send (p, q) to G(beta) z_(p,q) when s(q) = t(beta), else 0."""
    tb = quiver.arrows[beta].target
    return ChainVector.from_items(
        (BasisVector(arrow_socle(beta), pair), c)
        for pair, c in b.items() if pair.q.source == tb)


def vertex_socle_extract(quiver: Quiver, v: ChainVector, at_vertex: Optional[str] = None) -> LPAElement:
    """Inverse of vertex_socle_embed on its image."""
    items = []
    for b, c in v.items():
        if b.socle.kind != "E":
            raise ValueError(f"unexpected arrow-socle term {b}")
        if at_vertex is not None and b.socle.label != at_vertex:
            raise ValueError(f"socle vertex {b.socle.label} != expected {at_vertex}")
        items.append((b.pair, c))
    return LPAElement.from_items(items)


def arrow_socle_extract(quiver: Quiver, beta: str, v: ChainVector) -> LPAElement:
    """Inverse of arrow_socle_embed on its image."""
    items = []
    for b, c in v.items():
        if b.socle != arrow_socle(beta):
            raise ValueError(f"term {b} does not carry the {beta} socle symbol")
        items.append((b.pair, c))
    return LPAElement.from_items(items)


# -- endomorphism tables ----------------------------------------------------

Table = dict  # BasisVector -> ChainVector; missing entries read as zero


def table_value(table: Table, b: BasisVector) -> ChainVector:
    return table.get(b, ChainVector.zero())


def apply_table(table: Table, v: ChainVector) -> ChainVector:
    out = ChainVector.zero()
    for b, c in v.items():
        if b not in table:
            raise KeyError(f"table not defined on {b}")
        out = out + table[b].scaled(c)
    return out


def a_linear_table(quiver: Quiver, vertex_part: dict, arrow_part: dict,
                   support: list[AdmissiblePair]) -> Table:
    """Materialize the generic module-map shape on the given pairs:
    E(i) z_(p,q) -> embed(vertex_part[(p,q)]) and
    G(a) z_(p,q) -> embed(arrow_part[a,(p,q)]) + a-socle embed(vertex_part[(p,q)])."""
    table: Table = {}
    for pair in support:
        i = pair.q.source
        w = vertex_part.get(pair, LPAElement.zero())
        table[BasisVector(vertex_socle(i), pair)] = vertex_socle_embed(quiver, w)
        for a in quiver.in_arrows(i):
            u = arrow_part.get((a, pair), LPAElement.zero())
            table[BasisVector(arrow_socle(a), pair)] = (
                vertex_socle_embed(quiver, u) + arrow_socle_embed(quiver, a, w))
    return table


def coboundary_value(quiver: Quiver, h: Table, n: int, b: BasisVector) -> ChainVector:
    """(d o h - (-1)^(n-1) h o d)(b) for a degree-(n-1) table h."""
    first = differential(quiver, table_value(h, b))
    second = apply_table(h, differential(quiver, ChainVector.single(b, 1)))
    return first - second if sign_pow(n - 1) > 0 else first + second


# -- cocycle data, recovery and homotopy ------------------------------------

class CocycleShapeError(ValueError):
    """A table value is not of the module-map shape."""


class ConsistencyError(ValueError):
    """The per-pair coefficients violate the compatibility recursion."""


@dataclass
class CocycleData:
    """Per-pair coefficients of a degree-n cocycle table.

    vertex_part[(p,q)] is the element carried by E(s(q)) z_(p,q); it is shared
    with the arrow-socle values. arrow_part[a,(p,q)] is the extra vertex-socle
    contribution of G(a) z_(p,q).
    """
    quiver: Quiver
    degree: int
    vertex_part: dict = dc_field(default_factory=dict)
    arrow_part: dict = dc_field(default_factory=dict)
    consistency_checks: int = 0


def extract_cocycle_data(quiver: Quiver, y: Table, n: int) -> CocycleData:
    """Split a degree-n module-map table into per-pair coefficient elements,
    validating the shape and the coefficient recursion on the support."""
    data = CocycleData(quiver, n)
    support = sorted({b.pair for b in y if b.socle.kind == "E"},
                     key=lambda pr: (pr.q.source, pr.p.arrows, pr.q.arrows))
    for pair in support:
        i = pair.q.source
        l = pair_degree(pair)
        ev = BasisVector(vertex_socle(i), pair)
        nu = vertex_socle_extract(quiver, y[ev])
        for mp, _ in nu.items():
            if mp.q.source != i:
                raise CocycleShapeError(f"value at {ev} leaves L.e_{i}")
        if nu and nu.degree() != n + l:
            raise CocycleShapeError(f"value at {ev} has degree {nu.degree()} != {n + l}")
        data.vertex_part[pair] = nu
        for a in quiver.in_arrows(i):
            gv = BasisVector(arrow_socle(a), pair)
            if gv not in y:
                continue
            mu_items, nu_items = [], []
            for b, c in y[gv].items():
                if b.socle.kind == "E":
                    if b.socle.label != quiver.arrows[a].source:
                        raise CocycleShapeError(
                            f"vertex-socle term of y({gv}) sits at {b.socle.label}, "
                            f"not at s({a})")
                    mu_items.append((b.pair, c))
                else:
                    if b.socle.label != a:
                        raise CocycleShapeError(
                            f"y({gv}) carries the {b.socle.label} socle symbol")
                    nu_items.append((b.pair, c))
            mu = LPAElement.from_items(mu_items)
            if LPAElement.from_items(nu_items) != nu:
                raise CocycleShapeError(
                    f"arrow-socle part of y({gv}) disagrees with the shared coefficient")
            if mu and mu.degree() != n + l:
                raise CocycleShapeError(f"extra part at {gv} has degree {mu.degree()} != {n + l}")
            data.arrow_part[(a, pair)] = mu
    _check_consistency(data)
    return data


def _consistency_rhs(data: CocycleData, pair: AdmissiblePair, a: str) -> Optional[LPAElement]:
    """Right-hand side of the coefficient recursion, or None if outside support."""
    quiver, n = data.quiver, data.degree
    p, q = pair
    if q.is_trivial and not p.is_trivial and p.arrows[-1] == a and quiver.is_special(a):
        ph = quiver.truncate_last(p)
        e_src = quiver.trivial_path(quiver.arrows[a].source)
        acc = data.vertex_part.get(AdmissiblePair(ph, e_src))
        if acc is None:
            return None
        for beta in quiver.siblings(a):
            bpair = AdmissiblePair(compose(quiver.arrow_path(beta), ph), quiver.arrow_path(beta))
            term = data.vertex_part.get(bpair)
            if term is None:
                return None
            acc = acc - term
    else:
        qa_pair = AdmissiblePair(p, compose(q, quiver.arrow_path(a)))
        acc = data.vertex_part.get(qa_pair)
        if acc is None:
            return None
    return acc if sign_pow(n) > 0 else -acc


def _check_consistency(data: CocycleData):
    quiver = data.quiver
    for pair, nu in data.vertex_part.items():
        for a in quiver.in_arrows(pair.q.source):
            rhs = _consistency_rhs(data, pair, a)
            if rhs is None:
                continue
            lhs = mul(quiver, nu, arrow_element(quiver, a))
            if lhs != rhs:
                raise ConsistencyError(
                    f"coefficient recursion fails at pair {pair}, arrow {a}")
            data.consistency_checks += 1


def recover_element(data: CocycleData) -> LPAElement:
    """The algebra element x with coefficient family (-1)^(n l) x p*q;
    verified against every supported pair."""
    quiver, n = data.quiver, data.degree
    x = LPAElement.zero()
    for j in quiver.vertices:
        e = quiver.trivial_path(j)
        pair = AdmissiblePair(e, e)
        if pair not in data.vertex_part:
            raise ConsistencyError(f"support misses the vertex pair at {j}")
        x = x + data.vertex_part[pair]
    for pair, nu in data.vertex_part.items():
        l = pair_degree(pair)
        expect = mul(quiver, x, monomial(pair, 1))
        if sign_pow(n * l) < 0:
            expect = -expect
        if expect != nu:
            raise ConsistencyError(f"recovered element fails at pair {pair}")
    return x


@dataclass
class HomotopyTable:
    """Per-pair coefficients of the contracting map of degree n-1."""
    quiver: Quiver
    degree: int                      # n - 1
    coeffs: dict = dc_field(default_factory=dict)
    identity_checks: int = 0


def build_homotopy(data: CocycleData, extra_pairs=()) -> HomotopyTable:
    """Fill the homotopy coefficients by the double recursion: first along
    p with q trivial, then along q; verify the multiplication identity they
    satisfy wherever all entries are available.

    The recursion consumes arrow parts one q-step below each filled pair, so
    it can extend past the extraction support (pass `extra_pairs` for that);
    a missing required arrow part raises ConsistencyError naming the pair.
    """
    quiver, n = data.quiver, data.degree
    table = HomotopyTable(quiver, n - 1)
    omega = table.coeffs

    def need_mu(a: str, pair: AdmissiblePair) -> LPAElement:
        got = data.arrow_part.get((a, pair))
        if got is None:
            raise ConsistencyError(f"support too small: missing arrow part at ({a}, {pair})")
        return got

    pairs = sorted(set(data.vertex_part) | set(extra_pairs),
                   key=lambda pr: (pr.p.length, pr.q.length,
                                   pr.q.source, pr.p.arrows, pr.q.arrows))
    # base and the q-trivial column, by increasing l(p)
    for pair in pairs:
        p, q = pair
        if not q.is_trivial:
            continue
        if p.is_trivial:
            i = p.source
            acc = LPAElement.zero()
            for beta in quiver.out_arrows(i):
                bpath = quiver.arrow_path(beta)
                acc = acc + need_mu(beta, AdmissiblePair(bpath, quiver.trivial_path(bpath.target)))
            omega[pair] = acc
        else:
            gamma = p.arrows[-1]
            ph = quiver.truncate_last(p)
            prev = omega.get(AdmissiblePair(ph, quiver.trivial_path(ph.target)))
            if prev is None:
                raise ConsistencyError(f"support too small: missing coefficient at ({ph}, trivial)")
            gstar = monomial(AdmissiblePair(quiver.arrow_path(gamma),
                                            quiver.trivial_path(quiver.arrows[gamma].target)), 1)
            acc = mul(quiver, prev, gstar)
            if sign_pow(n - 1) < 0:
                acc = -acc
            for beta in quiver.out_arrows(quiver.arrows[gamma].source):
                bp = compose(quiver.arrow_path(beta), ph)
                bpair = AdmissiblePair(bp, quiver.trivial_path(quiver.arrows[beta].target))
                acc = acc + mul(quiver, need_mu(beta, bpair), gstar)
            omega[pair] = acc
    # extend along q
    for pair in pairs:
        p, q = pair
        if q.is_trivial:
            continue
        delta = q.arrows[0]
        qt = quiver.truncate_first(q)
        base_pair = AdmissiblePair(p, qt)
        prev = omega.get(base_pair)
        if prev is None:
            raise ConsistencyError(f"support too small: missing coefficient at {base_pair}")
        step = mul(quiver, prev, arrow_element(quiver, delta)) - need_mu(delta, base_pair)
        omega[pair] = step if sign_pow(n - 1) > 0 else -step

    _check_homotopy_identity(data, table)
    return table


def _check_homotopy_identity(data: CocycleData, table: HomotopyTable):
    """omega_(p,q) a - mu^a_(p,q) must reproduce the same case split as the
    differential, up to the sign (-1)^(n-1); checked where entries exist."""
    quiver, n = data.quiver, data.degree
    omega = table.coeffs
    for pair, om in omega.items():
        p, q = pair
        for a in quiver.in_arrows(q.source):
            mu = data.arrow_part.get((a, pair))
            if mu is None:
                continue
            if q.is_trivial and not p.is_trivial and p.arrows[-1] == a and quiver.is_special(a):
                ph = quiver.truncate_last(p)
                rhs = omega.get(AdmissiblePair(ph, quiver.trivial_path(ph.target)))
                if rhs is None:
                    continue
                missing = False
                for beta in quiver.siblings(a):
                    bpair = AdmissiblePair(compose(quiver.arrow_path(beta), ph),
                                           quiver.arrow_path(beta))
                    part = omega.get(bpair)
                    if part is None:
                        missing = True
                        break
                    rhs = rhs - part
                if missing:
                    continue
            else:
                rhs = omega.get(AdmissiblePair(p, compose(q, quiver.arrow_path(a))))
                if rhs is None:
                    continue
            if sign_pow(n - 1) < 0:
                rhs = -rhs
            lhs = mul(quiver, om, arrow_element(quiver, a)) - mu
            if lhs != rhs:
                raise ConsistencyError(f"homotopy identity fails at {pair}, arrow {a}")
            table.identity_checks += 1


def homotopy_map(data: CocycleData, table: HomotopyTable) -> Table:
    """Materialize the homotopy as a table: vertex socles get the embedded
    coefficient, arrow socles its arrow-socle shadow."""
    quiver = data.quiver
    h: Table = {}
    for pair, om in table.coeffs.items():
        i = pair.q.source
        h[BasisVector(vertex_socle(i), pair)] = vertex_socle_embed(quiver, om)
        for a in quiver.in_arrows(i):
            h[BasisVector(arrow_socle(a), pair)] = arrow_socle_embed(quiver, a, om)
    return h


# -- bounded supports and random data ---------------------------------------

def bounded_pairs(quiver: Quiver, pmax: int, qmax: int) -> list[AdmissiblePair]:
    out = []
    for i in quiver.vertices:
        for n in range(qmax + 1):
            for m in range(pmax + 1):
                out.extend(enumerate_pairs(quiver, i, n - m, n))
    return out


def interior_pairs(quiver: Quiver, pmax: int, qmax: int) -> list[AdmissiblePair]:
    """Pairs whose basis vectors have their differential image inside the
    (pmax, qmax) bound: l(q) <= qmax - 1."""
    return bounded_pairs(quiver, pmax, qmax - 1)


def random_homogeneous_element(quiver: Quiver, rng, degree: int, vertex: Optional[str] = None,
                               qmax: int = 3, terms: int = 2, field=RATIONALS) -> LPAElement:
    """A seeded random homogeneous element of the given degree, with s(q)
    constrained to `vertex` when given (so it lies in L.e_vertex)."""
    pool = []
    vertices = [vertex] if vertex is not None else list(quiver.vertices)
    for i in vertices:
        for n in range(max(degree, 0), qmax + 1):
            pool.extend(enumerate_pairs(quiver, i, degree, n))
    if not pool:
        return LPAElement.zero()
    items = []
    for _ in range(terms):
        pair = pool[rng.randrange(len(pool))]
        coeff = field.from_int(rng.choice([-2, -1, 1, 2, 3]))
        items.append((pair, coeff))
    return LPAElement.from_items(items)


def random_a_linear_table(quiver: Quiver, rng, n: int, pmax: int, qmax: int,
                          density: float = 0.3, field=RATIONALS) -> Table:
    """A seeded random sparse degree-(n-1) table of module-map shape, total on
    the (pmax, qmax) bound (unpicked entries are zero)."""
    support = bounded_pairs(quiver, pmax, qmax)
    vertex_part: dict = {}
    arrow_part: dict = {}
    for pair in support:
        l = pair_degree(pair)
        i = pair.q.source
        if rng.random() < density:
            vertex_part[pair] = random_homogeneous_element(
                quiver, rng, n - 1 + l, vertex=i, qmax=qmax, field=field)
        for a in quiver.in_arrows(i):
            if rng.random() < density:
                arrow_part[(a, pair)] = random_homogeneous_element(
                    quiver, rng, n - 1 + l, vertex=quiver.arrows[a].source, qmax=qmax, field=field)
    return a_linear_table(quiver, vertex_part, arrow_part, support)


# -- dg compatibility and the round trip ------------------------------------

def generator_actions(quiver: Quiver):
    """(label, action function) for every algebra generator."""
    gens = []
    for j in quiver.vertices:
        gens.append((f"e({j})", lambda v, j=j: act_vertex(quiver, v, j)))
    for a in sorted(quiver.arrows):
        gens.append((a, lambda v, a=a: act_arrow(quiver, v, a)))
        gens.append((a + "*", lambda v, a=a: act_ghost(quiver, v, a)))
    return gens


def dg_compat_violations(quiver: Quiver, pmax: int, qmax: int,
                         fault: Optional[str] = None) -> list[tuple[BasisVector, str]]:
    """Basis vectors and generators where d(v.g) != d(v).g (expect none)."""
    bad = []
    gens = generator_actions(quiver)
    for b in bounded_basis(quiver, pmax, qmax):
        v = ChainVector.single(b, 1)
        dv = differential(quiver, v, fault)
        for label, action in gens:
            if differential(quiver, action(v), fault) != action(dv):
                bad.append((b, label))
    return bad


@dataclass
class RoundtripResult:
    recovered: LPAElement
    checked_vectors: int
    consistency_checks: int
    identity_checks: int
    failures: list


def roundtrip_check(quiver: Quiver, x0: LPAElement, h0: Table, n: int,
                    pmax: int, qmax: int) -> RoundtripResult:
    """Form y as the canonical image of x0 plus the coboundary of h0, then
    extract coefficients, recover the element, build the homotopy and verify
    the defect identity on the interior of the bound. Exact throughout."""
    interior = bounded_basis(quiver, pmax, qmax - 1)
    y: Table = {}
    for b in interior:
        v = ChainVector.single(b, 1)
        y[b] = koszul_right_action(quiver, x0, v) + coboundary_value(quiver, h0, n, b)
    data = extract_cocycle_data(quiver, y, n)
    x = recover_element(data)
    table = build_homotopy(data, extra_pairs=bounded_pairs(quiver, pmax, qmax))
    h = homotopy_map(data, table)
    failures = []
    for b in interior:
        v = ChainVector.single(b, 1)
        lhs = y[b] - koszul_right_action(quiver, x, v)
        rhs = coboundary_value(quiver, h, n, b)
        if lhs != rhs:
            failures.append(b)
    return RoundtripResult(x, len(interior), data.consistency_checks,
                           table.identity_checks, failures)
