"""Named verification suites behind `leavitt verify` and the acceptance tests.

Every check is exact; a failing check always carries a serialized
counterexample. Randomized checks draw from a seeded generator so reports
are reproducible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from . import bimodule
from .algebra import (AdmissiblePair, LPAElement, arrow_element, enumerate_pairs,
                      ghost_element, idempotent, is_admissible, monomial, mul,
                      mul_monomials, pair_degree, unit)
from .complex import (BasisClass, BasisVector, ChainVector, a_arrow, a_vertex,
                      a_action, arrow_socle, basis_key, bounded_basis, classify,
                      cokernel_differential, differential, filtration_iso,
                      kernel_basis, preimage_witness, quotient_differential,
                      resolution_augmentations, slice_basis, vertex_socle)
from .exprs import format_basis_vector, format_element, format_pair, format_path, format_vector
from .linalg import sparse_rank, span_equal
from .quiver import Quiver, compose, enumerate_paths
from .scalars import RATIONALS, sign_pow


@dataclass
class CheckRecord:
    name: str
    status: str                      # "pass" | "fail"
    checks: int
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _record(name: str, checks: int, failure: Optional[str]) -> CheckRecord:
    return CheckRecord(name, "fail" if failure else "pass", checks, failure)


# -- complex suite -----------------------------------------------------------

def check_d_squared(quiver: Quiver, pmax: int, qmax: int, fault=None) -> CheckRecord:
    count = 0
    failure = None
    for b in bounded_basis(quiver, pmax, qmax):
        count += 1
        dd = differential(quiver, differential(quiver, ChainVector.single(b, 1), fault), fault)
        if dd:
            failure = f"d(d({format_basis_vector(b)})) = {format_vector(dd, quiver)}"
            break
    return _record("complex.d_squared_zero", count, failure)


def check_differential_module_map(quiver: Quiver, pmax: int, qmax: int, fault=None) -> CheckRecord:
    gens = [a_vertex(j) for j in quiver.vertices] + [a_arrow(a) for a in sorted(quiver.arrows)]
    count = 0
    failure = None
    for b in bounded_basis(quiver, pmax, qmax):
        v = ChainVector.single(b, 1)
        dv = differential(quiver, v, fault)
        for g in gens:
            count += 1
            if differential(quiver, a_action(quiver, g, v), fault) != a_action(quiver, g, dv):
                failure = f"left action does not commute with d at {format_basis_vector(b)}"
                break
        if failure:
            break
    return _record("complex.differential_module_map", count, failure)


def check_kernel_classification(quiver: Quiver, degrees, qmax: int, fault=None) -> list[CheckRecord]:
    """The three-way basis classification drives kernel and image bases."""
    records = []
    killed_total = shifted_total = expanded_total = preimage_total = 0
    fail_killed = fail_shifted = fail_expanded = fail_preimage = None
    rank_checks = 0
    fail_rank = None
    for l in degrees:
        basis = slice_basis(quiver, l, qmax)
        shifted_images = {}
        expanded_units = {}
        rows = []
        for b in basis:
            v = ChainVector.single(b, 1)
            dv = differential(quiver, v, fault)
            rows.append(dv.terms)
            cls = classify(quiver, b)
            if cls is BasisClass.KILLED:
                killed_total += 1
                if dv and not fail_killed:
                    fail_killed = (f"vertex-socle vector not killed: "
                                   f"d({format_basis_vector(b)}) = {format_vector(dv, quiver)}")
            elif cls is BasisClass.SHIFTED:
                shifted_total += 1
                terms = list(dv.items())
                ok = (len(terms) == 1 and terms[0][1] == 1
                      and not terms[0][0].pair.q.is_trivial)
                if ok:
                    img = terms[0][0]
                    if img in shifted_images:
                        ok = False
                    shifted_images[img] = b
                if not ok and not fail_shifted:
                    fail_shifted = (f"shifted vector image not a fresh basis vector: "
                                    f"d({format_basis_vector(b)}) = {format_vector(dv, quiver)}")
            else:
                expanded_total += 1
                a = b.socle.label
                ph = quiver.truncate_last(b.pair.p)
                unit_vec = BasisVector(
                    vertex_socle(quiver.arrows[a].source),
                    AdmissiblePair(ph, quiver.trivial_path(quiver.arrows[a].source)))
                expect = ChainVector.single(unit_vec, 1)
                for beta in quiver.siblings(a):
                    companion = BasisVector(
                        arrow_socle(beta),
                        AdmissiblePair(compose(quiver.arrow_path(beta), ph),
                                       quiver.trivial_path(quiver.arrows[beta].target)))
                    expect = expect - differential(quiver, ChainVector.single(companion, 1), fault)
                ok = dv == expect and unit_vec not in expanded_units
                expanded_units[unit_vec] = b
                if not ok and not fail_expanded:
                    fail_expanded = (f"expanded vector image violates the relation split at "
                                     f"{format_basis_vector(b)}")
        # constructive surjectivity onto the kernel
        for k in kernel_basis(quiver, l, qmax):
            preimage_total += 1
            w = preimage_witness(quiver, k)
            got = differential(quiver, w, fault)
            if got != ChainVector.single(k, 1) and not fail_preimage:
                fail_preimage = (f"preimage witness broken: d({format_vector(w, quiver)}) = "
                                 f"{format_vector(got, quiver)} != {format_basis_vector(k)}")
        # exact cross-check: dim ker == #killed on the slice
        keyfn = lambda b: basis_key(quiver, b)
        r = sparse_rank(rows, key=keyfn)
        rank_checks += 1
        n_killed = sum(1 for b in basis if classify(quiver, b) is BasisClass.KILLED)
        if len(basis) - r != n_killed and not fail_rank:
            fail_rank = (f"degree {l}: rank {r} over {len(basis)} basis vectors leaves "
                         f"kernel dim {len(basis) - r} != {n_killed} killed vectors")
    records.append(_record("complex.kernel_vectors_killed", killed_total, fail_killed))
    records.append(_record("complex.shifted_images_distinct", shifted_total, fail_shifted))
    records.append(_record("complex.expanded_relation_split", expanded_total, fail_expanded))
    records.append(_record("complex.preimage_witnesses", preimage_total, fail_preimage))
    records.append(_record("complex.kernel_rank", rank_checks, fail_rank))
    return records


def check_resolutions(quiver: Quiver, fault=None) -> list[CheckRecord]:
    maps = resolution_augmentations(quiver)
    count = 0
    failure = None
    for i, v in maps.semisimple_aug.items():
        count += 1
        dv = differential(quiver, v, fault)
        if dv and not failure:
            failure = f"semisimple augmentation at {i} is not a cycle"
    for j, v in maps.projective_aug.items():
        count += 1
        dv = cokernel_differential(quiver, v, fault)
        if dv and not failure:
            failure = f"projective augmentation at {j} is not a cycle"
    rec1 = _record("complex.augmentations_are_cycles", count, failure)

    # kernel of d^0 on the p-trivial degree-0 block == span of the units
    failure = None
    count = 0
    block = [b for b in slice_basis(quiver, 0, 0)]
    in_kernel = []
    for b in block:
        dv = differential(quiver, ChainVector.single(b, 1), fault)
        if not dv:
            in_kernel.append(ChainVector.single(b, 1))
    count += 1
    gens = list(maps.semisimple_aug.values())
    rows = [differential(quiver, ChainVector.single(b, 1), fault).terms for b in block]
    keyfn = lambda bb: basis_key(quiver, bb)
    ker_dim = len(block) - sparse_rank(rows, key=keyfn)
    if not (span_equal(in_kernel, gens) and ker_dim == len(gens)):
        failure = "kernel of d^0 on the p-trivial block differs from the unit span"
    rec2 = _record("complex.semisimple_kernel", count, failure)

    # kernel of the reduced d^(-1) on each projective block
    failure = None
    count = 0
    for j in quiver.vertices:
        count += 1
        block = []
        for i in quiver.vertices:
            for pair in enumerate_pairs(quiver, i, -1, 0):
                if pair.p.source == j:
                    for socle in [vertex_socle(i)] + [arrow_socle(a) for a in quiver.in_arrows(i)]:
                        block.append(BasisVector(socle, pair))
        rows = []
        for b in block:
            dv = cokernel_differential(quiver, ChainVector.single(b, 1), fault)
            rows.append(dv.terms)
        expected = [ChainVector.single(b, 1) for b in block if b.socle.kind == "E"]
        expected.append(maps.projective_aug[j])
        ker_dim = len(block) - sparse_rank(rows, key=keyfn)
        # the expected family is independent: vertex-socle singletons plus a
        # vector supported on arrow socles
        if ker_dim != len(expected):
            failure = (f"projective block at {j}: kernel dim {ker_dim} != {len(expected)}")
            continue
        for v in expected:
            if cokernel_differential(quiver, v, fault):
                failure = f"projective block at {j}: expected kernel vector is not a cycle"
                break
    rec3 = _record("complex.projective_kernel", count, failure)
    return [rec1, rec2, rec3]


def check_filtration_iso(quiver: Quiver, layer_max: int, qmax: int, fault=None) -> CheckRecord:
    count = 0
    failure = None
    for n in range(1, layer_max + 1):
        sgn = sign_pow(n - 1)
        for gamma in enumerate_paths(quiver, n - 1):
            for l in range(-n, qmax - n + 1):
                for i in quiver.vertices:
                    for pair in enumerate_pairs(quiver, i, l, l + n):
                        if pair.p.arrows[: n - 1] != gamma.arrows or pair.p.source != gamma.source:
                            continue
                        for socle in [vertex_socle(i)] + [arrow_socle(a) for a in quiver.in_arrows(i)]:
                            b = BasisVector(socle, pair)
                            count += 1
                            v = ChainVector.single(b, 1)
                            lhs = filtration_iso(quiver, gamma, quotient_differential(quiver, v, fault))
                            rhs = quotient_differential(quiver, filtration_iso(quiver, gamma, v), fault)
                            if sgn < 0:
                                rhs = -rhs
                            if lhs != rhs:
                                failure = (f"layer iso fails to intertwine at layer {n}, "
                                           f"segment {format_path(gamma)}, "
                                           f"vector {format_basis_vector(b)}")
                                break
                        if failure:
                            break
                    if failure:
                        break
                if failure:
                    break
            if failure:
                break
        if failure:
            break
    return _record("complex.filtration_iso_sign", count, failure)


def suite_complex(quiver: Quiver, nmax: int, degrees, fault=None) -> list[CheckRecord]:
    recs = [check_d_squared(quiver, nmax, nmax, fault),
            check_differential_module_map(quiver, nmax, nmax, fault)]
    recs.extend(check_kernel_classification(quiver, degrees, nmax, fault))
    recs.extend(check_resolutions(quiver, fault))
    recs.append(check_filtration_iso(quiver, min(3, nmax), nmax, fault))
    return recs


# -- algebra suite ------------------------------------------------------------

def bounded_monomials(quiver: Quiver, lenmax: int) -> list[AdmissiblePair]:
    out = []
    for i in quiver.vertices:
        for n in range(lenmax + 1):
            for m in range(lenmax + 1):
                out.extend(enumerate_pairs(quiver, i, n - m, n))
    return out


def check_cuntz_krieger(quiver: Quiver, field=RATIONALS) -> CheckRecord:
    count = 0
    failure = None
    for a in sorted(quiver.arrows):
        for b in sorted(quiver.arrows):
            count += 1
            got = mul(quiver, arrow_element(quiver, a, field), ghost_element(quiver, b, field))
            want = idempotent(quiver, quiver.arrows[a].target, field) if a == b else LPAElement.zero()
            if got != want and not failure:
                failure = f"{a} . {b}* = {format_element(got)}"
    for i in quiver.vertices:
        count += 1
        acc = LPAElement.zero()
        for a in quiver.out_arrows(i):
            acc = acc + mul(quiver, ghost_element(quiver, a, field), arrow_element(quiver, a, field))
        if acc != idempotent(quiver, i, field) and not failure:
            failure = f"sum of {i}-ghost products = {format_element(acc)}"
    return _record("algebra.cuntz_krieger", count, failure)


def check_unit_laws(quiver: Quiver, lenmax: int, field=RATIONALS) -> CheckRecord:
    one = unit(quiver, field)
    count = 0
    failure = None
    for pair in bounded_monomials(quiver, lenmax):
        count += 1
        m = monomial(pair, field.one())
        if mul(quiver, one, m) != m or mul(quiver, m, one) != m:
            failure = f"unit law fails on {format_element(m)}"
            break
    return _record("algebra.unit_laws", count, failure)


def check_grading(quiver: Quiver, lenmax: int, field=RATIONALS) -> CheckRecord:
    count = 0
    failure = None
    mons = bounded_monomials(quiver, lenmax)
    for x in mons:
        for y in mons:
            count += 1
            prod = mul(quiver, monomial(x, field.one()), monomial(y, field.one()))
            want = pair_degree(x) + pair_degree(y)
            if prod and prod.degrees() != {want}:
                failure = (f"product of degrees {pair_degree(x)}, {pair_degree(y)} "
                           f"is not homogeneous of degree {want}")
                break
        if failure:
            break
    return _record("algebra.grading_multiplicative", count, failure)


def _indexed_products(quiver: Quiver, mons: list[AdmissiblePair]):
    """Integer structure constants over a lazily-extended monomial index."""
    index: dict[AdmissiblePair, int] = {}
    pairs: list[AdmissiblePair] = []

    def idx(pair: AdmissiblePair) -> int:
        k = index.get(pair)
        if k is None:
            k = len(pairs)
            index[pair] = k
            pairs.append(pair)
        return k

    for m in mons:
        idx(m)
    table: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}

    def product(i: int, j: int) -> tuple[tuple[int, int], ...]:
        got = table.get((i, j))
        if got is None:
            raw = mul_monomials(quiver, pairs[i], pairs[j])
            got = tuple(sorted((idx(pr), c) for pr, c in raw.items()))
            table[(i, j)] = got
        return got

    return pairs, product


def check_associativity_exhaustive(quiver: Quiver, lenmax: int) -> CheckRecord:
    mons = bounded_monomials(quiver, lenmax)
    pairs, product = _indexed_products(quiver, mons)
    k = len(mons)
    count = 0
    failure = None
    for i in range(k):
        for j in range(k):
            ij = product(i, j)
            ij_single = len(ij) == 1 and ij[0][1] == 1
            for t in range(k):
                count += 1
                if ij_single:
                    lhs_t = product(ij[0][0], t)
                else:
                    acc: dict[int, int] = {}
                    for m, c in ij:
                        for r, c2 in product(m, t):
                            s = acc.get(r, 0) + c * c2
                            if s:
                                acc[r] = s
                            elif r in acc:
                                del acc[r]
                    lhs_t = tuple(sorted(acc.items()))
                jt = product(j, t)
                if len(jt) == 1 and jt[0][1] == 1:
                    rhs_t = product(i, jt[0][0])
                else:
                    acc = {}
                    for m, c in jt:
                        for r, c2 in product(i, m):
                            s = acc.get(r, 0) + c * c2
                            if s:
                                acc[r] = s
                            elif r in acc:
                                del acc[r]
                    rhs_t = tuple(sorted(acc.items()))
                if lhs_t != rhs_t:
                    failure = (f"associativity fails on monomials "
                               f"{format_pair(pairs[i])}, {format_pair(pairs[j])}, "
                               f"{format_pair(pairs[t])}")
                    break
            if failure:
                break
        if failure:
            break
    return _record("algebra.associativity_monomials", count, failure)


def random_element(quiver: Quiver, rng, lenmax: int, field=RATIONALS, terms: int = 3) -> LPAElement:
    mons = bounded_monomials(quiver, lenmax)
    items = []
    for _ in range(terms):
        pair = mons[rng.randrange(len(mons))]
        items.append((pair, field.from_int(rng.choice([-2, -1, 1, 2]))))
    return LPAElement.from_items(items)


def check_associativity_random(quiver: Quiver, trials: int, seed: int,
                               lenmax: int = 3, field=RATIONALS) -> CheckRecord:
    rng = random.Random(seed)
    failure = None
    for _ in range(trials):
        a = random_element(quiver, rng, lenmax, field)
        b = random_element(quiver, rng, lenmax, field)
        c = random_element(quiver, rng, lenmax, field)
        if mul(quiver, mul(quiver, a, b), c) != mul(quiver, a, mul(quiver, b, c)):
            failure = (f"associativity fails on ({format_element(a)}), "
                       f"({format_element(b)}), ({format_element(c)})")
            break
    return _record("algebra.associativity_random", trials, failure)


def brute_force_pair_count(quiver: Quiver, vertex: str, degree: int, q_length: int) -> int:
    """Independent filter over all path pairs (no admissibility helper)."""
    n, m = q_length, q_length - degree
    if n < 0 or m < 0:
        return 0
    count = 0
    for p in enumerate_paths(quiver, m):
        for q in enumerate_paths(quiver, n, source=vertex):
            if p.target != q.target:
                continue
            if p.arrows and q.arrows and p.arrows[-1] == q.arrows[-1]:
                last = p.arrows[-1]
                if quiver.special[quiver.arrows[last].source] == last:
                    continue
            count += 1
    return count


def check_basis_counts(quiver: Quiver, lmax: int, nmax: int) -> CheckRecord:
    count = 0
    failure = None
    for i in quiver.vertices:
        for l in range(-lmax, lmax + 1):
            for n in range(nmax + 1):
                count += 1
                got = len(enumerate_pairs(quiver, i, l, n))
                want = brute_force_pair_count(quiver, i, l, n)
                if got != want:
                    failure = (f"pair count at vertex {i}, degree {l}, q-length {n}: "
                               f"{got} != brute force {want}")
                    break
            if failure:
                break
        if failure:
            break
    return _record("algebra.basis_counts", count, failure)


def check_witnesses(quiver: Quiver, lmax: int) -> CheckRecord:
    from .algebra import witness_pair
    count = 0
    failure = None
    for i in quiver.vertices:
        for l in range(-lmax, lmax + 1):
            count += 1
            pair = witness_pair(quiver, i, l)
            ok = (is_admissible(quiver, pair.p, pair.q)
                  and pair.q.source == i and pair_degree(pair) == l)
            if ok:
                listed = enumerate_pairs(quiver, i, l, pair.q.length)
                ok = pair in listed
            if not ok:
                failure = f"witness at vertex {i}, degree {l} is not a valid pair: {format_pair(pair)}"
                break
        if failure:
            break
    return _record("algebra.witness_pairs", count, failure)


def suite_algebra(quiver: Quiver, seed: int, assoc_len: int = 3, random_trials: int = 1000,
                  lmax: int = 4, nmax: int = 5, field=RATIONALS) -> list[CheckRecord]:
    return [
        check_cuntz_krieger(quiver, field),
        check_unit_laws(quiver, min(assoc_len, 3), field),
        check_grading(quiver, min(assoc_len, 3), field),
        check_associativity_exhaustive(quiver, assoc_len),
        check_associativity_random(quiver, random_trials, seed, field=field),
        check_basis_counts(quiver, lmax, nmax),
        check_witnesses(quiver, lmax + 2),
    ]


# -- bimodule suite ------------------------------------------------------------

def check_module_axioms(quiver: Quiver, pmax: int, qmax: int) -> CheckRecord:
    count = 0
    failure = None
    arrows = sorted(quiver.arrows)
    for b in bounded_basis(quiver, pmax, qmax):
        v = ChainVector.single(b, 1)
        for j in quiver.vertices:
            vj = bimodule.act_vertex(quiver, v, j)
            for j2 in quiver.vertices:
                count += 1
                got = bimodule.act_vertex(quiver, vj, j2)
                want = vj if j == j2 else ChainVector.zero()
                if got != want and not failure:
                    failure = f"idempotent law fails at {format_basis_vector(b)}"
        for j in quiver.vertices:
            count += 1
            acc = ChainVector.zero()
            for a in quiver.out_arrows(j):
                acc = acc + bimodule.act_ghost(quiver, bimodule.act_arrow(quiver, v, a), a)
            if acc != bimodule.act_vertex(quiver, v, j) and not failure:
                failure = f"arrow/ghost sum law fails at {format_basis_vector(b)} over vertex {j}"
        for a in arrows:
            va = bimodule.act_ghost(quiver, v, a)
            for a2 in arrows:
                count += 1
                got = bimodule.act_arrow(quiver, va, a2)
                if a == a2 and b.pair.p.source == quiver.arrows[a].target:
                    want = v
                else:
                    want = ChainVector.zero()
                if got != want and not failure:
                    failure = f"ghost/arrow law fails at {format_basis_vector(b)} with {a}, {a2}"
    return _record("bimodule.module_axioms", count, failure)


def check_socle_embeddings(quiver: Quiver, pmax: int, qmax: int) -> list[CheckRecord]:
    mons = []
    for i in quiver.vertices:
        for n in range(qmax + 1):
            for m in range(pmax + 1):
                mons.extend(enumerate_pairs(quiver, i, n - m, n))
    seen = {}
    count = 0
    failure = None
    for pair in mons:
        count += 1
        v = bimodule.vertex_socle_embed(quiver, monomial(pair, 1))
        keys = list(v.terms)
        if len(keys) != 1 or keys[0] in seen:
            failure = f"socle embedding collides at {format_pair(pair)}"
            break
        seen[keys[0]] = pair
    rec1 = _record("bimodule.socle_embed_injective", count, failure)

    count = 0
    failure = None
    for pair in mons:
        m = monomial(pair, 1)
        for beta in sorted(quiver.arrows):
            count += 1
            lhs = differential(quiver, bimodule.arrow_socle_embed(quiver, beta, m))
            rhs = bimodule.vertex_socle_embed(quiver, mul(quiver, m, arrow_element(quiver, beta)))
            if lhs != rhs:
                failure = (f"d after the {beta}-socle embedding differs from embedding "
                           f"the product at {format_pair(pair)}")
                break
        if failure:
            break
    rec2 = _record("bimodule.embed_differential", count, failure)
    return [rec1, rec2]


def check_dg_compat(quiver: Quiver, pmax: int, qmax: int, fault=None) -> CheckRecord:
    bad = bimodule.dg_compat_violations(quiver, pmax, qmax, fault)
    n = len(bounded_basis(quiver, pmax, qmax)) * (len(quiver.vertices) + 2 * len(quiver.arrows))
    failure = None
    if bad:
        b, label = bad[0]
        failure = f"d(v.g) != d(v).g at {format_basis_vector(b)} with generator {label}"
    return _record("bimodule.dg_compatibility", n, failure)


def check_koszul_cocycle(quiver: Quiver, pmax: int, qmax: int, fault=None) -> CheckRecord:
    gens = ([idempotent(quiver, j) for j in quiver.vertices]
            + [arrow_element(quiver, a) for a in sorted(quiver.arrows)]
            + [ghost_element(quiver, a) for a in sorted(quiver.arrows)])
    count = 0
    failure = None
    for b in bounded_basis(quiver, pmax, qmax):
        v = ChainVector.single(b, 1)
        dv = differential(quiver, v, fault)
        for g in gens:
            count += 1
            lhs = differential(quiver, bimodule.koszul_right_action(quiver, g, v), fault)
            rhs = bimodule.koszul_right_action(quiver, g, dv) if dv else ChainVector.zero()
            if sign_pow(g.degree()) < 0:
                rhs = -rhs
            if lhs != rhs:
                failure = (f"canonical action is not a cocycle at {format_basis_vector(b)} "
                           f"with {format_element(g)}")
                break
        if failure:
            break
    return _record("bimodule.koszul_cocycle", count, failure)


def check_action_composition(quiver: Quiver, lenmax: int, pmax: int, qmax: int) -> CheckRecord:
    mons = bounded_monomials(quiver, lenmax)
    count = 0
    failure = None
    for b in bounded_basis(quiver, pmax, qmax):
        v = ChainVector.single(b, 1)
        for x in mons:
            vx = bimodule.act_monomial(quiver, v, x)
            for y in mons:
                count += 1
                via_product = bimodule.act(quiver, v, mul(quiver, monomial(y, 1), monomial(x, 1)))
                stepwise = bimodule.act_monomial(quiver, vx, y)
                if via_product != stepwise:
                    failure = (f"action of a product disagrees with stepwise action at "
                               f"{format_basis_vector(b)} with {format_pair(x)}, {format_pair(y)}")
                    break
            if failure:
                break
        if failure:
            break
    return _record("bimodule.action_composition", count, failure)


def suite_bimodule(quiver: Quiver, nmax: int, fault=None) -> list[CheckRecord]:
    recs = [check_module_axioms(quiver, min(nmax, 3), min(nmax, 3))]
    recs.extend(check_socle_embeddings(quiver, nmax, nmax))
    recs.append(check_dg_compat(quiver, nmax, nmax, fault))
    recs.append(check_koszul_cocycle(quiver, min(nmax, 3), min(nmax, 3), fault))
    recs.append(check_action_composition(quiver, 2, 1, 1))
    return recs


# -- round-trip suite -----------------------------------------------------------

def check_coboundary_kernel(quiver: Quiver, n: int, pmax: int, qmax: int,
                            seed: int, field=RATIONALS) -> CheckRecord:
    rng = random.Random(seed)
    h = bimodule.random_a_linear_table(quiver, rng, n, pmax, qmax, field=field)
    count = 0
    failure = None
    for b in bounded_basis(quiver, pmax, qmax - 1):
        count += 1
        value = bimodule.coboundary_value(quiver, h, n, b)
        if any(k.socle.kind != "E" for k in value.terms) or differential(quiver, value):
            failure = f"coboundary value escapes the kernel span at {format_basis_vector(b)}"
            break
    return _record(f"roundtrip.coboundary_into_kernel_n{n}", count, failure)


def check_roundtrip(quiver: Quiver, degrees, trials: int, seed: int,
                    pmax: int, qmax: int, field=RATIONALS) -> CheckRecord:
    rng = random.Random(seed)
    count = 0
    failure = None
    for n in degrees:
        for _ in range(trials):
            count += 1
            x0 = bimodule.random_homogeneous_element(quiver, rng, n, qmax=qmax, field=field)
            h0 = bimodule.random_a_linear_table(quiver, rng, n, pmax, qmax, field=field)
            try:
                result = bimodule.roundtrip_check(quiver, x0, h0, n, pmax, qmax)
            except ValueError as exc:
                failure = f"degree {n}: {exc}"
                break
            if result.recovered != x0:
                failure = (f"degree {n}: recovered {format_element(result.recovered)} "
                           f"!= {format_element(x0)}")
                break
            if result.failures:
                failure = (f"degree {n}: defect identity fails at "
                           f"{format_basis_vector(result.failures[0])}")
                break
        if failure:
            break
    return _record("roundtrip.quasibalance", count, failure)


def suite_roundtrip(quiver: Quiver, seed: int, degrees=(-2, -1, 0, 1, 2), trials: int = 10,
                    pmax: int = 3, qmax: int = 3, field=RATIONALS) -> list[CheckRecord]:
    recs = [check_coboundary_kernel(quiver, n, pmax, qmax, seed + 17 * n, field)
            for n in (-1, 0, 2)]
    recs.append(check_roundtrip(quiver, degrees, trials, seed, pmax, qmax, field))
    return recs


SUITE_NAMES = ("complex", "algebra", "bimodule", "roundtrip")


def run_suites(quiver: Quiver, nmax: int = 4, degrees=range(-4, 5),
               suites=SUITE_NAMES, seed: int = 0, field=RATIONALS,
               fault: Optional[str] = None, assoc_len: int = 3,
               random_trials: int = 1000, trials: int = 10) -> list[CheckRecord]:
    records = []
    degs = list(degrees)
    if "complex" in suites:
        records.extend(suite_complex(quiver, nmax, degs, fault))
    if "algebra" in suites:
        records.extend(suite_algebra(quiver, seed, assoc_len, random_trials, field=field))
    if "bimodule" in suites:
        records.extend(suite_bimodule(quiver, nmax, fault))
    if "roundtrip" in suites:
        rt_degs = [d for d in degs if -2 <= d <= 2] or [0]
        records.extend(suite_roundtrip(quiver, seed, rt_degs, trials,
                                       pmax=min(nmax, 3), qmax=min(nmax, 3), field=field))
    return records
