"""The Leavitt path algebra of a quiver without sinks.

Elements are exact-scalar combinations of admissible pairs (p, q), the pair
standing for the monomial p*q (ghost path times path). Multiplication reduces
every product to this normal form; the only rewriting rule needed is the
substitution coming from the vertex relation: when p and q both end in the
same special arrow a (p = a p', q = a q'),

    p*q  ->  p'*q'  -  sum over the other arrows b at s(a) of (b p')*(b q').

The first branch strictly shrinks l(p)+l(q) and every summand in the second
branch is already admissible, so reduction terminates.
"""
from __future__ import annotations

from typing import NamedTuple, Optional

from .linalg import LinearCombination
from .quiver import Path, Quiver, compose, enumerate_paths, path_key
from .scalars import RATIONALS, check_same_field


class AdmissiblePair(NamedTuple):
    p: Path
    q: Path


def pair_degree(pair: AdmissiblePair) -> int:
    """Grading degree of the monomial p*q: l(q) - l(p)."""
    return pair.q.length - pair.p.length


def pair_key(pair: AdmissiblePair):
    return (path_key(pair.p), path_key(pair.q))


def star_pair(pair: AdmissiblePair) -> AdmissiblePair:
    """The involution on basis monomials: p*q -> q*p."""
    return AdmissiblePair(pair.q, pair.p)


def is_admissible(quiver: Quiver, p: Path, q: Path) -> bool:
    """True iff (p, q) indexes a basis monomial: common target, and the two
    last-traversed arrows are not one and the same special arrow."""
    if p.target != q.target:
        return False
    if p.is_trivial or q.is_trivial:
        return True
    a, b = p.arrows[-1], q.arrows[-1]
    return a != b or not quiver.is_special(a)


def make_pair(quiver: Quiver, p: Path, q: Path) -> AdmissiblePair:
    if not is_admissible(quiver, p, q):
        raise ValueError(f"pair is not admissible: ({p}, {q})")
    return AdmissiblePair(p, q)


class LPAElement(LinearCombination):
    """An element of the Leavitt path algebra in normal form."""

    def degrees(self) -> set[int]:
        return {pair_degree(k) for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> Optional[int]:
        """The common degree of a homogeneous element (None when zero)."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"element is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def graded_parts(self) -> dict[int, "LPAElement"]:
        parts: dict[int, LPAElement] = {}
        for pair, c in self.terms.items():
            parts.setdefault(pair_degree(pair), LPAElement()).terms[pair] = c
        return dict(sorted(parts.items()))


def monomial(pair: AdmissiblePair, coeff) -> LPAElement:
    return LPAElement.single(pair, coeff)


def idempotent(quiver: Quiver, v: str, field=RATIONALS) -> LPAElement:
    e = quiver.trivial_path(v)
    return monomial(AdmissiblePair(e, e), field.one())


def arrow_element(quiver: Quiver, a: str, field=RATIONALS) -> LPAElement:
    p = quiver.arrow_path(a)
    return monomial(AdmissiblePair(quiver.trivial_path(p.target), p), field.one())


def ghost_element(quiver: Quiver, a: str, field=RATIONALS) -> LPAElement:
    p = quiver.arrow_path(a)
    return monomial(AdmissiblePair(p, quiver.trivial_path(p.target)), field.one())


def unit(quiver: Quiver, field=RATIONALS) -> LPAElement:
    """The multiplicative unit: the sum of all vertex idempotents."""
    return LPAElement.from_items(
        (AdmissiblePair(quiver.trivial_path(v), quiver.trivial_path(v)), field.one())
        for v in quiver.vertices)


def enumerate_pairs(quiver: Quiver, vertex: str, degree: int, q_length: int) -> list[AdmissiblePair]:
    """All admissible pairs (p, q) with s(q) = vertex, l(q) = q_length and
    l(q) - l(p) = degree, ordered by (p, q)."""
    n = q_length
    m = n - degree
    if n < 0 or m < 0:
        return []
    qs = enumerate_paths(quiver, n, source=vertex)
    if not qs:
        return []
    ps_by_target: dict[str, list[Path]] = {}
    for p in enumerate_paths(quiver, m):
        ps_by_target.setdefault(p.target, []).append(p)
    out = []
    for p in sorted((p for ps in ps_by_target.values() for p in ps), key=path_key):
        for q in qs:
            if q.target == p.target and is_admissible(quiver, p, q):
                out.append(AdmissiblePair(p, q))
    return out


def witness_pair(quiver: Quiver, vertex: str, degree: int) -> AdmissiblePair:
    """One admissible pair with s(q) = vertex and l(q) - l(p) = degree.

    Constructive on any sink-free quiver: for degree >= 0 walk a path of that
    length; for negative degree either pump a reachable loop or wind around
    the first repeated arrow of a deterministic walk.
    """
    if degree >= 0:
        q = quiver.trivial_path(vertex)
        for _ in range(degree):
            q = compose(quiver.arrow_path(quiver.out_arrows(q.target)[0]), q)
        return AdmissiblePair(quiver.trivial_path(q.target), q)

    loop_walk = _shortest_walk_to_loop(quiver, vertex)
    if loop_walk is not None:
        q, loop = loop_walk
        p = quiver.trivial_path(quiver.arrows[loop].source)
        for _ in range(q.length - degree):
            p = compose(quiver.arrow_path(loop), p)
        return AdmissiblePair(p, q)

    # no loop is reachable: follow least arrows until an arrow repeats
    walk: list[str] = []
    seen: dict[str, int] = {}
    at = vertex
    while True:
        a = quiver.out_arrows(at)[0]
        if a in seen:
            m = seen[a] + 1                      # 1-based index of first occurrence
            cycle = walk[m - 1:]                 # arrows m .. n-1 of the walk
            break
        seen[a] = len(walk)
        walk.append(a)
        at = quiver.arrows[a].target
    n = len(walk) + 1
    span = n - m
    s, t = divmod(m - degree - 1, span)
    p_arrows = tuple(walk[n - 1 - t:]) + tuple(cycle) * s
    if p_arrows:
        p = quiver.path(p_arrows)
    else:
        p = quiver.trivial_path(quiver.arrows[walk[-1]].target)
    if m == 1:
        q = quiver.trivial_path(vertex)
    else:
        q = quiver.path(walk[:m - 1])
    return AdmissiblePair(p, q)


def _shortest_walk_to_loop(quiver: Quiver, vertex: str):
    """BFS for a vertex carrying a loop; returns (approach path, loop arrow)."""
    frontier = [quiver.trivial_path(vertex)]
    visited = {vertex}
    while frontier:
        for q in frontier:
            for a in quiver.out_arrows(q.target):
                arr = quiver.arrows[a]
                if arr.target == arr.source:
                    return q, a
        nxt = []
        for q in frontier:
            for a in quiver.out_arrows(q.target):
                tgt = quiver.arrows[a].target
                if tgt not in visited:
                    visited.add(tgt)
                    nxt.append(compose(quiver.arrow_path(a), q))
        frontier = nxt
    return None


def _reduce(quiver: Quiver, p: Path, q: Path) -> dict[AdmissiblePair, int]:
    """Rewrite the (possibly inadmissible) monomial p*q into the basis.

    Integer coefficients; the same table serves every scalar field.
    """
    key = (p, q)
    cached = quiver._reduce_cache.get(key)
    if cached is not None:
        return cached
    if is_admissible(quiver, p, q):
        result = {AdmissiblePair(p, q): 1}
    else:
        # p and q end with the same special arrow
        a = p.arrows[-1]
        ph = quiver.truncate_last(p)
        qh = quiver.truncate_last(q)
        acc: dict[AdmissiblePair, int] = {}
        for pair, c in _reduce(quiver, ph, qh).items():
            acc[pair] = acc.get(pair, 0) + c
        for b in quiver.siblings(a):
            bp = compose(quiver.arrow_path(b), ph)
            bq = compose(quiver.arrow_path(b), qh)
            pair = AdmissiblePair(bp, bq)      # ends in b, never special
            acc[pair] = acc.get(pair, 0) - 1
        result = {k: c for k, c in acc.items() if c}
    quiver._reduce_cache[key] = result
    return result


def mul_monomials(quiver: Quiver, x: AdmissiblePair, y: AdmissiblePair) -> dict[AdmissiblePair, int]:
    """Product of two basis monomials, as an integer combination of basis monomials."""
    key = (x, y)
    cached = quiver._mul_cache.get(key)
    if cached is not None:
        return cached
    p, q = x
    g, h = y
    result: dict[AdmissiblePair, int]
    if q.arrows == g.arrows[:q.length] and q.source == g.source:
        if q.length == g.length:
            # q == g: the middle collapses; p*h may need reduction
            result = _reduce(quiver, p, h)
        else:
            # g = g'q with g' nontrivial: (g'p)*h, already admissible
            gp = compose(quiver.path(g.arrows[q.length:]), p)
            result = {AdmissiblePair(gp, h): 1}
    elif g.arrows == q.arrows[:g.length] and g.source == q.source:
        # q = q'g with q' nontrivial: p*(q'h), already admissible
        qh = compose(quiver.path(q.arrows[g.length:]), h)
        result = {AdmissiblePair(p, qh): 1}
    else:
        result = {}
    quiver._mul_cache[key] = result
    return result


def mul(quiver: Quiver, a: LPAElement, b: LPAElement) -> LPAElement:
    """The product a.b, reduced to normal form."""
    if a.terms and b.terms:
        check_same_field(next(iter(a.terms.values())), next(iter(b.terms.values())))
    out: dict[AdmissiblePair, object] = {}
    for x, ca in a.terms.items():
        for y, cb in b.terms.items():
            c = ca * cb
            for pair, k in mul_monomials(quiver, x, y).items():
                s = out.get(pair)
                s = c * k if s is None else s + c * k
                if s:
                    out[pair] = s
                elif pair in out:
                    del out[pair]
    el = LPAElement()
    el.terms = out
    return el


def element_from_pairs(quiver: Quiver, items) -> LPAElement:
    """Build an element from (pair, coeff) items, validating admissibility."""
    for pair, _ in items:
        if not is_admissible(quiver, pair.p, pair.q):
            raise ValueError(f"not admissible: {pair}")
    return LPAElement.from_items(items)
