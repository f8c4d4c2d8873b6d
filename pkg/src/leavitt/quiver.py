"""Finite quivers without sinks: parsing, validation, paths and truncations.

Paths store their arrows first-traversed-first, so for a composite
``p = b∘a`` (traverse ``a`` then ``b``) the arrow list is ``(a, b)``.
All values are immutable; every operation is a pure function.
"""
from __future__ import annotations

import hashlib
import re
from typing import Iterable, NamedTuple, Optional


class QuiverError(ValueError):
    """Invalid quiver data (parse error, sink, bad special arrow, ...)."""


ID_RE = re.compile(r"[A-Za-z0-9_]+\Z")


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


class Path(NamedTuple):
    """A path: arrows listed first-traversed-first; trivial iff arrows == ()."""

    arrows: tuple[str, ...]
    source: str
    target: str

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows


def compose(p: Path, q: Path) -> Path:
    """The concatenation pq: traverse q first, then p; requires s(p) == t(q)."""
    if p.source != q.target:
        raise QuiverError(f"paths do not compose: s(p)={p.source} != t(q)={q.target}")
    if q.is_trivial:
        return p
    if p.is_trivial:
        return q
    return Path(q.arrows + p.arrows, q.source, p.target)


def path_key(p: Path):
    """Total order key on paths: by length, then arrow ids, then base vertex."""
    return (len(p.arrows), p.arrows, p.source)


class Quiver:
    """A finite quiver without sinks, with one chosen special arrow per vertex.

    Immutable after construction; maintains per-instance caches for
    multiplication tables built on top of it.
    """

    def __init__(self, vertices: Iterable[str], arrows: Iterable[tuple[str, str, str]],
                 special: Optional[dict[str, str]] = None):
        self.vertices: tuple[str, ...] = tuple(sorted(vertices))
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise QuiverError(f"duplicate vertex id {v!r}")
            seen.add(v)
            if not ID_RE.match(v):
                raise QuiverError(f"bad vertex id {v!r}")
        self.arrows: dict[str, Arrow] = {}
        for name, src, tgt in arrows:
            if not ID_RE.match(name):
                raise QuiverError(f"bad arrow id {name!r}")
            if name in self.arrows:
                raise QuiverError(f"duplicate arrow id {name!r}")
            if src not in seen:
                raise QuiverError(f"arrow {name!r}: unknown source vertex {src!r}")
            if tgt not in seen:
                raise QuiverError(f"arrow {name!r}: unknown target vertex {tgt!r}")
            self.arrows[name] = Arrow(name, src, tgt)

        self._out: dict[str, tuple[str, ...]] = {v: () for v in self.vertices}
        self._in: dict[str, tuple[str, ...]] = {v: () for v in self.vertices}
        for a in self.arrows.values():
            self._out[a.source] += (a.name,)
            self._in[a.target] += (a.name,)
        self._out = {v: tuple(sorted(names)) for v, names in self._out.items()}
        self._in = {v: tuple(sorted(names)) for v, names in self._in.items()}

        for v in self.vertices:
            if not self._out[v]:
                raise QuiverError(f"vertex {v!r} is a sink (no outgoing arrow)")

        self.special: dict[str, str] = {}
        special = special or {}
        for v, a in special.items():
            if v not in seen:
                raise QuiverError(f"special declared for unknown vertex {v!r}")
            if a not in self.arrows:
                raise QuiverError(f"special arrow {a!r} at {v!r} is not an arrow")
            if self.arrows[a].source != v:
                raise QuiverError(f"special arrow {a!r} does not start at {v!r}")
            self.special[v] = a
        for v in self.vertices:
            self.special.setdefault(v, self._out[v][0])

        self._key = (self.vertices,
                     tuple(sorted(self.arrows.values())),
                     tuple(sorted(self.special.items())))
        # caches for the multiplication table; keyed by admissible pairs
        self._mul_cache: dict = {}
        self._reduce_cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, Quiver) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Quiver(vertices={list(self.vertices)}, arrows={len(self.arrows)})"

    # -- combinatorics -------------------------------------------------

    def out_arrows(self, v: str) -> tuple[str, ...]:
        return self._out[v]

    def in_arrows(self, v: str) -> tuple[str, ...]:
        return self._in[v]

    def special_arrow(self, v: str) -> str:
        return self.special[v]

    def is_special(self, arrow: str) -> bool:
        a = self.arrows[arrow]
        return self.special[a.source] == arrow

    def siblings(self, arrow: str) -> tuple[str, ...]:
        """The other arrows sharing the source of `arrow` (the S(.) set)."""
        a = self.arrows[arrow]
        return tuple(b for b in self._out[a.source] if b != arrow)

    def trivial_path(self, v: str) -> Path:
        if v not in self._out:
            raise QuiverError(f"unknown vertex {v!r}")
        return Path((), v, v)

    def arrow_path(self, name: str) -> Path:
        a = self.arrows[name]
        return Path((name,), a.source, a.target)

    def path(self, arrow_names: Iterable[str]) -> Path:
        """Build a path from arrow ids listed first-traversed-first."""
        names = tuple(arrow_names)
        if not names:
            raise QuiverError("path() needs at least one arrow; use trivial_path")
        prev = None
        for n in names:
            a = self.arrows.get(n)
            if a is None:
                raise QuiverError(f"unknown arrow {n!r}")
            if prev is not None and prev != a.source:
                raise QuiverError(f"arrows do not compose at {n!r}")
            prev = a.target
        return Path(names, self.arrows[names[0]].source, prev)

    def truncate_last(self, p: Path) -> Path:
        """Drop the last-traversed arrow; an arrow becomes the trivial path at its source."""
        if p.is_trivial:
            raise QuiverError("cannot truncate a trivial path")
        if p.length == 1:
            return self.trivial_path(p.source)
        rest = p.arrows[:-1]
        return Path(rest, p.source, self.arrows[rest[-1]].target)

    def truncate_first(self, p: Path) -> Path:
        """Drop the first-traversed arrow; an arrow becomes the trivial path at its target."""
        if p.is_trivial:
            raise QuiverError("cannot truncate a trivial path")
        if p.length == 1:
            return self.trivial_path(p.target)
        rest = p.arrows[1:]
        return Path(rest, self.arrows[rest[0]].source, p.target)

    def digest(self) -> str:
        """Short deterministic digest of the normalized quiver."""
        blob = repr(self._key).encode()
        return hashlib.sha256(blob).hexdigest()[:12]


def enumerate_paths(quiver: Quiver, length: int, source: Optional[str] = None,
                    target: Optional[str] = None) -> list[Path]:
    """All paths of the given length, lexicographic in their arrow-id lists.

    length 0 yields trivial paths at the matching vertices.
    """
    if length < 0:
        return []
    level = [quiver.trivial_path(v) for v in quiver.vertices
             if source is None or v == source]
    for _ in range(length):
        level = [Path(p.arrows + (a,), p.source, quiver.arrows[a].target)
                 for p in level for a in quiver.out_arrows(p.target)]
    if target is not None:
        level = [p for p in level if p.target == target]
    return sorted(level, key=path_key)


def parse_quiver(text: str) -> Quiver:
    """Parse the quiver file format.

    Lines (``#`` starts a comment):
        vertices: v1 v2 ...
        arrow <id>: <src> -> <tgt>
        special <vertex>: <arrow id>
    """
    vertices: list[str] = []
    arrows: list[tuple[str, str, str]] = []
    special: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            for tok in line[len("vertices:"):].split():
                if not ID_RE.match(tok):
                    raise QuiverError(f"line {lineno}: bad vertex id {tok!r}")
                vertices.append(tok)
            continue
        m = re.match(r"arrow\s+([A-Za-z0-9_]+)\s*:\s*([A-Za-z0-9_]+)\s*->\s*([A-Za-z0-9_]+)\Z", line)
        if m:
            arrows.append((m.group(1), m.group(2), m.group(3)))
            continue
        m = re.match(r"special\s+([A-Za-z0-9_]+)\s*:\s*([A-Za-z0-9_]+)\Z", line)
        if m:
            v, a = m.group(1), m.group(2)
            if v in special:
                raise QuiverError(f"line {lineno}: duplicate special for vertex {v!r}")
            special[v] = a
            continue
        raise QuiverError(f"line {lineno}: cannot parse {raw.strip()!r}")
    if len(set(vertices)) != len(vertices):
        dup = next(v for i, v in enumerate(vertices) if v in vertices[:i])
        raise QuiverError(f"duplicate vertex id {dup!r}")
    return Quiver(vertices, arrows, special)
