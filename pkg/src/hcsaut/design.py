"""Vertices, Hamiltonian cycles and cycle systems, plus the ``.hcs`` text format.

A cycle is stored as a tuple of vertices in canonical form: the least vertex
first, then the direction whose second entry is smaller.  Vertices are ordered
``inf`` first, then by index, then ``+`` before ``-``.
"""

from __future__ import annotations

import functools
import re
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence


class DesignError(ValueError):
    pass


@functools.total_ordering
@dataclass(frozen=True)
class Vertex:
    """``index=None`` is the point at infinity; ``sign`` is 0 for plain labels."""

    index: int | None = None
    sign: int = 0

    def __post_init__(self):
        if self.index is None:
            if self.sign:
                raise DesignError("infinity carries no sign")
        elif self.index < 0 or self.sign not in (0, 1, -1):
            raise DesignError(f"bad vertex label {self.index}/{self.sign}")

    @property
    def is_inf(self) -> bool:
        return self.index is None

    @property
    def is_signed(self) -> bool:
        return self.sign != 0

    def key(self):
        if self.index is None:
            return (0, 0, 0)
        return (1, self.index, -self.sign)

    def __lt__(self, other):
        if not isinstance(other, Vertex):
            return NotImplemented
        return self.key() < other.key()

    def flip(self) -> "Vertex":
        """The other copy ``z'`` of a signed vertex."""
        if not self.is_signed:
            raise DesignError(f"{self} is not signed")
        return Vertex(self.index, -self.sign)

    def __str__(self):
        if self.index is None:
            return "inf"
        return f"{self.index}{'' if not self.sign else '+' if self.sign > 0 else '-'}"

    __repr__ = __str__


INF = Vertex()


def plain(i: int) -> Vertex:
    return Vertex(i)


def signed(i: int, s: int) -> Vertex:
    return Vertex(i, s)


_TOKEN = re.compile(r"inf|(\d+)([+-]?)")


def parse_vertex(token: str) -> Vertex:
    m = _TOKEN.fullmatch(token)
    if m is None:
        raise DesignError(f"bad vertex token {token!r}")
    if token == "inf":
        return INF
    return Vertex(int(m.group(1)), {"": 0, "+": 1, "-": -1}[m.group(2)])


def canonical_cycle(seq: Sequence) -> tuple:
    """Least of the ``2 * len(seq)`` rotations and reflections of ``seq``.

    Works for any totally ordered labels (vertices or ints).
    """
    n = len(seq)
    if n < 3:
        raise DesignError(f"cycle of length {n} < 3")
    if len(set(seq)) != n:
        dup = [x for x, c in Counter(seq).items() if c > 1]
        raise DesignError(f"repeated vertex {dup[0]} in cycle")
    m = min(range(n), key=seq.__getitem__)
    fwd = seq[(m + 1) % n]
    bwd = seq[m - 1]
    if fwd < bwd:
        return tuple(seq[(m + t) % n] for t in range(n))
    return tuple(seq[(m - t) % n] for t in range(n))


def cycle_edges(cycle: Sequence) -> list[tuple]:
    """Unordered edges of a closed cycle, each as a sorted pair."""
    n = len(cycle)
    out = []
    for t in range(n):
        a, b = cycle[t], cycle[(t + 1) % n]
        out.append((a, b) if a < b else (b, a))
    return out


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    missing_edges: list = field(default_factory=list)
    duplicated_edges: list = field(default_factory=list)
    non_hamiltonian: list = field(default_factory=list)
    cycle_count: int = 0
    expected_cycles: int = 0

    def summary(self) -> str:
        if self.ok:
            return "ok"
        parts = []
        if self.cycle_count != self.expected_cycles:
            parts.append(f"{self.cycle_count} cycles, expected {self.expected_cycles}")
        if self.non_hamiltonian:
            parts.append(f"{len(self.non_hamiltonian)} non-Hamiltonian cycles")
        if self.missing_edges:
            parts.append(f"{len(self.missing_edges)} missing edges")
        if self.duplicated_edges:
            parts.append(f"{len(self.duplicated_edges)} duplicated edges")
        return "; ".join(parts)


@dataclass(frozen=True, eq=False)
class CycleSystem:
    """A vertex set and a list of cycles claimed to form an HCS.

    Construction canonicalizes cycles but does not check the partition
    property; call :func:`validate` for that.
    """

    vertices: tuple[Vertex, ...]
    cycles: tuple[tuple[Vertex, ...], ...]
    index_of: dict = field(init=False, repr=False)
    int_cycles: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        if len(verts) != len(self.vertices):
            raise DesignError("repeated vertex in vertex set")
        kinds = {v.is_signed for v in verts if not v.is_inf}
        if len(kinds) > 1:
            raise DesignError("mixed plain and signed labels")
        pos = {v: i for i, v in enumerate(verts)}
        cycles = []
        for c in self.cycles:
            for x in c:
                if x not in pos:
                    raise DesignError(f"cycle vertex {x} not in vertex set")
            cycles.append(canonical_cycle(tuple(c)))
        cycles.sort(key=lambda c: [pos[x] for x in c])
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "cycles", tuple(cycles))
        object.__setattr__(self, "index_of", pos)
        object.__setattr__(
            self, "int_cycles", tuple(tuple(pos[x] for x in c) for c in cycles)
        )

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[Vertex]]) -> "CycleSystem":
        cycles = [tuple(c) for c in cycles]
        verts = set()
        for c in cycles:
            verts.update(c)
        return cls(tuple(sorted(verts)), tuple(cycles))

    @property
    def v(self) -> int:
        return len(self.vertices)

    def cycle_set(self) -> frozenset:
        return frozenset(self.cycles)

    def __eq__(self, other):
        if not isinstance(other, CycleSystem):
            return NotImplemented
        return self.vertices == other.vertices and self.cycles == other.cycles

    def __hash__(self):
        return hash((self.vertices, self.cycles))

    def __len__(self):
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    def __repr__(self):
        return f"CycleSystem(v={self.v}, cycles={len(self.cycles)})"


def edge_multiset(S: CycleSystem) -> Counter:
    cnt: Counter = Counter()
    for c in S.int_cycles:
        cnt.update(cycle_edges(c))
    return cnt


def validate(S: CycleSystem) -> ValidationReport:
    v = S.v
    expected = (v - 1) // 2 if v % 2 else -1
    non_ham = [c for c in S.cycles if len(c) != v]
    cnt = edge_multiset(S)
    verts = S.vertices
    missing = [
        (verts[a], verts[b]) for a, b in combinations(range(v), 2) if cnt[(a, b)] == 0
    ]
    dup = [(verts[a], verts[b]) for (a, b), k in sorted(cnt.items()) if k > 1]
    ok = (
        v >= 3 and v % 2 == 1 and not missing and not dup and not non_ham
        and len(S.cycles) == expected
    )
    return ValidationReport(ok, missing, dup, non_ham, len(S.cycles), expected)


def require_valid(S: CycleSystem, what: str = "system") -> CycleSystem:
    rep = validate(S)
    if not rep.ok:
        raise DesignError(f"{what} is not an HCS({S.v}): {rep.summary()}")
    return S


def relabel(S: CycleSystem, mapping: dict) -> CycleSystem:
    """Apply a vertex bijection given as ``{old: new}``; unmapped vertices stay put."""
    image = [mapping.get(x, x) for x in S.vertices]
    if len(set(image)) != len(image):
        raise DesignError("relabelling is not injective")
    return CycleSystem(
        tuple(image), tuple(tuple(mapping.get(x, x) for x in c) for c in S.cycles)
    )


def serialize_system(S: CycleSystem) -> str:
    lines = [f"hcs v={S.v}"]
    lines.extend(" ".join(map(str, c)) for c in S.cycles)
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"hcs\s+v\s*=\s*(\d+)")


def parse_system(text: str) -> CycleSystem:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        rows.append((lineno, s))
    if not rows:
        raise DesignError("empty system file")
    lineno, head = rows[0]
    m = _HEADER.fullmatch(head)
    if m is None:
        raise DesignError(f"line {lineno}: expected 'hcs v=<odd int>' header")
    v = int(m.group(1))
    if v < 3 or v % 2 == 0:
        raise DesignError(f"line {lineno}: order {v} is not an odd integer >= 3")
    cycles = []
    for lineno, s in rows[1:]:
        try:
            cyc = [parse_vertex(t) for t in s.split()]
        except DesignError as exc:
            raise DesignError(f"line {lineno}: {exc}") from None
        if len(cyc) != v:
            raise DesignError(f"line {lineno}: {len(cyc)} vertices, expected {v}")
        if len(set(cyc)) != v:
            raise DesignError(f"line {lineno}: repeated vertex in cycle")
        cycles.append(cyc)
    if len(cycles) != (v - 1) // 2:
        raise DesignError(f"{len(cycles)} cycle lines, expected {(v - 1) // 2}")
    S = CycleSystem.from_cycles(cycles)
    if S.v != v:
        raise DesignError(f"{S.v} distinct vertices, header says {v}")
    return S


def parse_listings(text: str) -> list[tuple[Vertex, ...]]:
    """Cycle lines of a system file exactly as written (direction kept)."""
    parse_system(text)
    out = []
    for line in text.splitlines():
        s = line.strip()
        if s and not s.startswith("#") and not _HEADER.fullmatch(s):
            out.append(tuple(parse_vertex(t) for t in s.split()))
    return out


def read_system(path) -> CycleSystem:
    with open(path, encoding="utf-8") as f:
        return parse_system(f.read())


def write_system(S: CycleSystem, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(serialize_system(S))
