"""Full automorphism groups of Hamiltonian cycle systems.

Permutations are tuples ``p`` over vertex positions of a system (its sorted
vertex list), ``p[i]`` being the image of vertex ``i``.  Products act left to
right: ``compose(p, q)`` applies ``p`` first.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable

from .design import CycleSystem, DesignError, canonical_cycle, validate
from .groups import FiniteGroup

BRUTE_FORCE_MAX_V = 9


class Classification(str, enum.Enum):
    TRIVIAL = "Trivial"
    ODD_ORDER = "OddOrder"
    BINARY = "Binary"
    AGL1P = "AGL1p"
    OTHER = "Other"

    def __str__(self):
        return self.value


def identity_perm(v: int) -> tuple[int, ...]:
    return tuple(range(v))


def compose(p, q) -> tuple[int, ...]:
    return tuple(q[x] for x in p)


def inverse(p) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_from_vertex_map(S: CycleSystem, mapping: dict) -> tuple[int, ...]:
    """Position permutation for a ``{Vertex: Vertex}`` bijection (missing = fixed)."""
    pos = S.index_of
    p = tuple(pos[mapping.get(x, x)] for x in S.vertices)
    if len(set(p)) != len(p):
        raise ValueError("vertex map is not a bijection")
    return p


def is_automorphism(p, S: CycleSystem) -> bool:
    if sorted(p) != list(range(S.v)):
        raise ValueError("not a permutation of the vertex positions")
    return _preserves(p, S.int_cycles, set(S.int_cycles))


def _preserves(p, cycles, cycset) -> bool:
    for c in cycles:
        if canonical_cycle(tuple(p[x] for x in c)) not in cycset:
            return False
    return True


def fixes_cycle(p, cycle) -> bool:
    return canonical_cycle(tuple(p[x] for x in cycle)) == tuple(cycle)


@dataclass(frozen=True, eq=False)
class PermGroup:
    system: CycleSystem
    elements: tuple[tuple[int, ...], ...]
    classification: Classification

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def v(self) -> int:
        return self.system.v

    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, p):
        return tuple(p) in self.element_set()

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def involutions(self) -> list[tuple[int, ...]]:
        e = identity_perm(self.v)
        return [p for p in self.elements if p != e and compose(p, p) == e]

    def fixed_points(self, p) -> list[int]:
        return [i for i, x in enumerate(p) if i == x]

    def is_closed(self) -> bool:
        elems = self.element_set()
        if identity_perm(self.v) not in elems:
            return False
        return all(inverse(p) in elems for p in elems) and all(
            compose(p, q) in elems for p in elems for q in elems
        )

    def as_finite_group(self) -> FiniteGroup:
        """Abstract group given by the composition table of the elements."""
        elems = sorted(self.elements)
        idx = {p: i for i, p in enumerate(elems)}
        table = tuple(tuple(idx[compose(p, q)] for q in elems) for p in elems)
        return FiniteGroup(table, name=f"Aut(v={self.v})")


def _require_valid(S: CycleSystem):
    rep = validate(S)
    if not rep.ok:
        raise DesignError(f"not an HCS({S.v}): {rep.summary()}")


def _make_group(S: CycleSystem, found: Iterable) -> PermGroup:
    elems = tuple(sorted(set(found)))
    cls = classify_elements(elems, S.v)
    return PermGroup(S, elems, cls)


def automorphism_group(S: CycleSystem) -> PermGroup:
    """Exact ``Aut(S)`` by aligning the least cycle onto every cycle.

    An automorphism sends the least cycle ``C1`` onto some cycle ``D``; as
    both are Hamiltonian, the image is fixed by one of the ``2v`` dihedral
    alignments of ``C1`` onto ``D``, so testing those candidates is exhaustive.
    """
    _require_valid(S)
    v = S.v
    cycles = S.int_cycles
    cycset = set(cycles)
    c1 = cycles[0]
    found = []
    for d in cycles:
        for shift in range(v):
            for step in (1, -1):
                p = [0] * v
                for t in range(v):
                    p[c1[t]] = d[(shift + step * t) % v]
                p = tuple(p)
                if _preserves(p, cycles, cycset):
                    found.append(p)
    G = _make_group(S, found)
    assert G.order <= v * (v - 1), "alignment bound violated"
    return G


def brute_force_aut(S: CycleSystem) -> PermGroup:
    """All ``v!`` permutations filtered by :func:`is_automorphism` (``v <= 9``)."""
    if S.v > BRUTE_FORCE_MAX_V:
        raise ValueError(f"brute force limited to v <= {BRUTE_FORCE_MAX_V}, got {S.v}")
    _require_valid(S)
    cycles = S.int_cycles
    cycset = set(cycles)
    return _make_group(
        S, (p for p in permutations(range(S.v)) if _preserves(p, cycles, cycset))
    )


def _is_sharply_2_transitive(elems, v) -> bool:
    if v < 2:
        return False
    orbit = {(p[0], p[1]) for p in elems}
    stab = [p for p in elems if p[0] == 0 and p[1] == 1]
    return len(orbit) == v * (v - 1) and len(stab) == 1


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, math.isqrt(n) + 1))


def classify_elements(elems, v: int) -> Classification:
    order = len(elems)
    if order == 1:
        return Classification.TRIVIAL
    if order % 2:
        return Classification.ODD_ORDER
    e = identity_perm(v)
    n_inv = sum(1 for p in elems if p != e and compose(p, p) == e)
    if n_inv == 1:
        return Classification.BINARY
    if _is_prime(v) and order == v * (v - 1) and _is_sharply_2_transitive(elems, v):
        return Classification.AGL1P
    return Classification.OTHER


def classify(G: PermGroup, v: int | None = None) -> Classification:
    return classify_elements(G.elements, G.v if v is None else v)


def involution_defects(G: PermGroup) -> list[str]:
    """Involutions that do not have exactly one fixed vertex or move some cycle."""
    out = []
    for p in G.involutions():
        fixed = G.fixed_points(p)
        if len(fixed) != 1:
            out.append(f"{cycle_notation(p, G.system)} fixes {len(fixed)} vertices")
        if not all(fixes_cycle(p, c) for c in G.system.int_cycles):
            out.append(f"{cycle_notation(p, G.system)} moves a cycle")
    return out


def fixes_vertex(G: PermGroup, vertex) -> bool:
    i = G.system.index_of[vertex]
    return all(p[i] == i for p in G.elements)


def cycle_notation(p, S: CycleSystem | None = None) -> str:
    label = (lambda i: str(S.vertices[i])) if S is not None else str
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append("(" + " ".join(label(k) for k in cyc) + ")")
    return "".join(out) if out else "()"


def format_report(G: PermGroup) -> str:
    lines = [f"order={G.order} class={G.classification}"]
    lines.extend(cycle_notation(p, G.system) for p in G.elements)
    return "\n".join(lines) + "\n"
