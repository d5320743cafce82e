"""Doubling: three compatible HCS(2n+1) on ``{inf} u [2n]`` give an HCS(4n+1).

The output lives on ``{inf} u ([2n] x {+1, -1})``.  Each input triple of
cycles ``(A_i, B_i, C_i)`` with matching neighbours of ``inf`` yields a
first-type cycle built from ``A_i`` and ``B_i`` and a second-type cycle built
from ``C_i`` alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .design import (
    INF, CycleSystem, DesignError, Vertex, canonical_cycle, require_valid, signed,
)


class IncompatibleError(DesignError):
    pass


@dataclass(frozen=True)
class DoublingInput:
    """Matched triples, each cycle given as the ``2n`` vertices after ``inf``,
    oriented so that first and last entries agree across the triple."""

    triples: tuple[tuple[tuple[Vertex, ...], tuple[Vertex, ...], tuple[Vertex, ...]], ...]

    @property
    def n(self) -> int:
        return len(self.triples)


def _after_inf(cycle) -> tuple:
    i = cycle.index(INF)
    return tuple(cycle[i + 1:]) + tuple(cycle[:i])


def _inf_pair(cycle) -> frozenset:
    path = _after_inf(cycle)
    return frozenset((path[0], path[-1]))


def check_compatible(
    H1: CycleSystem, H2: CycleSystem, H3: CycleSystem, orientation=None
) -> DoublingInput:
    """Match cycles across the three systems by their unordered pair of
    ``inf``-neighbours and orient the matches consistently.

    The output depends on the direction in which each cycle of ``H1`` is
    read.  ``orientation`` lists the cycles of ``H1`` in the wanted
    direction (any rotation); by default each is read from ``inf`` towards
    its smaller neighbour.  To keep a group ``G`` acting on the result, pass
    the ``G``-orbit of one oriented base cycle.
    """
    systems = (H1, H2, H3)
    v = H1.v
    if any(H.v != v for H in systems):
        raise IncompatibleError(f"orders differ: {[H.v for H in systems]}")
    if any(H.vertices != H1.vertices for H in systems):
        raise IncompatibleError("vertex sets differ")
    if INF not in H1.index_of:
        raise IncompatibleError("systems have no inf vertex")
    if any(x.is_signed for x in H1.vertices):
        raise IncompatibleError("doubling needs plain labels")
    for k, H in enumerate(systems, 1):
        require_valid(H, f"H{k}")

    h1_paths = [_after_inf(c) for c in H1.cycles]
    if orientation is not None:
        wanted = {}
        for c in orientation:
            c = tuple(c)
            if canonical_cycle(c) not in H1.cycle_set():
                raise IncompatibleError(f"orientation lists a cycle not in H1: {c}")
            wanted[canonical_cycle(c)] = _after_inf(c)
        if len(wanted) != len(H1.cycles):
            raise IncompatibleError("orientation must list every cycle of H1 once")
        h1_paths = [wanted[c] for c in H1.cycles]

    lookup = []
    for H in systems[1:]:
        lookup.append({_inf_pair(c): _after_inf(c) for c in H.cycles})
    triples = []
    unmatched = []
    for a in h1_paths:
        key = frozenset((a[0], a[-1]))
        row = [a]
        for k, table in enumerate(lookup, 2):
            path = table.get(key)
            if path is None:
                unmatched.append((k, tuple(sorted(key))))
                break
            row.append(path if path[0] == a[0] else path[::-1])
        else:
            triples.append(tuple(row))
    if unmatched:
        desc = ", ".join(f"H{k} lacks inf-neighbours {p[0]},{p[1]}" for k, p in unmatched)
        raise IncompatibleError(f"incompatible systems: {desc}")
    return DoublingInput(tuple(triples))


def first_type(alpha, beta) -> tuple[Vertex, ...]:
    """``(inf, a_1..a_2n, b'_2n..b'_1)``."""
    return (
        (INF,)
        + tuple(signed(x.index, 1) for x in alpha)
        + tuple(signed(x.index, -1) for x in reversed(beta))
    )


def second_type(gamma) -> tuple[Vertex, ...]:
    """``(inf, c_2n, c'_2n-1, .., c'_1, c_1, c'_2, .., c'_2n)``."""
    m = len(gamma)
    down = [signed(gamma[j - 1].index, 1 if j % 2 == 0 else -1) for j in range(m, 0, -1)]
    up = [signed(gamma[j - 1].index, 1 if j % 2 == 1 else -1) for j in range(1, m + 1)]
    return (INF,) + tuple(down) + tuple(up)


def double(inp: DoublingInput) -> CycleSystem:
    cycles = []
    for alpha, beta, gamma in inp.triples:
        cycles.append(first_type(alpha, beta))
        cycles.append(second_type(gamma))
    T = CycleSystem.from_cycles(cycles)
    return require_valid(T, "doubled system")


def double_systems(H1: CycleSystem, H2: CycleSystem, H3: CycleSystem, orientation=None) -> CycleSystem:
    return double(check_compatible(H1, H2, H3, orientation))


def is_first_type(cycle) -> bool:
    """First-type cycles keep one sign along each half of the path from inf."""
    path = _after_inf(cycle)
    h = len(path) // 2
    return len({x.sign for x in path[:h]}) == 1


def edge_class_violations(T: CycleSystem) -> dict[str, int]:
    """Count edge-class violations of a doubled system.

    Keys: ``mixed_in_first`` (first-type cycle holding a mixed-sign edge
    between different labels), ``same_in_second`` (the converse).  Both are
    zero for a correct doubling.
    """
    bad = {"mixed_in_first": 0, "same_in_second": 0}
    for c in T.cycles:
        first = is_first_type(c)
        for k in range(len(c)):
            x, y = c[k], c[(k + 1) % len(c)]
            if x.is_inf or y.is_inf or x.index == y.index:
                continue
            if first and x.sign != y.sign:
                bad["mixed_in_first"] += 1
            if not first and x.sign == y.sign:
                bad["same_in_second"] += 1
    return bad


def middle_edge(cycle) -> tuple[Vertex, Vertex]:
    path = _after_inf(cycle)
    h = len(path) // 2
    return path[h - 1], path[h]


def paired_cycle_structure_holds(T: CycleSystem) -> bool:
    """Both inf-neighbours and the middle edge of every cycle are ``{z, z'}``
    pairs, and each cycle ``(inf, z, .., w, w', .., z')`` has a partner of the
    other type of shape ``(inf, w, .., z', z, .., w')``."""
    by_inf = {}
    for c in T.cycles:
        path = _after_inf(c)
        z, zz = path[0], path[-1]
        w, ww = middle_edge(c)
        if zz != z.flip() or ww != w.flip():
            return False
        by_inf[frozenset((z, zz))] = c
    for c in T.cycles:
        path = _after_inf(c)
        z = path[0]
        w, ww = middle_edge(c)
        partner = by_inf.get(frozenset((w, ww)))
        if partner is None or is_first_type(partner) == is_first_type(c):
            return False
        if frozenset(middle_edge(partner)) != frozenset((z, z.flip())):
            return False
    return True
