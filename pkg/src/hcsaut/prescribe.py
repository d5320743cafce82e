"""Cycle systems whose full automorphism group is a prescribed group.

Two pipelines:

* :func:`construct_odd` - for ``G`` of odd order ``n >= 3``, take a starter
  ``C`` over ``Z2 x G``, its modified starter ``C*``, develop both along
  ``G`` and double ``(H*, H, H)`` into an HCS(4n+1) with ``Aut = G``.  The
  trivial group gets a fixed rigid HCS(13).
* :func:`construct_binary` - for binary ``H`` of order ``4m`` and odd
  ``d >= 3``, take a starter over ``H x Zd`` and swap one pair of edges in
  the base cycle so that only translations by ``H`` survive.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .autgroup import PermGroup, automorphism_group, is_automorphism
from .design import (
    INF, CycleSystem, canonical_cycle, cycle_edges, parse_system, plain, require_valid,
)
from .doubling import check_compatible, double
from .groups import FiniteGroup, GroupError, direct_product, find_isomorphism, make_cyclic
from .rotational import (
    SearchBudget, Starter, StarterError, develop, find_starter, orbit_listings, translate,
    verify_starter,
)


class PipelineError(RuntimeError):
    pass


# Subscript 0 -> sign +, subscript 1 -> sign -.
_RIGID_13 = """\
inf 0+ 1+ 5+ 2+ 4+ 3+ 3- 1- 2- 5- 4- 0-
inf 1+ 2+ 0+ 3+ 5+ 4+ 4- 2- 3- 0- 5- 1-
inf 2+ 3+ 1+ 4+ 0+ 5+ 5- 3- 4- 1- 0- 2-
0+ 4- 5+ 2- 1+ 3- inf 3+ 1- 2+ 5- 4+ 0-
1+ 5- 0+ 3- 2+ 4- inf 4+ 2- 3+ 0- 5+ 1-
2+ 0- 1+ 4- 3+ 5- inf 5+ 3- 4+ 1- 0+ 2-
"""


def hardcoded_rigid_hcs13() -> CycleSystem:
    """An HCS(13) on ``{inf} u Z6 x {+,-}`` with trivial automorphism group."""
    S = parse_system("hcs v=13\n" + _RIGID_13)
    return require_valid(S, "rigid HCS(13)")


@dataclass
class OddPipelineTrace:
    group: FiniteGroup
    gamma: FiniteGroup | None = None
    starter: Starter | None = None
    k: int | None = None
    star: Starter | None = None
    H: CycleSystem | None = None
    H_star: CycleSystem | None = None
    system: CycleSystem | None = None
    aut: PermGroup | None = None
    isomorphism: dict | None = None
    notes: list[str] = field(default_factory=list)

    def report(self) -> str:
        lines = [f"pipeline odd group={self.group.name} order={self.group.order}"]
        if self.starter is None:
            lines.append("stage hardcoded rigid HCS(13)")
        else:
            lines.append(f"stage gamma={self.gamma.name} lambda={self.gamma.unique_involution}")
            lines.append(f"stage starter C = inf {_fmt(self.starter.alphas)}")
            lines.append(f"stage k = {self.k}")
            lines.append(f"stage modified starter C* = inf {_fmt(self.star.alphas)}")
            lines.append(f"stage H = {len(self.H.cycles)} translates of C; H* = {len(self.H_star.cycles)} translates of C*")
            lines.append("stage double(H*, H, H)")
        if self.system is not None:
            lines.append(f"result v={self.system.v} cycles={len(self.system.cycles)}")
        if self.aut is not None:
            lines.append(f"aut order={self.aut.order} class={self.aut.classification}")
        lines.extend(f"note {n}" for n in self.notes)
        return "\n".join(lines) + "\n"


@dataclass
class BinaryPipelineTrace:
    H: FiniteGroup
    d: int
    G: FiniteGroup
    starter: Starter | None = None
    x: int | None = None
    j: int | None = None
    y: int | None = None
    swapped: tuple[int, ...] | None = None
    system: CycleSystem | None = None
    aut: PermGroup | None = None
    isomorphism: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def h_elements(self) -> list[int]:
        return [h * self.d for h in range(self.H.order)]

    def report(self) -> str:
        lam = self.G.unique_involution
        lines = [
            f"pipeline binary group={self.H.name} d={self.d} G={self.G.name} lambda={lam}",
            f"stage starter A = inf {_fmt(self.starter.alphas)}",
            f"stage x = {self.x} (order 4 in H), j = {self.j}, y = a_j^-1 x a_j = {self.y}",
            f"stage swapped A_0* = inf {_fmt(self.swapped)}",
        ]
        if self.system is not None:
            lines.append(f"result v={self.system.v} cycles={len(self.system.cycles)}")
        if self.aut is not None:
            lines.append(f"aut order={self.aut.order} class={self.aut.classification}")
        lines.extend(f"note {n}" for n in self.notes)
        return "\n".join(lines) + "\n"


def _fmt(xs) -> str:
    return " ".join(map(str, xs))


def modified_starter(gamma: FiniteGroup, C: Starter) -> tuple[int, Starter]:
    """Return ``(k, C*)``; ``k`` is 1-based and the least valid index >= 2."""
    n = gamma.order // 2
    if n < 3 or n % 2 == 0:
        raise GroupError(f"modified starter needs |Gamma| = 2n with n odd >= 3, got {gamma.order}")
    rep = verify_starter(gamma, C.alphas)
    if not rep:
        raise StarterError("; ".join(rep.defects))
    lam = gamma.unique_involution
    x = (None,) + C.half  # 1-based
    bar = lambda a: gamma.mul(a, lam)  # noqa: E731
    targets = {bar(gamma.div(x[1], x[2])), bar(gamma.div(x[2], x[1]))}
    k = next((i for i in range(2, n) if gamma.div(x[i], x[i + 1]) in targets), None)
    if k is None:
        raise PipelineError(f"no index k for starter inf {_fmt(C.alphas)}")
    half = [x[1]] + [bar(x[i]) for i in range(2, k + 1)] + [x[i] for i in range(k + 1, n + 1)]
    alphas = tuple(half) + tuple(bar(a) for a in reversed(half))
    star = Starter(gamma, alphas)
    rep = verify_starter(gamma, alphas)
    if not rep:
        raise PipelineError(f"modified starter fails: {'; '.join(rep.defects)}")
    return k, star


def _check_aut(trace, target: FiniteGroup, assert_group: bool):
    aut = automorphism_group(trace.system)
    trace.aut = aut
    phi = find_isomorphism(aut.as_finite_group(), target)
    trace.isomorphism = phi
    if phi is None:
        msg = f"Aut has order {aut.order}, not isomorphic to {target.name}"
        trace.notes.append(msg)
        if assert_group:
            raise PipelineError(msg)
        warnings.warn(msg, stacklevel=3)


def construct_odd(
    G: FiniteGroup, budget: SearchBudget | None = None, assert_group: bool = True
) -> tuple[CycleSystem, OddPipelineTrace]:
    n = G.order
    if n % 2 == 0:
        raise GroupError(f"{G.name} has even order {n}")
    trace = OddPipelineTrace(group=G)
    if n == 1:
        trace.system = hardcoded_rigid_hcs13()
    else:
        gamma = direct_product(make_cyclic(2), G)
        trace.gamma = gamma
        C = find_starter(gamma, budget)
        k, star = modified_starter(gamma, C)
        trace.starter, trace.k, trace.star = C, k, star
        # least-index transversal of {1, lam} in Z2 x G is exactly {0} x G
        trace.H = develop(gamma, C)
        trace.H_star = develop(gamma, star)
        # H* read along the G-orbit of C*, so that G keeps acting after doubling
        orient = orbit_listings(gamma, star, range(n))
        trace.system = double(check_compatible(trace.H_star, trace.H, trace.H, orient))
    require_valid(trace.system, "constructed system")
    _check_aut(trace, G, assert_group)
    return trace.system, trace


def order4_elements(H: FiniteGroup) -> list[int]:
    return [x for x in range(H.order) if H.orders[x] == 4]


def swap_edges(G: FiniteGroup, A: Starter, h_elements) -> tuple[int, int, int, tuple[int, ...]]:
    """Pick ``x`` of order 4 in ``H`` and the least ``j`` with ``a_{j+1} a_j^-1 = x``,
    then replace ``[a_j, a_{j+1}], [a_j lam, a_{j+1} lam]`` by
    ``[a_j, a_{j+1} lam], [a_j lam, a_{j+1}]``.

    Returns ``(x, j, y, swapped_alphas)`` with ``y = a_j^-1 x a_j``.  ``x``
    runs over order-4 elements of ``H`` by index; only one of ``x, x^-1``
    occurs as a forward difference, so the first ``x`` with some ``j`` wins.
    """
    alphas = A.alphas
    N = len(alphas) // 2
    xs = [x for x in sorted(h_elements) if G.orders[x] == 4]
    if not xs:
        raise GroupError("H has no element of order 4")
    a = (None,) + alphas  # 1-based
    for x in xs:
        j = next((i for i in range(1, N) if G.div(a[i + 1], a[i]) == x), None)
        if j is not None:
            break
    else:
        raise PipelineError("no order-4 element of H occurs as a starter difference")
    y = G.product(G.inv(a[j]), x, a[j])
    swapped = alphas[:j] + alphas[j:2 * N - j][::-1] + alphas[2 * N - j:]
    return x, j, y, swapped


def swap_edge_sets(G: FiniteGroup, A: Starter, j: int):
    """``(E, E*)`` as sets of unordered element pairs."""
    lam = G.unique_involution
    aj, aj1 = A.alphas[j - 1], A.alphas[j]
    pair = lambda p, q: (min(p, q), max(p, q))  # noqa: E731
    E = {pair(aj, aj1), pair(G.mul(aj, lam), G.mul(aj1, lam))}
    E_star = {pair(aj, G.mul(aj1, lam)), pair(G.mul(aj, lam), aj1)}
    return E, E_star


def edge_orbit(G: FiniteGroup, edges, elements) -> set:
    out = set()
    for p, q in edges:
        for h in elements:
            a, b = G.mul(p, h), G.mul(q, h)
            out.add((min(a, b), max(a, b)))
    return out


def h_transversal(G: FiniteGroup, h_elements) -> list[int]:
    lam = G.unique_involution
    return [h for h in sorted(h_elements) if h < G.mul(h, lam)]


def construct_binary(
    H: FiniteGroup, d: int, budget: SearchBudget | None = None, assert_group: bool = True
) -> tuple[CycleSystem, BinaryPipelineTrace]:
    if not H.is_binary:
        raise GroupError(f"{H.name} is not binary")
    if H.order % 4:
        raise GroupError(f"|{H.name}| = {H.order} is not divisible by 4")
    if d < 3 or d % 2 == 0:
        raise GroupError(f"d must be odd and >= 3, got {d}")
    G = direct_product(H, make_cyclic(d))
    trace = BinaryPipelineTrace(H=H, d=d, G=G)
    A = find_starter(G, budget)
    trace.starter = A
    hs = trace.h_elements
    x, j, y, swapped = swap_edges(G, A, hs)
    trace.x, trace.j, trace.y, trace.swapped = x, j, y, swapped
    z = 1  # generator (0, 1) of Zd
    X = h_transversal(G, hs)
    cycles = []
    for i in range(1, d):
        Ai = translate(G, A.alphas, G.power(z, i))
        cycles.extend(translate(G, Ai, h) for h in X)
    cycles.extend(translate(G, swapped, h) for h in X)
    S = CycleSystem.from_cycles((INF,) + tuple(plain(a) for a in c) for c in cycles)
    trace.system = require_valid(S, "swapped system")
    _check_aut(trace, H, assert_group)
    return trace.system, trace


def translation_perm(S: CycleSystem, G: FiniteGroup, g: int) -> tuple[int, ...]:
    """Right translation by ``g`` on a system over ``{inf} u G`` (plain or signed labels)."""
    pos = S.index_of
    out = []
    for vx in S.vertices:
        if vx.is_inf:
            out.append(pos[vx])
        else:
            out.append(pos[type(vx)(G.mul(vx.index, g), vx.sign)])
    return tuple(out)


def automorphic_translations(S: CycleSystem, G: FiniteGroup) -> list[int]:
    """All ``g`` whose right translation is an automorphism of ``S``."""
    return [g for g in range(G.order) if is_automorphism(translation_perm(S, G, g), S)]


def translations_equal_aut(trace: OddPipelineTrace) -> bool:
    """Every automorphism of the odd-pipeline output is ``(x, s) -> (x g, s)``
    for some ``g`` in ``{0} x G`` (checked element by element)."""
    gamma, S = trace.gamma, trace.system
    n = trace.group.order
    perms = {translation_perm(S, gamma, g) for g in range(n)}  # {0} x G are indices 0..n-1
    return set(trace.aut.elements) == perms


def unswapped_cycles(trace: BinaryPipelineTrace) -> CycleSystem:
    """The plain development of the starter, for edge comparison."""
    return develop(trace.G, trace.starter)


__all__ = [
    "BinaryPipelineTrace", "OddPipelineTrace", "PipelineError", "automorphic_translations",
    "canonical_cycle", "construct_binary", "construct_odd", "cycle_edges", "edge_orbit",
    "h_transversal", "hardcoded_rigid_hcs13", "modified_starter", "order4_elements",
    "swap_edge_sets", "swap_edges", "translation_perm", "translations_equal_aut",
    "unswapped_cycles",
]
