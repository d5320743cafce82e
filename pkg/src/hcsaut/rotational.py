"""1-rotational Hamiltonian cycle systems over a binary group.

A starter is a cycle ``(inf, a_1, ..., a_2n)`` through every element of a
binary group ``G`` of order 2n with unique involution ``lam`` such that

* the cycle is invariant under right multiplication by ``lam``, i.e.
  ``a_{2n+1-i} = a_i * lam``, and
* the left differences ``a_i a_{i+1}^-1`` and their inverses over the first
  half (``i = 1..n-1``) hit every element of ``G`` except ``1`` and ``lam``
  exactly once.

Its right translates by a transversal of ``{1, lam}`` form an HCS(2n+1).
Only ``alphas`` (the sequence after ``inf``) is stored; ``inf`` is implicit.
"""

from __future__ import annotations

import random
import re
import sys
from dataclasses import dataclass, field

from .design import INF, CycleSystem, DesignError, canonical_cycle, plain, require_valid
from .groups import FiniteGroup, GroupError, parse_group_spec


class StarterError(ValueError):
    pass


class StarterNotFound(RuntimeError):
    def __init__(self, group: FiniteGroup, nodes: int):
        super().__init__(f"no starter found for {group.name} within {nodes} search nodes")
        self.group = group
        self.nodes = nodes


@dataclass(frozen=True)
class Starter:
    group: FiniteGroup
    alphas: tuple[int, ...]

    @property
    def lam(self) -> int:
        return self.group.unique_involution

    @property
    def n(self) -> int:
        return len(self.alphas) // 2

    @property
    def half(self) -> tuple[int, ...]:
        return self.alphas[: self.n]

    def as_cycle(self) -> tuple:
        """Cycle with ``None`` standing for ``inf``."""
        return (None,) + self.alphas

    def translate(self, g: int) -> "Starter":
        return Starter(self.group, translate(self.group, self.alphas, g))


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10**7
    seed: int = 0
    restarts: int = 64

    def __post_init__(self):
        if self.max_nodes < 1 or self.restarts < 1 or self.seed < 0:
            raise ValueError("budget fields must be positive")


@dataclass
class StarterReport:
    ok: bool
    defects: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def translate(G: FiniteGroup, alphas, g: int) -> tuple[int, ...]:
    return tuple(G.table[a][g] for a in alphas)


def half_differences(G: FiniteGroup, half) -> list[int]:
    """``x_i x_{i+1}^-1`` and its inverse for consecutive entries of ``half``."""
    out = []
    for a, b in zip(half, half[1:]):
        d = G.div(a, b)
        out.extend((d, G.inv(d)))
    return out


def _strip_inf(A) -> tuple[int, ...]:
    seq = list(A)
    marks = [i for i, x in enumerate(seq) if x is None or x == INF or x == "inf"]
    if len(marks) == 1:
        i = marks[0]
        seq = seq[i + 1:] + seq[:i]
    elif marks:
        raise StarterError("cycle visits inf more than once")
    return tuple(int(x) for x in seq)


def verify_starter(G: FiniteGroup, A) -> StarterReport:
    """Check both starter conditions; ``A`` may start with ``None``/``inf`` or omit it."""
    if not G.is_binary:
        raise GroupError(f"{G.name} is not binary")
    alphas = _strip_inf(A)
    if sorted(alphas) != list(range(G.order)):
        raise StarterError(f"cycle does not visit each element of {G.name} exactly once")
    lam = G.unique_involution
    n = G.order // 2
    defects = []
    base = canonical_cycle((-1,) + alphas)
    moved = canonical_cycle((-1,) + translate(G, alphas, lam))
    if base != moved:
        bad = [
            i + 1 for i in range(2 * n)
            if alphas[2 * n - 1 - i] != G.mul(alphas[i], lam)
        ]
        defects.append(f"A*lam != A (pairing a_(2n+1-i) = a_i*lam fails at i={bad})")
    diffs = half_differences(G, alphas[:n])
    target = set(range(G.order)) - {G.identity, lam}
    seen: dict[int, int] = {}
    for pos, d in enumerate(diffs):
        i = pos // 2 + 1
        if d in (G.identity, lam):
            defects.append(f"difference at i={i} lies in {{1, lam}}")
        elif d in seen:
            defects.append(f"difference {d} repeated at i={seen[d]} and i={i}")
        else:
            seen[d] = i
    missing = sorted(target - set(seen))
    if missing:
        defects.append(f"differences miss {missing}")
    return StarterReport(not defects, defects)


def transversal(G: FiniteGroup) -> list[int]:
    """Least-index representative of each coset of ``{1, lam}``."""
    lam = G.unique_involution
    return [x for x in range(G.order) if x < G.mul(x, lam)]


def orbit_listings(G: FiniteGroup, A, elements) -> list[tuple]:
    """Oriented cycles ``(inf, a_1 g, ..., a_2n g)`` for ``g`` in ``elements``."""
    if isinstance(A, Starter):
        A = A.alphas
    alphas = _strip_inf(A)
    return [(INF,) + tuple(plain(a) for a in translate(G, alphas, g)) for g in elements]


def develop(G: FiniteGroup, A, check: bool = True) -> CycleSystem:
    """The HCS ``{A*x : x in transversal}`` on ``{inf} u G``."""
    if isinstance(A, Starter):
        A = A.alphas
    alphas = _strip_inf(A)
    if check:
        rep = verify_starter(G, alphas)
        if not rep:
            raise StarterError("; ".join(rep.defects))
    cycles = [
        (INF,) + tuple(plain(a) for a in translate(G, alphas, x)) for x in transversal(G)
    ]
    S = CycleSystem.from_cycles(cycles)
    return require_valid(S, f"development over {G.name}")


def find_starter(G: FiniteGroup, budget: SearchBudget | None = None) -> Starter:
    """Randomized backtracking over the first half ``x_1..x_n`` with ``x_1 = 1``.

    Restart ``r`` shuffles candidates with a generator seeded from
    ``(budget.seed, r)``; the first success in restart order is returned.
    """
    if not G.is_binary:
        raise GroupError(f"{G.name} is not binary")
    budget = budget or SearchBudget()
    lam = G.unique_involution
    e = G.identity
    n = G.order // 2
    t, inv = G.table, G.inverses
    coset = [min(x, t[x][lam]) for x in range(G.order)]
    per_restart = max(1, budget.max_nodes // budget.restarts)
    total = 0

    if n == 1:
        return Starter(G, (e, lam))

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * n + 100))
    try:
        for r in range(budget.restarts):
            rng = random.Random(f"{budget.seed}:{r}")
            half = [e]
            used_coset = {coset[e]}
            used_diff = {e, lam}
            nodes = 0

            def extend() -> bool:
                nonlocal nodes
                if len(half) == n:
                    return True
                if nodes >= per_restart:
                    return False
                nodes += 1
                prev = half[-1]
                cands = []
                for y in range(G.order):
                    if coset[y] in used_coset:
                        continue
                    d = t[prev][inv[y]]
                    if d in used_diff:
                        continue
                    cands.append((y, d))
                rng.shuffle(cands)
                for y, d in cands:
                    di = inv[d]
                    half.append(y)
                    used_coset.add(coset[y])
                    used_diff.add(d)
                    used_diff.add(di)
                    if extend():
                        return True
                    half.pop()
                    used_coset.discard(coset[y])
                    used_diff.discard(d)
                    used_diff.discard(di)
                return False

            found = extend()
            total += nodes
            if found:
                alphas = tuple(half) + tuple(t[x][lam] for x in reversed(half))
                s = Starter(G, alphas)
                assert verify_starter(G, alphas), "search produced an invalid starter"
                return s
    finally:
        sys.setrecursionlimit(old_limit)
    raise StarterNotFound(G, total)


def serialize_starter(s: Starter) -> str:
    return f"starter group={s.group.name}\ninf {' '.join(map(str, s.alphas))}\n"


def parse_starter(text: str) -> Starter:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) != 2:
        raise StarterError("starter file needs a header line and a cycle line")
    m = re.fullmatch(r"starter\s+group\s*=\s*(\S+)", lines[0])
    if m is None:
        raise StarterError("expected 'starter group=<spec>' header")
    G = parse_group_spec(m.group(1))
    toks = lines[1].split()
    if not toks or toks[0] != "inf":
        raise StarterError("starter cycle must begin with inf")
    try:
        alphas = tuple(int(x) for x in toks[1:])
    except ValueError:
        raise StarterError("starter entries must be element indices") from None
    rep = verify_starter(G, alphas)
    if not rep:
        raise StarterError("; ".join(rep.defects))
    return Starter(G, alphas)


__all__ = [
    "DesignError", "SearchBudget", "Starter", "StarterError", "StarterNotFound",
    "StarterReport", "develop", "find_starter", "orbit_listings", "half_differences", "parse_starter",
    "serialize_starter", "translate", "transversal", "verify_starter",
]
