"""Finite groups as explicit multiplication tables.

Elements are the integers ``0..n-1``.  ``G.mul(a, b)`` is ``table[a][b]``.
Direct products index pairs row-major: ``(i1, i2) -> i1 * |G2| + i2``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, reduce

import numpy as np

ORDER_CAP = 1024


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    name: str = "G"
    identity: int = field(init=False)
    inverses: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise GroupError("empty group")
        if n > ORDER_CAP:
            raise GroupError(f"group order {n} exceeds cap {ORDER_CAP}")
        full = set(range(n))
        for row in self.table:
            if len(row) != n or set(row) != full:
                raise GroupError(f"{self.name}: table rows are not permutations")
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise GroupError(f"{self.name}: table columns are not permutations")
        ids = [e for e in range(n) if self.table[e] == tuple(range(n))]
        if len(ids) != 1:
            raise GroupError(f"{self.name}: no two-sided identity")
        e = ids[0]
        if any(self.table[i][e] != i for i in range(n)):
            raise GroupError(f"{self.name}: no two-sided identity")
        t = self.table
        arr = np.asarray(t, dtype=np.intp)
        for a in range(n):
            # (a*b)*c vs a*(b*c) over all b, c
            bad = np.argwhere(arr[arr[a]] != arr[a][arr])
            if bad.size:
                b, c = bad[0]
                raise GroupError(f"{self.name}: not associative at {(a, int(b), int(c))}")
        inv = tuple(t[a].index(e) for a in range(n))
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverses", inv)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def div(self, a: int, b: int) -> int:
        """``a * b^-1``; invariant under right translation of both arguments."""
        return self.table[a][self.inverses[b]]

    def product(self, *xs: int) -> int:
        return reduce(self.mul, xs, self.identity)

    def power(self, a: int, k: int) -> int:
        r = self.identity
        for _ in range(k):
            r = self.table[r][a]
        return r

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(element_order(self, x) for x in range(self.order))

    @cached_property
    def involutions(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.order) if self.orders[x] == 2)

    @property
    def is_binary(self) -> bool:
        return len(self.involutions) == 1

    @property
    def unique_involution(self) -> int:
        if not self.is_binary:
            raise GroupError(f"{self.name} is not binary ({len(self.involutions)} involutions)")
        return self.involutions[0]


def element_order(G: FiniteGroup, x: int) -> int:
    m, y = 1, x
    while y != G.identity:
        y = G.table[y][x]
        m += 1
    return m


def involutions(G: FiniteGroup) -> tuple[tuple[int, ...], bool]:
    """All elements of order two, and whether there is exactly one."""
    return G.involutions, G.is_binary


def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be >= 1")
    if n > ORDER_CAP:
        raise GroupError(f"group order {n} exceeds cap {ORDER_CAP}")
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(table, name=f"Z{n}")


# Q8 elements in index order.  Index 0 is 1, index 1 is -1.
Q8_LABELS = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def make_quaternion8() -> FiniteGroup:
    # unit products: i*j = k, j*k = i, k*i = j, squares = -1
    units = {("1", u): (1, u) for u in "1ijk"}
    units.update({(u, "1"): (1, u) for u in "1ijk"})
    for u in "ijk":
        units[(u, u)] = (-1, "1")
    for a, b, c in (("i", "j", "k"), ("j", "k", "i"), ("k", "i", "j")):
        units[(a, b)] = (1, c)
        units[(b, a)] = (-1, c)

    def decode(label):
        return (-1, label[1]) if label.startswith("-") else (1, label)

    def encode(sign, unit):
        return ("-" if sign < 0 else "") + unit

    table = []
    for a in Q8_LABELS:
        sa, ua = decode(a)
        row = []
        for b in Q8_LABELS:
            sb, ub = decode(b)
            s, u = units[(ua, ub)]
            row.append(Q8_LABELS.index(encode(sa * sb * s, u)))
        table.append(tuple(row))
    return FiniteGroup(tuple(table), name="Q8")


def direct_product(G1: FiniteGroup, G2: FiniteGroup, cap: int = ORDER_CAP) -> FiniteGroup:
    n1, n2 = G1.order, G2.order
    if n1 * n2 > cap:
        raise GroupError(f"product order {n1 * n2} exceeds cap {cap}")
    table = []
    for a1 in range(n1):
        for a2 in range(n2):
            table.append(tuple(
                G1.table[a1][b1] * n2 + G2.table[a2][b2]
                for b1 in range(n1) for b2 in range(n2)
            ))
    return FiniteGroup(tuple(table), name=f"{G1.name}x{G2.name}")


_ATOM = re.compile(r"Z([1-9][0-9]*)|Q8")


def parse_group_spec(spec: str) -> FiniteGroup:
    """Parse ``atom ("x" atom)*`` with atoms ``Z<n>`` and ``Q8``, e.g. ``Q8xZ3``."""
    parts = spec.strip().split("x")
    if not spec.strip() or any(not p for p in parts):
        raise GroupError(f"malformed group spec {spec!r}")
    order = 1
    sizes = []
    for p in parts:
        m = _ATOM.fullmatch(p)
        if m is None:
            raise GroupError(f"unsupported group atom {p!r} in {spec!r}")
        sizes.append(None if p == "Q8" else int(m.group(1)))
        order *= sizes[-1] or 8
    if order > ORDER_CAP:
        raise GroupError(f"group {spec!r} exceeds order cap {ORDER_CAP}")
    atoms = [make_quaternion8() if k is None else make_cyclic(k) for k in sizes]
    return reduce(direct_product, atoms)


def subgroup_closure(G: FiniteGroup, gens) -> set[int]:
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = G.table[a][g]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def generating_set(G: FiniteGroup) -> list[int]:
    """A small generating set, picked greedily by decreasing element order."""
    gens: list[int] = []
    span = {G.identity}
    by_order = sorted(range(G.order), key=lambda x: (-G.orders[x], x))
    for x in by_order:
        if len(span) == G.order:
            break
        if x not in span:
            gens.append(x)
            span = subgroup_closure(G, gens)
    return gens


def _extend(G1, G2, gens, images):
    """Extend generator images to a full map, or None if not a homomorphism."""
    phi = {G1.identity: G2.identity}
    frontier = [G1.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g, h in zip(gens, images):
                b = G1.table[a][g]
                hb = G2.table[phi[a]][h]
                if b in phi:
                    if phi[b] != hb:
                        return None
                else:
                    phi[b] = hb
                    nxt.append(b)
        frontier = nxt
    return phi


def find_isomorphism(G1: FiniteGroup, G2: FiniteGroup) -> dict[int, int] | None:
    """An isomorphism ``G1 -> G2`` as an element map, or None."""
    if G1.order != G2.order:
        return None
    if Counter(G1.orders) != Counter(G2.orders):
        return None
    gens = generating_set(G1)
    candidates = [
        [y for y in range(G2.order) if G2.orders[y] == G1.orders[g]] for g in gens
    ]
    images: list[int] = []

    def search(depth):
        if depth == len(gens):
            phi = _extend(G1, G2, gens, images)
            if phi is not None and len(set(phi.values())) == G1.order:
                return phi
            return None
        g = gens[depth]
        o1, o2 = G1.orders, G2.orders
        for y in candidates[depth]:
            if y in images:
                continue
            # an isomorphism preserves orders of products with earlier generators
            if any(
                o1[G1.mul(gi, g)] != o2[G2.mul(yi, y)]
                or o1[G1.div(gi, g)] != o2[G2.div(yi, y)]
                for gi, yi in zip(gens, images)
            ):
                continue
            images.append(y)
            # prune: images so far must generate a subgroup consistent with a hom
            if _extend(G1, G2, gens[: depth + 1], images) is not None:
                found = search(depth + 1)
                if found is not None:
                    return found
            images.pop()
        return None

    phi = search(0)
    if phi is not None:
        assert is_isomorphism(G1, G2, phi)
    return phi


def is_isomorphism(G1: FiniteGroup, G2: FiniteGroup, phi: dict[int, int]) -> bool:
    n = G1.order
    if len(phi) != n or len(set(phi.values())) != n or G2.order != n:
        return False
    return all(
        phi[G1.table[a][b]] == G2.table[phi[a]][phi[b]]
        for a in range(n) for b in range(n)
    )


def is_isomorphic(G1: FiniteGroup, G2: FiniteGroup) -> bool:
    return find_isomorphism(G1, G2) is not None
