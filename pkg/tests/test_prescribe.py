from collections import Counter

import pytest

from hcsaut.autgroup import automorphism_group, fixes_vertex
from hcsaut.design import INF, canonical_cycle, cycle_edges, edge_multiset, validate
from hcsaut.groups import (
    GroupError, is_isomorphic, make_cyclic, make_quaternion8, parse_group_spec,
)
from hcsaut.prescribe import (
    automorphic_translations, construct_binary, construct_odd, edge_orbit,
    hardcoded_rigid_hcs13, modified_starter, swap_edge_sets, swap_edges,
    translations_equal_aut, unswapped_cycles,
)
from hcsaut.rotational import SearchBudget, Starter, find_starter, verify_starter

from conftest import A1, B1


@pytest.fixture(scope="module")
def q8_run():
    return construct_binary(make_quaternion8(), 3)


def test_rigid13():
    S = hardcoded_rigid_hcs13()
    assert validate(S).ok and S.v == 13
    assert all(len(c) == 13 for c in S.cycles)
    assert automorphism_group(S).order == 1


def test_modified_starter_z6(z6):
    k, star = modified_starter(z6, Starter(z6, B1))
    assert k == 2
    assert canonical_cycle((-1,) + star.alphas) == canonical_cycle((-1,) + A1)
    assert star.alphas == A1


@pytest.mark.parametrize("spec", ["Z3", "Z5", "Z7", "Z9", "Z3xZ3", "Z11"])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_modified_starter_properties(spec, seed):
    gamma = parse_group_spec("Z2x" + spec)
    C = find_starter(gamma, SearchBudget(seed=seed))
    k, star = modified_starter(gamma, C)
    assert 2 <= k <= gamma.order // 2 - 1
    lam = gamma.unique_involution
    moved = tuple(gamma.mul(a, lam) for a in star.alphas)
    assert canonical_cycle((-1,) + moved) == canonical_cycle((-1,) + star.alphas)
    assert verify_starter(gamma, star.alphas)
    # inf-neighbours are unchanged
    assert (star.alphas[0], star.alphas[-1]) == (C.alphas[0], C.alphas[-1])


def test_modified_starter_rejects_non_odd_half():
    with pytest.raises(GroupError):
        modified_starter(make_cyclic(8), find_starter(make_cyclic(8)))


@pytest.mark.parametrize("spec", ["Z1", "Z3", "Z5", "Z7", "Z9", "Z3xZ3"])
def test_construct_odd(spec):
    G = parse_group_spec(spec)
    S, trace = construct_odd(G)
    assert S.v == (13 if G.order == 1 else 4 * G.order + 1) and validate(S).ok
    assert trace.aut.order == G.order
    assert is_isomorphic(trace.aut.as_finite_group(), G)
    assert fixes_vertex(trace.aut, INF)
    if G.order > 1:
        assert translations_equal_aut(trace)


def test_construct_odd_other_seeds():
    for seed in range(5):
        S, trace = construct_odd(make_cyclic(5), SearchBudget(seed=seed))
        assert trace.aut.order == 5


def test_construct_odd_z15():
    S, trace = construct_odd(parse_group_spec("Z15"))
    assert S.v == 61 and trace.aut.order == 15


def test_construct_odd_even_rejected():
    with pytest.raises(GroupError):
        construct_odd(make_cyclic(4))


def test_trace_report():
    _, trace = construct_odd(make_cyclic(3))
    text = trace.report()
    assert "stage k = " in text and "aut order=3" in text
    _, trace = construct_odd(make_cyclic(1))
    assert "hardcoded" in trace.report()


def test_swap_edges(q8_run):
    _, tr = q8_run
    G, A = tr.G, tr.starter
    lam = G.unique_involution
    x, j, y = tr.x, tr.j, tr.y
    assert G.orders[x] == 4 and G.mul(x, x) == lam
    assert x in tr.h_elements and y in tr.h_elements
    a = (None,) + A.alphas
    assert G.div(a[j + 1], a[j]) == x
    E, E_star = swap_edge_sets(G, A, j)
    moved = {tuple(sorted((G.mul(p, y), G.mul(q, y)))) for p, q in E}
    assert moved == E_star
    before = Counter(cycle_edges((-1,) + A.alphas))
    after = Counter(cycle_edges((-1,) + tr.swapped))
    assert after == before - Counter(E) + Counter(E_star)
    assert sorted(tr.swapped) == list(range(G.order))
    assert edge_orbit(G, E, tr.h_elements) == edge_orbit(G, E_star, tr.h_elements)


def test_swap_edges_requires_order4():
    G = parse_group_spec("Z2xZ3")
    with pytest.raises(GroupError):
        swap_edges(G, find_starter(G), [0, 3])


def test_construct_binary_q8(q8_run):
    S, tr = q8_run
    assert S.v == 25 and validate(S).ok
    assert tr.aut.order == 8
    assert is_isomorphic(tr.aut.as_finite_group(), make_quaternion8())
    assert sorted(automorphic_translations(S, tr.G)) == tr.h_elements
    assert edge_multiset(S) == edge_multiset(unswapped_cycles(tr))
    assert "x = " in tr.report()


@pytest.mark.parametrize("spec,d", [("Z4", 3), ("Z4", 5), ("Z12", 3)])
def test_construct_binary_cyclic(spec, d):
    H = parse_group_spec(spec)
    S, tr = construct_binary(H, d)
    assert S.v == H.order * d + 1
    assert is_isomorphic(tr.aut.as_finite_group(), H)


@pytest.mark.parametrize("spec,d", [("Z2xZ2", 3), ("Z2", 3), ("Z6", 3), ("Q8", 4), ("Q8", 1)])
def test_construct_binary_rejects(spec, d):
    with pytest.raises(GroupError):
        construct_binary(parse_group_spec(spec), d)


def test_assert_downgrade(monkeypatch):
    import hcsaut.prescribe as pre
    monkeypatch.setattr(pre, "find_isomorphism", lambda a, b: None)
    with pytest.raises(pre.PipelineError):
        construct_odd(make_cyclic(3))
    with pytest.warns(UserWarning):
        _, trace = construct_odd(make_cyclic(3), assert_group=False)
    assert trace.notes
