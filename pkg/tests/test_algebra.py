"""Finite groups, G-sets, and integer linear algebra mod N."""
import numpy as np
import pytest

from twistcat.algebra import (
    FiniteGroup,
    GSet,
    Subgroup,
    characters,
    conjugate,
    coset_gset,
    cyclic_group,
    direct_product,
    disjoint_union_gset,
    gset_isomorphisms,
    is_transitive,
    opposite_group,
    orbits,
    point_gset,
    product_embeddings,
    product_gset,
    regular_gset,
    restrict_gset,
    smith_normal_form,
    solve_mod,
    stabilizer,
    subgroups,
    trivial_gset,
)
from twistcat.errors import NoIdentity, NoInverse, NotAssociative

from oracles import (
    cyclic_table,
    oracle_characters,
    oracle_gset_isomorphisms,
    oracle_orbits,
    oracle_snf_diagonal,
    oracle_stabilizer,
    oracle_subgroups,
    oracle_gset_isomorphisms,
    point_action,
    regular_action,
    table_identity,
    table_inverse,
)


def klein_group() -> FiniteGroup:
    return direct_product(cyclic_group(2), cyclic_group(2))


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

def test_cyclic_group_matches_reference_table():
    for n in range(1, 9):
        grp = cyclic_group(n)
        assert grp.order == n
        assert grp.table.tolist() == cyclic_table(n)
        assert grp.identity == table_identity(cyclic_table(n))
        assert grp.inverse.tolist() == table_inverse(cyclic_table(n))
        assert grp.op(1 % n, n - 1) == grp.identity if n > 1 else True
        for g in grp.elements():
            assert grp.op(g, grp.inv(g)) == grp.identity


def test_group_table_validation():
    with pytest.raises(NoIdentity):
        FiniteGroup([[0, 0], [0, 0]])
    with pytest.raises(NotAssociative):
        # quasigroup without associativity: identity 0, but 1*(1*1) != (1*1)*1
        FiniteGroup([[0, 1, 2, 3, 4],
                     [1, 0, 3, 4, 2],
                     [2, 4, 0, 1, 3],
                     [3, 2, 4, 0, 1],
                     [4, 3, 1, 2, 0]])
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1]])
    with pytest.raises(ValueError):
        FiniteGroup([[0, 1], [1, 7]])


def test_monoid_without_inverses_is_rejected():
    # {0,1} under multiplication: identity is 1, 0 has no inverse
    with pytest.raises((NoInverse, NoIdentity)):
        FiniteGroup([[0, 0], [0, 1]])


def test_direct_product_and_embeddings():
    g = cyclic_group(2)
    h = cyclic_group(3)
    prod = direct_product(g, h)
    assert prod.order == 6
    emb_g, emb_h = product_embeddings(g, h)
    # index convention: (a, b) -> a * |H| + b
    assert [int(v) for v in emb_g] == [0, 3]
    assert [int(v) for v in emb_h] == [0, 1, 2]
    for a in g.elements():
        for b in g.elements():
            assert prod.op(int(emb_g[a]), int(emb_g[b])) == int(emb_g[g.op(a, b)])
    for a in h.elements():
        for b in h.elements():
            assert prod.op(int(emb_h[a]), int(emb_h[b])) == int(emb_h[h.op(a, b)])
    # the two factors commute inside the product
    for a in g.elements():
        for b in h.elements():
            assert prod.op(int(emb_g[a]), int(emb_h[b])) == \
                prod.op(int(emb_h[b]), int(emb_g[a]))


def test_element_order_and_exponent():
    grp = cyclic_group(6)
    assert [grp.element_order(g) for g in grp.elements()] == [1, 6, 3, 2, 3, 6]
    assert grp.exponent() == 6
    assert klein_group().exponent() == 2


def test_opposite_group():
    grp = direct_product(cyclic_group(2), cyclic_group(4))
    opp = opposite_group(grp)
    for a in grp.elements():
        for b in grp.elements():
            assert opp.op(a, b) == grp.op(b, a)


def test_subgroups_match_oracle():
    for grp in (cyclic_group(4), cyclic_group(6), klein_group()):
        found = sorted(tuple(s.elements) for s in subgroups(grp))
        assert found == oracle_subgroups(grp.table.tolist())


def test_subgroup_helpers():
    grp = cyclic_group(4)
    sub = Subgroup(grp, (0, 2))
    assert sub.contains(2) and not sub.contains(1)
    inner = sub.to_group()
    assert inner.order == 2
    assert len(sub) == 2
    v4 = klein_group()
    subs = [s for s in subgroups(v4) if len(s.elements) == 2]
    assert len(subs) == 3
    assert not conjugate(subs[0], subs[1])  # abelian: conjugacy = equality
    assert conjugate(subs[0], subs[0])


def test_characters_match_oracle():
    for grp in (cyclic_group(3), cyclic_group(4), klein_group()):
        for n_root in (2, 4):
            got = sorted(tuple(int(e) for e in chi.exponents[:, 0])
                         for chi in characters(grp, n_root))
            assert got == sorted(oracle_characters(grp.table.tolist(), n_root))


# ---------------------------------------------------------------------------
# G-sets
# ---------------------------------------------------------------------------

def test_standard_gsets():
    grp = cyclic_group(4)
    pt = point_gset(grp)
    assert pt.size == 1 and pt.action.tolist() == point_action(grp.table.tolist())
    reg = regular_gset(grp)
    assert reg.size == 4 and reg.action.tolist() == regular_action(grp.table.tolist())
    assert trivial_gset(grp, 3).size == 3
    sub = Subgroup(grp, (0, 2))
    cosets = coset_gset(grp, sub)
    assert cosets.size == 2
    assert is_transitive(cosets)
    assert sorted(stabilizer(cosets, 0).elements) == [0, 2]


def test_gset_validation():
    grp = cyclic_group(2)
    with pytest.raises(ValueError):
        GSet(grp, [[0, 1]])            # one row per group element
    with pytest.raises(ValueError):
        GSet(grp, [[1, 0], [0, 1]])    # identity must act trivially
    with pytest.raises(ValueError):
        GSet(cyclic_group(3), [[0, 1], [1, 0], [0, 1]])  # not an action


def test_orbits_and_stabilizers_match_oracle():
    grp = cyclic_group(4)
    sub = Subgroup(grp, (0, 2))
    x = disjoint_union_gset(point_gset(grp), coset_gset(grp, sub))
    x = disjoint_union_gset(x, regular_gset(grp))
    act = x.action.tolist()
    assert [sorted(o) for o in orbits(x)] == oracle_orbits(act)
    for p in range(x.size):
        assert sorted(stabilizer(x, p).elements) == oracle_stabilizer(act, p)
    assert not is_transitive(x)


def test_product_and_restricted_gsets():
    g = cyclic_group(2)
    h = cyclic_group(2)
    prod = direct_product(g, h)
    reg = regular_gset(g)
    xy = product_gset(reg, reg)  # diagonal action on X x Y
    assert xy.group == g and xy.size == 4
    assert len(orbits(xy)) == 2
    emb_g, _ = product_embeddings(g, h)
    back = restrict_gset(regular_gset(prod), emb_g, g)
    assert back.group == g
    assert back.size == 4
    assert [sorted(o) for o in orbits(back)] == [[0, 2], [1, 3]]


def test_gset_isomorphisms_match_oracle():
    grp = cyclic_group(3)
    reg = regular_gset(grp)
    isos = gset_isomorphisms(reg, reg)
    oracle = oracle_gset_isomorphisms(
        grp.table.tolist(), reg.action.tolist(), reg.action.tolist())
    assert sorted(tuple(int(v) for v in f) for f in isos) == sorted(oracle)
    assert len(isos) == 3  # simply transitive: |Aut| = |G|
    assert gset_isomorphisms(point_gset(grp), reg) == []


# ---------------------------------------------------------------------------
# integer linear algebra
# ---------------------------------------------------------------------------

def test_smith_normal_form_random_matrices():
    rng = np.random.default_rng(2024)
    for _ in range(40):
        rows = int(rng.integers(1, 6))
        cols = int(rng.integers(1, 6))
        mat = rng.integers(-9, 10, size=(rows, cols))
        snf = smith_normal_form(mat)
        u = np.array(snf.U)
        v = np.array(snf.V)
        d = np.array(snf.D)
        assert np.array_equal(u @ mat @ v, d)
        assert abs(round(float(np.linalg.det(u)))) == 1
        assert abs(round(float(np.linalg.det(v)))) == 1
        diag = snf.diagonal()
        assert diag == oracle_snf_diagonal(mat.tolist())
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0


def test_solve_mod_random_systems():
    rng = np.random.default_rng(99)
    for _ in range(40):
        rows = int(rng.integers(1, 6))
        cols = int(rng.integers(1, 6))
        modulus = int(rng.integers(2, 13))
        mat = rng.integers(-6, 7, size=(rows, cols))
        x = rng.integers(0, modulus, size=cols)
        b = (mat @ x) % modulus
        sol = solve_mod(mat, b, modulus)
        assert sol is not None
        assert np.array_equal((mat @ np.array(sol)) % modulus, b)


def test_solve_mod_detects_infeasibility():
    # 2x = 1 (mod 4) has no solution
    assert solve_mod([[2]], [1], 4) is None
    assert solve_mod([[2]], [2], 4) == [1] or solve_mod([[2]], [2], 4) == [3]
    # 0x = b solvable iff b = 0
    assert solve_mod([[0]], [3], 6) is None
    assert solve_mod([[0]], [0], 6) == [0]
    with pytest.raises(ValueError):
        solve_mod([[1]], [0], 0)
