"""Module functors, natural transformations, adjoints, classification."""
import numpy as np
import pytest

from twistcat._matrix import SMatrix, matrix_rank, nullspace_basis
from twistcat.algebra import (
    cyclic_group,
    direct_product,
    disjoint_union_gset,
    point_gset,
    regular_gset,
    solve_mod,
)
from twistcat.cohomology import (
    UnitCochain,
    deligne_omega,
    differential,
    differential_matrix,
    omega_cyclic,
)
from twistcat.errors import NotCyclic, ShapeMismatch, SourceTargetMismatch
from twistcat.fusion import FusionData
from twistcat.modcat import (
    _product_kappa,
    bimod_to_deligne,
    deligne_to_bimod,
    make_modcat,
    modcats_for,
    regular_module_category,
)
from twistcat.modfun import (
    ModuleFunctorData,
    action_functor,
    adjoint,
    bimodfun_to_deligne,
    classify_simple_cyclic,
    count_simple_cyclic,
    deligne_to_bimodfun,
    direct_sum,
    functor_from_equivariant,
    hom_basis,
    hom_dimension,
    identity_functor,
    invertible_hom,
    orbit_decompose,
    validate_bimodfun,
    validate_modfun,
    validate_nat_trans,
)
from twistcat.scalar import Scalar, Unit

Z2 = cyclic_group(2)
PT2 = point_gset(Z2)
REG2 = regular_gset(Z2)


def triv_kappa(g):
    return UnitCochain.trivial(1, point_gset(g), 1)


F2_0 = FusionData(Z2, omega_cyclic(2, 0), triv_kappa(Z2))
F2_1 = FusionData(Z2, omega_cyclic(2, 1), triv_kappa(Z2))
M_REG = regular_module_category(F2_0)
IDENT = identity_functor(M_REG)


# ---------------------------------------------------------------------------
# exact matrices
# ---------------------------------------------------------------------------

def test_smatrix_arithmetic():
    i2 = SMatrix.identity(2)
    assert i2.is_identity() and (i2 @ i2) == i2
    m = SMatrix([[Scalar.from_rational(2), Scalar.from_rational(1)],
                 [Scalar.from_rational(1), Scalar.from_rational(1)]])
    inv = m.inverse()
    assert inv is not None and (m @ inv).is_identity()
    sing = SMatrix([[Scalar.from_rational(1), Scalar.from_rational(2)],
                    [Scalar.from_rational(2), Scalar.from_rational(4)]])
    assert sing.inverse() is None
    bd = SMatrix.block_diag([i2, SMatrix.from_unit(Unit(4, 1))])
    assert bd.nrows == 3 and bd.entry(2, 2) == Unit(4, 1).to_scalar()
    assert bd.transpose().transpose() == bd
    assert bd.scale(Unit(2, 1)).scale(Unit(2, 1)) == bd


def test_matrix_rank_and_nullspace():
    rows = [[Scalar.from_rational(1), Scalar.from_rational(2)]]
    assert matrix_rank(rows) == 1
    ns = nullspace_basis(rows, 2)
    assert len(ns) == 1
    assert (ns[0][0] + ns[0][1] * Scalar.from_rational(2)).is_zero()


# ---------------------------------------------------------------------------
# identity / equivariant functors
# ---------------------------------------------------------------------------

def test_identity_functor_validates_with_simple_hom():
    assert validate_modfun(IDENT).ok
    assert hom_dimension(IDENT, IDENT) == 1
    basis = hom_basis(IDENT, IDENT)
    assert len(basis) == 1
    assert validate_nat_trans(basis[0]).ok


def test_equivariant_identity_map_gives_identity_functor():
    lam0 = UnitCochain.trivial(1, REG2, 1)
    f_id = functor_from_equivariant(np.arange(2), lam0, M_REG, M_REG)
    assert f_id == IDENT


def test_translation_functor():
    lam0 = UnitCochain.trivial(1, REG2, 1)
    f_tr = functor_from_equivariant(Z2.table[:, 1], lam0, M_REG, M_REG)
    assert validate_modfun(f_tr).ok
    assert list(orbit_decompose(f_tr)) == [((0, 1), (1, 0))]
    assert hom_dimension(f_tr, IDENT) == 0
    assert hom_dimension(f_tr, f_tr) == 1


def test_coboundary_shift_of_lambda_is_isomorphic():
    lam0 = UnitCochain.trivial(1, REG2, 1)
    rho = UnitCochain(0, REG2, 4, np.array([1, 3]))
    f_id = functor_from_equivariant(np.arange(2), lam0, M_REG, M_REG)
    f_id2 = functor_from_equivariant(np.arange(2), differential(rho), M_REG, M_REG)
    assert validate_modfun(f_id2).ok
    assert hom_dimension(f_id, f_id2) == 1
    witness = invertible_hom(f_id, f_id2)
    assert witness is not None
    assert validate_nat_trans(witness).ok


# ---------------------------------------------------------------------------
# direct sums and decomposition
# ---------------------------------------------------------------------------

def test_direct_sum_and_orbit_decomposition():
    lam0 = UnitCochain.trivial(1, REG2, 1)
    f_tr = functor_from_equivariant(Z2.table[:, 1], lam0, M_REG, M_REG)
    both = direct_sum([IDENT, f_tr])
    assert validate_modfun(both).ok
    assert hom_dimension(both, both) == 2
    assert np.array_equal(both.mult, np.ones((2, 2), dtype=np.int64))
    parts = orbit_decompose(both)
    assert len(parts) == 2
    resum = direct_sum(list(parts.values()))
    assert validate_modfun(resum).ok
    assert hom_dimension(resum, both) == 2


def test_direct_sum_requires_matching_endpoints():
    m_pt = make_modcat(F2_0, PT2, UnitCochain.trivial(2, PT2, 1))
    with pytest.raises(SourceTargetMismatch):
        direct_sum([IDENT, identity_functor(m_pt)])


# ---------------------------------------------------------------------------
# adjoints
# ---------------------------------------------------------------------------

def test_adjoint_of_identity_is_identity():
    assert adjoint(IDENT) == IDENT


def test_double_adjoint_is_isomorphic_to_original():
    lam0 = UnitCochain.trivial(1, REG2, 1)
    f_tr = functor_from_equivariant(Z2.table[:, 1], lam0, M_REG, M_REG)
    adj = adjoint(f_tr)
    assert validate_modfun(adj).ok
    assert np.array_equal(adj.mult, f_tr.mult.T)
    double = adjoint(adj)
    witness = invertible_hom(f_tr, double)
    assert witness is not None
    assert validate_nat_trans(witness).ok


# ---------------------------------------------------------------------------
# classification of simple functors
# ---------------------------------------------------------------------------

def classification_cases():
    z3 = cyclic_group(3)
    f3_0 = FusionData(z3, omega_cyclic(3, 0), triv_kappa(z3))
    cases = []
    for grp, fus in [(Z2, F2_0), (z3, f3_0)]:
        pt, reg = point_gset(grp), regular_gset(grp)
        union = disjoint_union_gset(pt, reg)
        m_pt = make_modcat(fus, pt, UnitCochain.trivial(2, pt, 1))
        m_rg = regular_module_category(fus)
        m_un = make_modcat(fus, union, UnitCochain.trivial(2, union, 1))
        cases += [(m_pt, m_pt), (m_rg, m_rg), (m_un, m_un)]
    return cases


def test_simple_functor_classification_counts():
    expected = [2, 2, 6, 3, 3, 8]
    for (src, tgt), want in zip(classification_cases(), expected):
        cls = classify_simple_cyclic(src, tgt)
        assert len(cls) == want
        assert count_simple_cyclic(src, tgt) == want
        for c in cls:
            assert validate_modfun(c.functor).ok
            assert hom_dimension(c.functor, c.functor) == 1


def test_simple_functors_have_identity_hom_pattern():
    src, tgt = classification_cases()[2]  # point-union square over Z/2
    cls = classify_simple_cyclic(src, tgt)
    for i, ci in enumerate(cls):
        for j, cj in enumerate(cls):
            assert hom_dimension(ci.functor, cj.functor) == int(i == j)


def test_classification_with_solver_produced_psi():
    m_tw = modcats_for(F2_1, REG2)[0]
    cls = classify_simple_cyclic(m_tw, m_tw)
    assert len(cls) == 2
    for c in cls:
        assert validate_modfun(c.functor).ok
        assert hom_dimension(c.functor, c.functor) == 1
    assert hom_dimension(cls[0].functor, cls[1].functor) == 0


def test_classification_rejects_noncyclic_groups():
    v4 = direct_product(Z2, Z2)
    f_v4 = FusionData(v4, UnitCochain.trivial(3, point_gset(v4), 1),
                      triv_kappa(v4))
    m = regular_module_category(f_v4)
    with pytest.raises(NotCyclic):
        count_simple_cyclic(m, m)


def test_action_functor_validates_for_cyclic_twists():
    for n, s in [(2, 0), (2, 1), (3, 1), (4, 3)]:
        g = cyclic_group(n)
        fus = FusionData(g, omega_cyclic(n, s), triv_kappa(g))
        af = action_functor(regular_module_category(fus), 0)
        assert validate_modfun(af).ok


# ---------------------------------------------------------------------------
# bimodule functors through the product category
# ---------------------------------------------------------------------------

SIGN2 = UnitCochain(1, PT2, 2, np.array([[0], [1]]))


def product_setting(sg, sh):
    fg = FusionData(Z2, omega_cyclic(2, sg), SIGN2)
    fh = FusionData(Z2, omega_cyclic(2, sh), triv_kappa(Z2))
    prod = direct_product(Z2, Z2)
    fusion_d = FusionData(prod, deligne_omega(fg.omega, fh.omega),
                          _product_kappa(fg, fh))
    m_d = regular_module_category(fusion_d)
    b0 = deligne_to_bimod(m_d, fg, fh)
    return prod, b0, bimod_to_deligne(b0)


def solved_translation(prod, m_norm, a_el):
    f_map = prod.table[:, a_el]
    psi = m_norm.psi
    pulled = UnitCochain(2, m_norm.X, psi.root_order, psi.exponents[..., f_map])
    rhs = psi.inverse() * pulled
    lifted = rhs.root_order * prod.order
    d1 = differential_matrix(prod, m_norm.X, 1)
    vec = solve_mod(d1, (rhs.exponents.ravel() * prod.order) % lifted, lifted)
    assert vec is not None
    lam = UnitCochain(1, m_norm.X, lifted,
                      np.array(vec, dtype=np.int64).reshape(prod.order, -1))
    return functor_from_equivariant(f_map, lam, m_norm, m_norm)


@pytest.mark.parametrize("sg,sh", [(0, 0), (1, 0), (1, 1)])
def test_bimodule_functor_round_trips(sg, sh):
    prod, b0, m_norm = product_setting(sg, sh)

    k_id = identity_functor(m_norm)
    bf = deligne_to_bimodfun(k_id, b0, b0)
    assert validate_bimodfun(bf).ok
    assert bimodfun_to_deligne(bf) == k_id

    k_tr = solved_translation(prod, m_norm, 3)
    assert validate_modfun(k_tr).ok
    bf_tr = deligne_to_bimodfun(k_tr, b0, b0)
    assert validate_bimodfun(bf_tr).ok
    back_tr = bimodfun_to_deligne(bf_tr)
    assert back_tr == k_tr
    assert deligne_to_bimodfun(back_tr, b0, b0) == bf_tr

    eta = hom_basis(k_tr, k_tr)[0]
    assert validate_nat_trans(eta).ok


# ---------------------------------------------------------------------------
# validation failure reporting
# ---------------------------------------------------------------------------

def test_corrupted_coherence_entry_is_reported():
    bad_a = dict(IDENT.a)
    bad_a[(1, 0, 0)] = SMatrix.from_unit(Unit(4, 1))
    bad = ModuleFunctorData(M_REG, M_REG, IDENT.mult, bad_a)
    report = validate_modfun(bad)
    assert not report.ok
    assert any(f["condition"] == "cond_A" and 1 in f["tuple"]
               for f in report.failures)


def test_missing_coherence_entry_is_a_shape_error():
    trimmed = {k: v for k, v in IDENT.a.items() if k != (1, 0, 0)}
    with pytest.raises(ShapeMismatch):
        ModuleFunctorData(M_REG, M_REG, IDENT.mult, trimmed)
