"""Twisted group cochains with root-of-unity values.

A degree-n cochain stores an integer exponent table e(g_1..g_n, x) mod N,
representing the function (g_1,...,g_n) -> zeta_N^{e(...)}(x) with values in
Map(X, mu_N).  The differential is an alternating Z-linear combination of
index maps, so every cohomological condition becomes an exact linear solve
modulo N through the Smith normal form.
"""
from __future__ import annotations

from functools import lru_cache
from math import lcm
from typing import Optional, Sequence

import numpy as np

from .algebra import (
    FiniteGroup,
    GSet,
    direct_product,
    is_transitive,
    point_gset,
    solve_mod,
    stabilizer,
)
from .errors import (
    CarrierNotCosetSpace,
    DegreeMismatch,
    NotNormalizable,
)

__all__ = [
    "UnitCochain",
    "differential",
    "differential_matrix",
    "is_cocycle",
    "is_coboundary",
    "cohomologous",
    "normalize",
    "omega_cyclic",
    "shapiro_restrict",
    "inflate",
    "deligne_omega",
    "omega_bar",
]


class UnitCochain:
    """An n-cochain with values in Map(X, mu_N), stored as exponents mod N.

    ``exponents`` has one axis per argument slot plus a final carrier axis:
    shape (|G_1|, ..., |G_n|, |X|).  Slots normally all range over
    carrier.group; mixed-slot cochains (used for two-sided structures) pass
    ``slot_groups`` explicitly.
    """

    __slots__ = ("degree", "carrier", "root_order", "exponents", "slot_groups")

    def __init__(self, degree: int, carrier: GSet, root_order: int, exponents,
                 slot_groups: Optional[tuple[FiniteGroup, ...]] = None) -> None:
        if degree < 0:
            raise ValueError("degree must be >= 0")
        if root_order < 1:
            raise ValueError("root order must be >= 1")
        if slot_groups is None:
            slot_groups = (carrier.group,) * degree
        slot_groups = tuple(slot_groups)
        if len(slot_groups) != degree:
            raise ValueError("one slot group per degree required")
        exps = np.asarray(exponents, dtype=np.int64) % root_order
        want = tuple(g.order for g in slot_groups) + (carrier.size,)
        if exps.shape != want:
            raise ValueError(f"exponent table has shape {exps.shape}, expected {want}")
        exps.setflags(write=False)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "root_order", root_order)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "slot_groups", slot_groups)

    def __setattr__(self, name, value):
        raise AttributeError("UnitCochain is immutable")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def trivial(cls, degree: int, carrier: GSet, root_order: int,
                slot_groups: Optional[tuple[FiniteGroup, ...]] = None) -> "UnitCochain":
        groups = slot_groups if slot_groups is not None else (carrier.group,) * degree
        shape = tuple(g.order for g in groups) + (carrier.size,)
        return cls(degree, carrier, root_order, np.zeros(shape, dtype=np.int64),
                   slot_groups=groups)

    # -- basic structure -----------------------------------------------------

    @property
    def group(self) -> FiniteGroup:
        return self.carrier.group

    @property
    def normalized(self) -> bool:
        """True when every entry with an identity argument is trivial."""
        for i, g in enumerate(self.slot_groups):
            if np.take(self.exponents, g.identity, axis=i).any():
                return False
        return True

    def is_trivial(self) -> bool:
        return not self.exponents.any()

    def exponent(self, args: Sequence[int]) -> int:
        args = tuple(int(a) for a in args)
        if len(args) == self.degree and self.carrier.size == 1:
            args = args + (0,)
        if len(args) != self.degree + 1:
            raise ValueError("expected one index per slot plus carrier point")
        return int(self.exponents[args])

    def value(self, args: Sequence[int]):
        from .scalar import Unit
        return Unit(self.root_order, self.exponent(args))

    def _same_shape(self, other: "UnitCochain") -> bool:
        return (self.degree == other.degree
                and self.carrier == other.carrier
                and self.slot_groups == other.slot_groups)

    def with_root_order(self, root_order: int) -> "UnitCochain":
        """The same cochain viewed in mu_root_order (a multiple of the root)."""
        if root_order % self.root_order != 0:
            raise ValueError("new root order must be a multiple of the old")
        scale = root_order // self.root_order
        return UnitCochain(self.degree, self.carrier, root_order,
                           self.exponents * scale, slot_groups=self.slot_groups)

    # -- pointwise group structure --------------------------------------------

    def __mul__(self, other: "UnitCochain") -> "UnitCochain":
        if not isinstance(other, UnitCochain):
            return NotImplemented
        if not self._same_shape(other):
            raise DegreeMismatch("cochains have different shapes")
        n = lcm(self.root_order, other.root_order)
        exps = (self.exponents * (n // self.root_order)
                + other.exponents * (n // other.root_order)) % n
        return UnitCochain(self.degree, self.carrier, n, exps,
                           slot_groups=self.slot_groups)

    def inverse(self) -> "UnitCochain":
        return UnitCochain(self.degree, self.carrier, self.root_order,
                           (-self.exponents) % self.root_order,
                           slot_groups=self.slot_groups)

    def __pow__(self, k: int) -> "UnitCochain":
        return UnitCochain(self.degree, self.carrier, self.root_order,
                           (self.exponents * int(k)) % self.root_order,
                           slot_groups=self.slot_groups)

    def __eq__(self, other):
        if not isinstance(other, UnitCochain):
            return NotImplemented
        if not self._same_shape(other):
            return False
        n = lcm(self.root_order, other.root_order)
        return np.array_equal(
            (self.exponents * (n // self.root_order)) % n,
            (other.exponents * (n // other.root_order)) % n)

    def __repr__(self):
        return (f"UnitCochain(degree={self.degree}, root_order={self.root_order}, "
                f"carrier_size={self.carrier.size})")

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "root_order": self.root_order,
            "exponents": self.exponents.tolist(),
        }


# ---------------------------------------------------------------------------
# the differential
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def _diff_terms(group: FiniteGroup, carrier: GSet, degree: int):
    """Signed index maps building d on degree-`degree` exponent tables.

    Each term is (sign, flat index array): output position (g_1..g_{n+1}, x)
    reads the input at the given flat index.  The first term uses the
    coefficient action (g . f)(x) = f(g^-1 . x); the middle terms fuse
    adjacent arguments; the last drops the final argument.
    """
    n = degree
    m = group.order
    size = carrier.size
    shape_out = (m,) * (n + 1) + (size,)
    shape_in = (m,) * n + (size,)
    idx = np.indices(shape_out)
    args = [idx[i] for i in range(n + 1)]
    x = idx[n + 1]
    act_inv = carrier.action[group.inverse]
    terms = []
    # e(g_2..g_{n+1}, g_1^-1 . x)
    coords = tuple(args[1:]) + (act_inv[args[0], x],)
    terms.append((1, np.ravel_multi_index(coords, shape_in).ravel()))
    for i in range(1, n + 1):
        fused = group.table[args[i - 1], args[i]]
        coords = tuple(args[:i - 1]) + (fused,) + tuple(args[i + 1:]) + (x,)
        terms.append(((-1) ** i, np.ravel_multi_index(coords, shape_in).ravel()))
    coords = tuple(args[:n]) + (x,)
    terms.append(((-1) ** (n + 1), np.ravel_multi_index(coords, shape_in).ravel()))
    return shape_out, terms


def _differential_raw(exponents: np.ndarray, group: FiniteGroup,
                      carrier: GSet, degree: int) -> np.ndarray:
    """The alternating sum over Z (no reduction mod N)."""
    shape_out, terms = _diff_terms(group, carrier, degree)
    flat = exponents.ravel()
    out = np.zeros(int(np.prod(shape_out)), dtype=np.int64)
    for sign, index in terms:
        out += sign * flat[index]
    return out.reshape(shape_out)


def differential(eta: UnitCochain) -> UnitCochain:
    """d(eta): the degree n+1 cochain of the alternating-sum exponents mod N."""
    if any(g != eta.group for g in eta.slot_groups):
        raise DegreeMismatch("differential requires all slots over the carrier group")
    raw = _differential_raw(eta.exponents, eta.group, eta.carrier, eta.degree)
    return UnitCochain(eta.degree + 1, eta.carrier, eta.root_order, raw)


def differential_matrix(group: FiniteGroup, carrier: GSet, degree: int) -> np.ndarray:
    """Integer matrix of d on flattened degree-`degree` exponent vectors."""
    shape_out, terms = _diff_terms(group, carrier, degree)
    rows = int(np.prod(shape_out))
    cols = group.order ** degree * carrier.size
    mat = np.zeros((rows, cols), dtype=np.int64)
    r = np.arange(rows)
    for sign, index in terms:
        np.add.at(mat, (r, index), sign)
    return mat


# ---------------------------------------------------------------------------
# cocycle / coboundary tests
# ---------------------------------------------------------------------------

def is_cocycle(eta: UnitCochain) -> bool:
    return differential(eta).is_trivial()


def is_coboundary(eta: UnitCochain) -> bool:
    """Whether eta = d(mu) for some mu, tested in mu_{N*|G|}.

    The exponents are lifted by the factor |G| before solving; cohomology with
    circle coefficients is |G|-torsion, so obstructions that vanish in the
    circle vanish at the lifted root order.
    """
    if eta.degree == 0:
        return eta.is_trivial()
    if any(g != eta.group for g in eta.slot_groups):
        raise DegreeMismatch("coboundary test requires slots over the carrier group")
    order = eta.group.order
    lifted = eta.root_order * order
    mat = differential_matrix(eta.group, eta.carrier, eta.degree - 1)
    rhs = (eta.exponents.ravel() * order) % lifted
    return solve_mod(mat, rhs, lifted) is not None


def cohomologous(eta: UnitCochain, other: UnitCochain) -> bool:
    if not eta._same_shape(other):
        raise DegreeMismatch("cochains have different shapes")
    return is_coboundary(eta * other.inverse())


def normalize(eta: UnitCochain) -> UnitCochain:
    """A normalized cochain eta * d(mu) in the same cohomology class.

    Requires d(eta) normalized; mu is found by solving the subsystem of the
    degree n-1 differential on the coordinates that contain an identity
    argument.  Already-normalized input is returned unchanged.
    """
    if eta.normalized:
        return eta
    if any(g != eta.group for g in eta.slot_groups):
        raise DegreeMismatch("normalize requires slots over the carrier group")
    n = eta.degree
    group = eta.group
    if n == 0:
        return eta  # no argument slots: vacuously normalized (unreachable)
    mat = differential_matrix(group, eta.carrier, n - 1)
    shape_out = eta.exponents.shape
    mask = np.zeros(shape_out, dtype=bool)
    for i in range(n):
        sl = [slice(None)] * (n + 1)
        sl[i] = group.identity
        mask[tuple(sl)] = True
    flat_mask = mask.ravel()
    rhs = (-eta.exponents.ravel()[flat_mask]) % eta.root_order
    mu_vec = solve_mod(mat[flat_mask], rhs, eta.root_order)
    if mu_vec is None:
        raise NotNormalizable(
            "no normalizing coboundary exists at this root order")
    shape_mu = (group.order,) * (n - 1) + (eta.carrier.size,)
    mu = UnitCochain(n - 1, eta.carrier, eta.root_order,
                     np.array(mu_vec, dtype=np.int64).reshape(shape_mu))
    result = eta * differential(mu)
    assert result.normalized
    return result


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def omega_cyclic(n: int, s: int) -> UnitCochain:
    """The degree-3 cochain on Z/n with exponent s*k*((l+m) - (l+m mod n))/n.

    A normalized 3-cocycle at root order n; s runs over Z/n.
    """
    from .algebra import cyclic_group
    if n < 1:
        raise ValueError("n must be >= 1")
    group = cyclic_group(n)
    k, l, m = np.indices((n, n, n))
    exps = (s * k * ((l + m) // n)) % n
    return UnitCochain(3, point_gset(group), n, exps[..., None])


def shapiro_restrict(eta: UnitCochain) -> UnitCochain:
    """Restriction to the stabilizer of the base point of a transitive carrier.

    For carrier G/H with base point index 0 this is eta_tilde(h_1..h_n) :=
    eta(h_1,...,h_n, H), a cochain of H with point carrier.
    """
    if any(g != eta.group for g in eta.slot_groups):
        raise DegreeMismatch("restriction requires slots over the carrier group")
    if not is_transitive(eta.carrier):
        raise CarrierNotCosetSpace("carrier is not a transitive G-set")
    sub = stabilizer(eta.carrier, 0)
    h_group = sub.to_group()
    emb = np.array(sub.elements, dtype=np.int64)
    exps = eta.exponents[np.ix_(*([emb] * eta.degree), np.array([0]))]
    return UnitCochain(eta.degree, point_gset(h_group), eta.root_order, exps)


def inflate(eta: UnitCochain, carrier: GSet) -> UnitCochain:
    """Copy a point-carrier cochain across all points of a larger carrier."""
    if eta.carrier.size != 1:
        raise ValueError("inflate expects a point-carrier cochain")
    if carrier.group != eta.group:
        raise ValueError("carrier group mismatch")
    exps = np.repeat(eta.exponents, carrier.size, axis=-1)
    return UnitCochain(eta.degree, carrier, eta.root_order, exps,
                       slot_groups=eta.slot_groups)


def deligne_omega(omega_g: UnitCochain, omega_h: UnitCochain) -> UnitCochain:
    """The product 3-cocycle on G x H.

    ((g1,h1),(g2,h2),(g3,h3)) -> omega_G(g1,g2,g3) * omega_H(h3^-1,h2^-1,h1^-1)^-1
    at the lcm root order, on a point carrier.
    """
    if omega_g.degree != 3 or omega_h.degree != 3:
        raise DegreeMismatch("product cocycle requires degree 3 inputs")
    if omega_g.carrier.size != 1 or omega_h.carrier.size != 1:
        raise ValueError("product cocycle requires point carriers")
    g_grp, h_grp = omega_g.group, omega_h.group
    prod = direct_product(g_grp, h_grp)
    n = lcm(omega_g.root_order, omega_h.root_order)
    k = prod.order
    ga, ha = np.divmod(np.arange(k), h_grp.order)
    eg = omega_g.exponents[..., 0]
    inv = h_grp.inverse
    eh = omega_h.exponents[np.ix_(inv, inv, inv)][..., 0].transpose(2, 1, 0)
    big = (eg[np.ix_(ga, ga, ga)] * (n // omega_g.root_order)
           - eh[np.ix_(ha, ha, ha)] * (n // omega_h.root_order)) % n
    return UnitCochain(3, point_gset(prod), n, big[..., None])


def omega_bar(omega: UnitCochain) -> UnitCochain:
    """The 3-cocycle (g,h,k) -> omega(k^-1, h^-1, g^-1)^-1 on the same group."""
    if omega.degree != 3:
        raise DegreeMismatch("expected a degree 3 cochain")
    if omega.carrier.size != 1:
        raise ValueError("expected a point carrier")
    inv = omega.group.inverse
    flipped = omega.exponents[np.ix_(inv, inv, inv)][..., 0].transpose(2, 1, 0)
    exps = (-flipped) % omega.root_order
    return UnitCochain(3, omega.carrier, omega.root_order, exps[..., None])
