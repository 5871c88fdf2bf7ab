"""Explicit matrix models: rotation, unitary, symplectic and spin actions.

Complex and quaternionic modules are realified with stacked real coordinates:
C^n becomes (Re v, Im v), H^n becomes n blocks of (1, i, j, k) components.
All the transitive-sphere actions and the reducible two-block actions used by
the catalog are produced here as ``Representation`` values; the underlying
algebras carry structure constants recomputed from the matrices themselves,
so homomorphism residuals are round-off only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import LieAlgebra, direct_sum, structure_constants_from_matrices
from .clifford import (
    CliffordModule,
    quaternion_units,
    so_structure_tensor,
    so_vector_matrices,
    spin_algebra,
    spin_module,
    spin_plus_one,
)
from .reps import Representation, isotropy_subalgebra

__all__ = [
    "CliffordIsotropy",
    "ReducibleAction",
    "algebra_of_matrices",
    "clifford_isotropy",
    "g2_seven",
    "quaternion_left",
    "quaternion_right",
    "realify_complex",
    "so_standard",
    "sp_sp1",
    "sp_standard",
    "sp_u1",
    "spin7_eight",
    "spin9_sixteen",
    "su_standard",
    "reducible_row",
    "u_standard",
]


def algebra_of_matrices(matrices, labels=None) -> tuple[LieAlgebra, Representation]:
    """Algebra spanned by the matrices, together with its defining action."""
    mats = np.asarray(matrices, dtype=float)
    alg = LieAlgebra(structure_constants_from_matrices(mats), labels=labels)
    return alg, Representation(alg, mats)


# ---------------------------------------------------------------------------
# realification helpers
# ---------------------------------------------------------------------------


def realify_complex(m: np.ndarray) -> np.ndarray:
    """Real (2n, 2n) matrix of a complex one on stacked (Re, Im) coordinates."""
    a, b = np.real(m), np.imag(m)
    return np.block([[a, -b], [b, a]])


def quaternion_left(q) -> np.ndarray:
    """4x4 matrix of left multiplication by q = (a, b, c, d)."""
    a, b, c, d = q
    return np.array([
        [a, -b, -c, -d],
        [b, a, -d, c],
        [c, d, a, -b],
        [d, -c, b, a],
    ])


def quaternion_right(q) -> np.ndarray:
    """4x4 matrix of right multiplication by q = (a, b, c, d)."""
    a, b, c, d = q
    return np.array([
        [a, -b, -c, -d],
        [b, a, d, -c],
        [c, -d, a, b],
        [d, c, -b, a],
    ])


def su_basis(n: int) -> list[np.ndarray]:
    """Complex basis of su(n): off-diagonal pairs then diagonal torus.

    Orthogonal with a common norm for the trace form Re tr(X Y*), so the
    structure constants in this basis are totally antisymmetric.
    """
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[a, b], e[b, a] = 1.0, -1.0
            out.append(e)
            f = np.zeros((n, n), dtype=complex)
            f[a, b] = f[b, a] = 1.0j
            out.append(f)
    for a in range(1, n):
        h = np.zeros((n, n), dtype=complex)
        for b in range(a):
            h[b, b] = 1.0j
        h[a, a] = -a * 1.0j
        out.append(h * np.sqrt(2.0 / (a * (a + 1))))
    return out


def sp_quaternion_basis(n: int) -> list[np.ndarray]:
    """Basis of sp(n) as (n, n, 4) quaternion coefficient arrays."""
    out = []
    units = [(0.0, 1.0, 0.0, 0.0), (0.0, 0.0, 1.0, 0.0), (0.0, 0.0, 0.0, 1.0)]
    for a in range(n):
        for u in units:
            m = np.zeros((n, n, 4))
            m[a, a] = u
            out.append(m)
    for a in range(n):
        for b in range(a + 1, n):
            for u in [(1.0, 0.0, 0.0, 0.0)] + units:
                m = np.zeros((n, n, 4))
                m[a, b] = u
                m[b, a] = (-u[0], u[1], u[2], u[3])  # minus conjugate
                out.append(m)
    return out


def _realize_quaternionic(qmat: np.ndarray, unit_matrices: np.ndarray) -> np.ndarray:
    """Real operator of a quaternionic matrix, entries expanded in given units.

    ``unit_matrices`` holds the images of 1, i, j, k as real blocks; with the
    left-multiplication table this is the standard sp(n) action on H^n, with
    a commutant triple it is the action commuting with a Clifford module.
    """
    n = qmat.shape[0]
    blk = unit_matrices.shape[1]
    out = np.zeros((n * blk, n * blk))
    for a in range(n):
        for b in range(n):
            coeffs = qmat[a, b]
            if np.any(coeffs):
                out[a * blk:(a + 1) * blk, b * blk:(b + 1) * blk] = np.einsum(
                    "u,uij->ij", coeffs, unit_matrices)
    return out


_LEFT_UNITS = np.array([quaternion_left(q) for q in
                        ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))],
                       dtype=float)


# ---------------------------------------------------------------------------
# transitive sphere actions
# ---------------------------------------------------------------------------


def so_standard(n: int) -> Representation:
    alg = LieAlgebra(so_structure_tensor(n),
                     labels=tuple(f"L{i}{j}" for i in range(1, n + 1)
                                  for j in range(i + 1, n + 1)))
    return Representation(alg, so_vector_matrices(n))


def su_standard(n: int) -> Representation:
    mats = np.array([realify_complex(m) for m in su_basis(n)])
    return algebra_of_matrices(mats)[1]


def u_standard(n: int) -> Representation:
    mats = [realify_complex(m) for m in su_basis(n)]
    mats.append(realify_complex(1.0j * np.eye(n)))
    return algebra_of_matrices(np.array(mats))[1]


def sp_standard(n: int) -> Representation:
    mats = np.array([_realize_quaternionic(q, _LEFT_UNITS) for q in sp_quaternion_basis(n)])
    return algebra_of_matrices(mats)[1]


def _right_scalar_blocks(n: int, q) -> np.ndarray:
    """Right scalar multiplication on H^n (acts per block, commutes with sp(n))."""
    blk = quaternion_right(q)
    return np.kron(np.eye(n), blk)


def sp_sp1(n: int) -> Representation:
    """sp(n) + sp(1) on H^n: matrices on the left, unit scalars on the right."""
    mats = [_realize_quaternionic(q, _LEFT_UNITS) for q in sp_quaternion_basis(n)]
    # minus sign turns the right-multiplication antihomomorphism into an action
    for q in ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)):
        mats.append(-_right_scalar_blocks(n, q))
    return algebra_of_matrices(np.array(mats))[1]


def sp_u1(n: int) -> Representation:
    mats = [_realize_quaternionic(q, _LEFT_UNITS) for q in sp_quaternion_basis(n)]
    mats.append(-_right_scalar_blocks(n, (0, 1, 0, 0)))
    return algebra_of_matrices(np.array(mats))[1]


def spin7_eight() -> Representation:
    emb = spin_algebra(spin_module(7))
    return Representation(emb.algebra, emb.matrices)


def spin9_sixteen() -> Representation:
    alg, mats = spin_plus_one(spin_module(8))
    return Representation(alg, mats)


def g2_seven() -> Representation:
    """Stabilizer of a unit spinor in the spin(7) action, acting on R^7.

    The 14-dimensional isotropy subalgebra of the first standard spinor is
    computed inside the bivector coordinates of spin(7), then pushed to the
    7-dimensional vector representation.
    """
    emb = spin_algebra(spin_module(7))
    rep8 = Representation(emb.algebra, emb.matrices)
    psi = np.zeros(8)
    psi[0] = 1.0
    stab = isotropy_subalgebra(rep8, psi)
    vec = so_vector_matrices(7)
    mats = np.einsum("am,aij->mij", stab.basis, vec)
    return algebra_of_matrices(mats)[1]


# ---------------------------------------------------------------------------
# reducible two-block actions
# ---------------------------------------------------------------------------


@dataclass
class CliffordIsotropy:
    """Isotropy data of the Clifford constructions.

    k0 is so(n) acting on m1 = R^n (rotations) and on the module copies by
    halved bivectors; k1 is the commutant sp(copies) acting on the module
    copies only.
    """

    n: int
    copies: int
    module: CliffordModule
    algebra: LieAlgebra
    m1_matrices: np.ndarray
    m2_matrices: np.ndarray
    k0_dim: int
    k1_dim: int


def clifford_isotropy(n: int, copies: int = 1, m1_weight: float = 1.0) -> CliffordIsotropy:
    if m1_weight != 1.0 and n != 2:
        raise ValueError("nontrivial circle weights only make sense for n = 2")
    module = spin_module(n)
    emb = spin_algebra(module)
    k0 = emb.algebra.dim
    m1_mats = [m1_weight * a for a in so_vector_matrices(n)]
    m2_mats = [np.kron(np.eye(copies), g) for g in emb.matrices]
    if n in (2, 3):
        units = quaternion_units(module)
        full_units = np.concatenate([np.eye(4)[None], units])
        qbasis = sp_quaternion_basis(copies)
        k1_real = [_realize_quaternionic(q, full_units) for q in qbasis]
        k1_alg = LieAlgebra(structure_constants_from_matrices(np.array(k1_real)))
        alg = direct_sum(emb.algebra, k1_alg)
        zero7 = np.zeros((n, n))
        m1_mats += [zero7.copy() for _ in k1_real]
        m2_mats += k1_real
        k1 = len(k1_real)
    else:
        if copies != 1:
            raise ValueError("multiple module copies are only wired for n = 2, 3")
        alg = emb.algebra
        k1 = 0
    return CliffordIsotropy(n, copies, module, alg,
                            np.array(m1_mats), np.array(m2_mats), k0, k1)


@dataclass
class ReducibleAction:
    """A two-block representation with its designated decomposition."""

    label: str
    rep: Representation
    m1: tuple[int, ...]
    m2: tuple[int, ...]


def _combine_blocks(alg: LieAlgebra, m1_mats: np.ndarray, m2_mats: np.ndarray,
                    label: str) -> ReducibleAction:
    d1, d2 = m1_mats.shape[1], m2_mats.shape[1]
    mats = np.zeros((alg.dim, d1 + d2, d1 + d2))
    mats[:, :d1, :d1] = m1_mats
    mats[:, d1:, d1:] = m2_mats
    rep = Representation(alg, mats)
    return ReducibleAction(label, rep, tuple(range(d1)), tuple(range(d1, d1 + d2)))


def unitary_determinant_action(n: int, det_power: int = 1) -> ReducibleAction:
    """u(n) on C + C^n: determinant power on the line, standard on the rest."""
    basis = su_basis(n) + [1.0j * np.eye(n)]
    m2 = np.array([realify_complex(m) for m in basis])
    alg = LieAlgebra(structure_constants_from_matrices(m2))
    m1 = np.array([realify_complex(np.array([[det_power * np.trace(m)]])) for m in basis])
    return _combine_blocks(alg, m1, m2, f"U({n}) det^{det_power} + C^{n}")


def reducible_row(row: int, copies: int = 1, weight: int = 1) -> ReducibleAction:
    """The five reducible cohomogeneity-two actions, numbered 1 to 5.

    Row 1 is the unitary determinant action; rows 2 to 5 come from the
    Clifford isotropy data with n = 2, 3, 6, 7.  ``weight`` scales the
    abelian factor's action on the plane in row 2 (2k in circle units).
    """
    if row == 1:
        return unitary_determinant_action(3, det_power=weight)
    n = {2: 2, 3: 3, 4: 6, 5: 7}[row]
    data = clifford_isotropy(n, copies=copies, m1_weight=float(weight))
    names = {2: f"U(1)Sp({copies}) on C+H^{copies}",
             3: f"Sp(1)Sp({copies}) on R3+H^{copies}",
             4: "Spin(6) on R6+R8", 5: "Spin(7) on R7+R8"}
    return _combine_blocks(data.algebra, data.m1_matrices, data.m2_matrices, names[row])
