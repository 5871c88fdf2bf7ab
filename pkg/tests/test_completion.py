import numpy as np
import pytest

from liecoh.algebra import (
    LieAlgebra,
    Subspace,
    abelian,
    jacobi_residual,
    killing_form,
    signature,
)
from liecoh.completion import CompletionProblem, complete_bracket
from liecoh.spaces import clifford_completion_problem

MU = 1.0 / np.sqrt(2.0)


def test_zero_skeleton_admits_zero_completion():
    skel = abelian(5)
    prob = CompletionProblem(skel, (3, 4), Subspace.coordinate(5, [0, 1, 2]))
    sol = complete_bracket(prob)
    assert not sol.empty
    assert np.abs(sol.particular).max(initial=0.0) < 1e-12
    # with everything else zero, any filling is two-step nilpotent: full freedom
    assert sol.nullity == 1 * 3
    assert jacobi_residual(sol.realize()) < 1e-12


def test_nonlinear_coupling_rejected():
    skel = abelian(4)
    # target meets the unknown coordinate span
    prob = CompletionProblem(skel, (1, 2), Subspace.coordinate(4, [0, 2]))
    with pytest.raises(ValueError, match="nonlinear"):
        complete_bracket(prob)


def test_prefilled_unknown_block_rejected():
    c = np.zeros((3, 3, 3))
    c[1, 2, 0] = 1.0
    c[2, 1, 0] = -1.0
    prob = CompletionProblem(LieAlgebra(c), (1, 2), Subspace.coordinate(3, [0]))
    with pytest.raises(ValueError, match="already fixes"):
        complete_bracket(prob)


def test_heisenberg_family_in_nilpotent_solution_space():
    """lam = mu = 0 skeleton: the J_Z line <Z.X|Y> is a valid filling."""
    prob = clifford_completion_problem(7, 0.0, 0.0)
    sol = complete_bracket(prob)
    assert not sol.empty
    assert sol.nullity == 1
    # build the expected coefficient vector for [X, Y] = sum_i <Gamma_i X|Y> e_i
    from liecoh.clifford import spin_module

    gam = spin_module(7).gammas
    t = prob.target.basis
    m1_cols = [np.argmax(t[:, a]) for a in range(t.shape[1])]
    expected = np.zeros((len(prob.pairs), t.shape[1]))
    s = prob.unknown_indices
    for p, (wa, wb) in enumerate(prob.pairs):
        a, b = s.index(wa), s.index(wb)
        for col, amb in enumerate(m1_cols):
            local = amb - (prob.skeleton.dim - 8 - 7)  # m1 sits before m2
            if 0 <= local < 7:
                expected[p, col] = gam[local][b, a]
    expected_flat = expected.reshape(-1)
    expected_flat = expected_flat / np.linalg.norm(expected_flat)
    basis = sol.homogeneous.reshape(sol.nullity, -1)
    proj = basis @ expected_flat
    # expected direction lies in the span of the homogeneous basis
    assert abs(np.linalg.norm(proj) - 1.0) < 1e-9
    # and the realized algebra is a valid two-step nilpotent bracket
    realized = sol.realize(np.ones(sol.nullity))
    assert jacobi_residual(realized) < 1e-12


def test_n7_completion_fingerprints():
    sol = complete_bracket(clifford_completion_problem(7, 1.0, MU))
    assert sol.nullity == 1 and not sol.empty
    w = np.ones(1)
    sigs = {signature(killing_form(sol.realize(s * w))) for s in (1.0, -1.0)}
    assert sigs == {(0, 36, 0), (8, 28, 0)}


def test_n6_completion_only_abelian():
    sol = complete_bracket(clifford_completion_problem(6, 1.0, MU))
    assert sol.nullity == 0
    assert not sol.empty
    assert np.abs(sol.particular).max(initial=0.0) < 1e-12


@pytest.mark.parametrize("n,weight,expected_sig", [
    (2, -1.0, (0, 10, 0)),   # compact symplectic filling
    (2, 1.0, (4, 6, 0)),     # its noncompact dual
    (3, -1.0, (0, 13, 0)),
    (3, 1.0, (4, 9, 0)),
])
def test_small_rank_completions(n, weight, expected_sig):
    sol = complete_bracket(clifford_completion_problem(n, 1.0, MU))
    assert sol.nullity == 1
    alg = sol.realize(np.array([weight]))
    assert jacobi_residual(alg) < 1e-9
    assert signature(killing_form(alg)) == expected_sig


def test_completion_soundness_every_returned_point():
    sol = complete_bracket(clifford_completion_problem(7, 1.0, MU))
    rng = np.random.default_rng(11)
    for _ in range(5):
        w = rng.standard_normal(sol.nullity)
        assert jacobi_residual(sol.realize(w)) < 1e-9


def test_completion_completeness_perturbations():
    """Perturbing a solution off the solution space breaks jacobi."""
    sol = complete_bracket(clifford_completion_problem(7, 1.0, MU))
    basis = sol.homogeneous.reshape(sol.nullity, -1)
    base = sol.coefficients(np.ones(sol.nullity)).reshape(-1)
    rng = np.random.default_rng(0x5EED)
    for _ in range(100):
        r = rng.standard_normal(base.size)
        r -= basis.T @ (basis @ r)
        r *= 1e-2 / np.linalg.norm(r)
        coeffs = (base + r).reshape(sol.particular.shape)
        from liecoh.completion import _substitute

        perturbed = _substitute(sol.problem, coeffs)
        assert jacobi_residual(perturbed) > 1e-6
