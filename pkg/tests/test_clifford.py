import numpy as np
import pytest

from liecoh import clifford as cl
from liecoh.algebra import jacobi_residual, killing_form, signature
from liecoh.clifford import (
    CliffordElement,
    blade,
    clifford_multiply,
    complex_structure,
    generator,
    quaternion_units,
    scalar,
    spin_algebra,
    spin_module,
    spin_plus_one,
    vector_action,
)

MODULE_DIMS = {2: 4, 3: 4, 4: 8, 5: 8, 6: 8, 7: 8, 8: 16, 9: 32}


@pytest.mark.parametrize("n", sorted(MODULE_DIMS))
def test_gamma_systems_exact(n):
    m = spin_module(n)
    assert m.module_dim == MODULE_DIMS[n]
    eye = np.eye(m.module_dim)
    for i in range(n):
        gi = m.gammas[i]
        assert np.array_equal(gi, -gi.T)
        assert np.array_equal(gi.T @ gi, eye)
        assert set(np.unique(gi)) <= {-1.0, 0.0, 1.0}
        for j in range(i, n):
            anti = gi @ m.gammas[j] + m.gammas[j] @ gi
            target = -2.0 * eye if i == j else 0.0 * eye
            assert np.array_equal(anti, target)


def test_spin_module_range():
    with pytest.raises(ValueError):
        spin_module(1)
    with pytest.raises(ValueError):
        spin_module(10)


# ---------------------------------------------------------------------------
# blade arithmetic
# ---------------------------------------------------------------------------


def test_generator_squares_to_minus_one():
    e1 = generator(3, 1)
    assert clifford_multiply(e1, e1) == scalar(3, -1.0)


def test_generators_anticommute():
    e1, e2 = generator(3, 1), generator(3, 2)
    assert clifford_multiply(e1, e2).blades == {(1, 2): 1.0}
    assert clifford_multiply(e2, e1).blades == {(1, 2): -1.0}


def test_bivector_contraction_sign():
    # (e1 e2)(e2 e3) = -e1 e3: one contraction e2 e2 = -1, no transpositions
    out = clifford_multiply(blade(3, (1, 2)), blade(3, (2, 3)))
    assert out.blades == {(1, 3): -1.0}


def test_blade_index_validation():
    with pytest.raises(ValueError):
        CliffordElement(3, {(2, 1): 1.0})
    with pytest.raises(ValueError):
        CliffordElement(3, {(0,): 1.0})


def random_element(n, rng, max_blades=4):
    blades = {}
    for _ in range(rng.integers(1, max_blades + 1)):
        size = rng.integers(0, n + 1)
        idx = tuple(sorted(rng.choice(np.arange(1, n + 1), size=size, replace=False)))
        blades[idx] = float(rng.integers(-3, 4))
    return CliffordElement(n, blades)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_associativity_fuzz(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(250):
        a, b, c = (random_element(n, rng) for _ in range(3))
        left = clifford_multiply(clifford_multiply(a, b), c)
        right = clifford_multiply(a, clifford_multiply(b, c))
        assert left == right  # integer coefficients: exact comparison


def test_blade_product_matches_faithful_matrix_model():
    """Cross-check signs against the gamma realization where it is faithful."""
    m = spin_module(4)  # simple matrix algebra: a faithful check
    rng = np.random.default_rng(9)
    for _ in range(200):
        a, b = random_element(4, rng), random_element(4, rng)
        prod = clifford_multiply(a, b)
        lhs = m.element_matrix(a) @ m.element_matrix(b)
        assert np.array_equal(lhs, m.element_matrix(prod))


def test_module_homomorphism_on_bivectors():
    m = spin_module(5)
    for i in range(1, 6):
        for j in range(i + 1, 6):
            assert np.array_equal(m.blade_matrix((i, j)),
                                  m.gammas[i - 1] @ m.gammas[j - 1])


# ---------------------------------------------------------------------------
# spin algebras
# ---------------------------------------------------------------------------


def test_spin_algebra_n2_abelian():
    emb = spin_algebra(spin_module(2))
    assert emb.algebra.dim == 1
    assert np.all(emb.algebra.c == 0)


def test_spin_algebra_n3_negative_definite():
    emb = spin_algebra(spin_module(3))
    assert emb.algebra.dim == 3
    assert signature(killing_form(emb.algebra)) == (0, 3, 0)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_spin_algebra_dimension_and_jacobi(n):
    emb = spin_algebra(spin_module(n))
    assert emb.algebra.dim == n * (n - 1) // 2
    assert jacobi_residual(emb.algebra) < 1e-12
    if n >= 3:
        assert signature(killing_form(emb.algebra)) == (0, emb.algebra.dim, 0)


def test_spin_algebra_matrices_are_a_representation():
    emb = spin_algebra(spin_module(7))
    comm = np.einsum("aij,bjk->abik", emb.matrices, emb.matrices)
    comm = comm - comm.transpose(1, 0, 2, 3)
    expect = np.einsum("abm,mik->abik", emb.algebra.c, emb.matrices)
    assert np.array_equal(comm, expect)


def test_spin7_acts_irreducibly():
    from liecoh.reps import Representation, hom_space_dimension

    emb = spin_algebra(spin_module(7))
    rep = Representation(emb.algebra, emb.matrices)
    assert hom_space_dimension(rep, rep) == 1


def test_spin_plus_one_is_rotation_algebra():
    alg, mats = spin_plus_one(spin_module(8))
    assert alg.dim == 36
    assert signature(killing_form(alg)) == (0, 36, 0)
    comm = np.einsum("aij,bjk->abik", mats, mats)
    comm = comm - comm.transpose(1, 0, 2, 3)
    expect = np.einsum("abm,mik->abik", alg.c, mats)
    assert np.array_equal(comm, expect)


# ---------------------------------------------------------------------------
# vector action and commutant structures
# ---------------------------------------------------------------------------


def test_vector_action_zero_and_basis():
    m = spin_module(5)
    assert np.all(vector_action(m, np.zeros(5)) == 0)
    z = np.zeros(5)
    z[0] = 1.0
    g = vector_action(m, z)
    assert np.array_equal(g, m.gammas[0])
    assert np.array_equal(g @ g, -np.eye(m.module_dim))


def test_vector_action_squares_to_minus_norm():
    m = spin_module(7)
    rng = np.random.default_rng(2)
    for _ in range(10):
        z = rng.standard_normal(7)
        g = vector_action(m, z)
        assert np.allclose(g @ g, -(z @ z) * np.eye(8), atol=1e-12)
        assert np.allclose(g, -g.T)


def test_vector_action_length_mismatch():
    with pytest.raises(ValueError):
        vector_action(spin_module(3), np.ones(4))


@pytest.mark.parametrize("n", [2, 6])
def test_complex_structure_commutes_with_spin_action(n):
    m = spin_module(n)
    j = complex_structure(m)
    assert np.array_equal(j @ j, -np.eye(m.module_dim))
    emb = spin_algebra(m)
    for mat in emb.matrices:
        assert np.array_equal(j @ mat, mat @ j)


def test_complex_structure_wrong_n():
    with pytest.raises(ValueError):
        complex_structure(spin_module(3))


@pytest.mark.parametrize("n", [2, 3])
def test_quaternion_commutant_units(n):
    units = quaternion_units(spin_module(n))
    i, j, k = units
    assert np.array_equal(i @ j, k)
    for u in units:
        assert np.array_equal(u, -u.T)
