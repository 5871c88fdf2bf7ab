"""Linear completion of partially specified Lie brackets.

A ``CompletionProblem`` fixes every bracket of a skeleton algebra except the
block of brackets between basis vectors of one designated index set S, and
asks for all ways to fill that block with values in a target subspace so that
the full tensor satisfies the Jacobi identity.

When the target subspace is disjoint from the span of S (checked, otherwise
the problem is rejected as nonlinearly coupled), every Jacobi component is an
affine function of the unknown coefficients: unknowns enter each bracket
chain at most once.  The stacked linear system is solved by singular value
decomposition, which is robust to the heavy redundancy among Jacobi
constraints; the solution set is returned as a particular least-squares
solution plus an orthonormal nullspace basis, or reported empty when even the
best completion leaves a residual above tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import JACOBI_TOL, LieAlgebra, Subspace, jacobi_residual
from .linalg import RANK_RTOL

__all__ = ["CompletionProblem", "CompletionSolution", "complete_bracket"]


@dataclass
class CompletionProblem:
    """Bracket completion data.

    Parameters
    ----------
    skeleton : LieAlgebra
        All brackets outside the unknown block are fixed; the unknown block
        entries must be zero in the skeleton tensor.
    unknown_indices : ordered index set S
        Brackets [b_a, b_b] with a, b in S are the unknowns.
    target : Subspace
        Subspace of the ambient algebra the unknown brackets must land in.
    """

    skeleton: LieAlgebra
    unknown_indices: tuple[int, ...]
    target: Subspace

    def __post_init__(self):
        self.unknown_indices = tuple(int(i) for i in self.unknown_indices)
        if len(set(self.unknown_indices)) != len(self.unknown_indices):
            raise ValueError("unknown index set contains duplicates")
        if self.target.ambient_dim != self.skeleton.dim:
            raise ValueError("target subspace lives in the wrong ambient space")

    @property
    def pairs(self) -> list[tuple[int, int]]:
        s = self.unknown_indices
        return [(s[a], s[b]) for a in range(len(s)) for b in range(a + 1, len(s))]


@dataclass
class CompletionSolution:
    """Affine solution space of a completion problem.

    ``particular`` and the rows of ``homogeneous`` are coefficient arrays of
    shape (n_pairs, target_dim): entry [p, a] multiplies target basis vector a
    in the bracket of unknown pair p (ordered as ``problem.pairs``).
    """

    problem: CompletionProblem
    particular: np.ndarray
    homogeneous: np.ndarray
    residual: float
    empty: bool
    singular_values: np.ndarray

    @property
    def nullity(self) -> int:
        return self.homogeneous.shape[0]

    def coefficients(self, weights=None) -> np.ndarray:
        u = np.array(self.particular)
        if weights is not None:
            w = np.atleast_1d(np.asarray(weights, dtype=float))
            if w.shape != (self.nullity,):
                raise ValueError("one weight per homogeneous basis element expected")
            u += np.tensordot(w, self.homogeneous, axes=1)
        return u

    def realize(self, weights=None) -> LieAlgebra:
        """Substitute a point of the solution space back into the skeleton."""
        return _substitute(self.problem, self.coefficients(weights))


def _substitute(problem: CompletionProblem, coeffs: np.ndarray) -> LieAlgebra:
    alg = problem.skeleton
    t = problem.target.basis
    c = np.array(alg.c)
    for p, (a, b) in enumerate(problem.pairs):
        v = t @ coeffs[p]
        c[a, b, :] += v
        c[b, a, :] -= v
    return LieAlgebra(c, alg.inner_product, alg.labels, alg.notes)


def _candidate_triples(c: np.ndarray, s: frozenset[int]) -> list[tuple[int, int, int]]:
    """Basis triples whose Jacobi expansion can touch an unknown bracket."""
    d = c.shape[0]
    out = []
    s_arr = sorted(s)
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(j + 1, d):
                trip = (i, j, k)
                hits = sum(1 for t in trip if t in s)
                if hits >= 2:
                    out.append(trip)
                elif hits == 1:
                    # one index in S: an unknown appears only through the
                    # S-components of the fixed bracket of the other two
                    others = [t for t in trip if t not in s]
                    if np.abs(c[others[0], others[1], s_arr]).max(initial=0.0) > 0.0:
                        out.append(trip)
    return out


def complete_bracket(problem: CompletionProblem, tol: float = JACOBI_TOL) -> CompletionSolution:
    """Solve for all Jacobi-compatible fillings of the unknown block.

    Returns a ``CompletionSolution``; an empty solution set (no filling meets
    the tolerance) is a valid outcome reported through ``empty=True``, not an
    exception.  A problem whose target overlaps the unknown coordinate span
    is rejected (the Jacobi system would be quadratic in the unknowns).
    """
    alg = problem.skeleton
    d = alg.dim
    s = frozenset(problem.unknown_indices)
    t = problem.target.basis
    q = t.shape[1]
    pairs = problem.pairs
    npairs = len(pairs)
    nunk = npairs * q
    pair_index = {}
    for p, (a, b) in enumerate(pairs):
        pair_index[(a, b)] = (p, 1.0)
        pair_index[(b, a)] = (p, -1.0)

    if np.abs(t[sorted(s), :]).max(initial=0.0) > 0.0:
        raise ValueError("nonlinear unknown coupling: target meets the unknown coordinate span")
    if np.abs(alg.c[np.ix_(sorted(s), sorted(s))]).max(initial=0.0) > 0.0:
        raise ValueError("skeleton already fixes brackets inside the unknown block")
    if nunk == 0:
        res = jacobi_residual(alg)
        return CompletionSolution(problem, np.zeros((0, q)), np.zeros((0, 0, q)), res,
                                  res >= tol, np.zeros(0))

    # [t_alpha, b_z] for every target basis vector, rows indexed by z
    ad_t = np.einsum("ma,mzl->azl", t, alg.c)

    c = alg.c
    rows_a: list[np.ndarray] = []
    rows_b: list[np.ndarray] = []
    s_arr = sorted(s)
    for trip in _candidate_triples(c, s):
        block = np.zeros((nunk, d))
        fixed = np.zeros(d)
        for (x, y, z) in ((trip[0], trip[1], trip[2]),
                          (trip[1], trip[2], trip[0]),
                          (trip[2], trip[0], trip[1])):
            key = pair_index.get((x, y))
            if key is not None:
                # [[b_x, b_y], b_z] with (x, y) unknown
                p, sign = key
                block[p * q:(p + 1) * q, :] += sign * ad_t[:, z, :]
            else:
                # fixed bracket first; its S-components then hit unknown pairs
                fixed += np.einsum("m,ml->l", c[x, y, :], c[:, z, :])
                if z in s:
                    for m in s_arr:
                        cm = c[x, y, m]
                        if cm != 0.0 and m != z:
                            p, sign = pair_index[(m, z)]
                            block[p * q:(p + 1) * q, :] += cm * sign * t.T
        keep = np.abs(block).max(axis=0) + np.abs(fixed) > 0.0
        if np.any(keep):
            rows_a.append(block[:, keep].T)
            rows_b.append(-fixed[keep])

    if rows_a:
        a_mat = np.vstack(rows_a)
        b_vec = np.concatenate(rows_b)
    else:
        a_mat = np.zeros((0, nunk))
        b_vec = np.zeros(0)

    if a_mat.shape[0] < nunk:
        a_mat = np.vstack([a_mat, np.zeros((nunk - a_mat.shape[0], nunk))])
        b_vec = np.concatenate([b_vec, np.zeros(nunk - len(b_vec))])

    u_svd, sv, vt = np.linalg.svd(a_mat, full_matrices=False)
    cutoff = RANK_RTOL * sv[0] if sv.size and sv[0] > 0 else 0.0
    inv = np.where(sv > cutoff, 1.0 / np.where(sv > 0, sv, 1.0), 0.0)
    u_part = vt.T @ (inv * (u_svd.T @ b_vec))
    null_rows = vt[sv <= cutoff] if sv.size else np.eye(nunk)

    # canonical orientation: largest-magnitude coefficient positive
    basis = []
    for row in null_rows:
        j = int(np.argmax(np.abs(row)))
        basis.append(row if row[j] >= 0 else -row)
    homogeneous = (np.array(basis).reshape(-1, npairs, q)
                   if basis else np.zeros((0, npairs, q)))

    particular = u_part.reshape(npairs, q)
    solution = CompletionSolution(problem, particular, homogeneous, 0.0, False, sv)
    res = jacobi_residual(solution.realize())
    solution.residual = res
    solution.empty = res >= tol
    return solution
