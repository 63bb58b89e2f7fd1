#pragma once

#include "vna/cmatrix.hpp"
#include "vna/tolerance.hpp"

#include <cstdint>
#include <vector>

namespace vna {

// Pivot count of a row echelon reduction with partial pivoting. Pivots of
// magnitude <= rank_eps * max(1, largest entry magnitude) count as zero.
int numerical_rank(const CMatrix& m, const Tolerance& tol = {});

// True iff m is self-adjoint and idempotent within tol.eps. Throws on
// non-square input.
bool is_projection(const CMatrix& m, const Tolerance& tol = {});

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // unitary; column j is the eigenvector of values[j]
};

// Cyclic Jacobi diagonalization of a Hermitian matrix. The input is
// symmetrized first so representation noise does not accumulate.
EigenDecomposition hermitian_eigen(const CMatrix& a);

// Pairwise-orthogonal projections with sum = identity such that every input
// is a scalar combination of them, computed by recursive eigenspace
// splitting. Inputs must be dim x dim, normal within tol.eps and pairwise
// commuting within tol.eps (violations name the offending input). dim is
// explicit so the empty list yields {identity}. Output order is canonical:
// ascending lexicographic in the joint eigenvalue chain.
std::vector<CMatrix> joint_spectral_atoms(int dim, const std::vector<CMatrix>& ms,
                                          const Tolerance& tol = {});

// Orthonormal basis of range(p) for a projection p of known rank >= 1, as
// the columns of an n x rank matrix. Pivoted modified Gram-Schmidt over the
// columns of p, re-orthogonalized.
CMatrix orthonormal_range_basis(const CMatrix& p, int rank);

// Unitary whose first `rank` columns span range(p) and whose remaining
// columns span ker(p).
CMatrix projection_frame(const CMatrix& p, int rank);

// Deterministic pseudo-Haar unitary: a matrix of standard complex Gaussians
// orthonormalized by modified Gram-Schmidt. Identical (n, seed) pairs give
// bit-identical output; ||u* u - I||_max <= 1e-10.
CMatrix random_unitary(int n, std::uint64_t seed);

// u diag(1^r, 0^(n-r)) u* for u = random_unitary(n, seed). Throws when r is
// outside [0, n].
CMatrix random_projection(int n, int r, std::uint64_t seed);

// Unitary u with u p u* = q for projections p, q of equal size and equal
// numerical rank, built by concatenating orthonormal bases of range and
// kernel on each side. Throws on rank mismatch.
CMatrix range_matching_unitary(const CMatrix& p, const CMatrix& q, const Tolerance& tol = {});

}  // namespace vna
