#pragma once

// Small dense linear algebra helpers shared by the decomposition modules.

#include "lqss/krein.hpp"

namespace lqss::detail {

// Orthonormal basis of the null space of a; singular values <= tol count as zero.
CMatrix null_space(const CMatrix& a, double tol);

// Orthonormal basis of the column span of a, keeping singular values > tol.
CMatrix orthonormal_range(const CMatrix& a, double tol);

// Orthonormal basis of the leading `rank` left singular directions of a.
CMatrix leading_range(const CMatrix& a, Index rank);

// Minimum-norm solution of a x = b through the SVD pseudo-inverse.
CMatrix pinv_solve(const CMatrix& a, const CMatrix& b, double tol);

// Multiplies z by a unit phase so that its largest-magnitude entry is real
// and positive.  Returns the phase applied.
cd normalize_phase(Eigen::Ref<CVector> z);

// Given a basis of a Σ-conj invariant subspace on which the J-form is
// nondegenerate with signature (d, d), returns d vectors z_1..z_d with
// <z_i, z_j>_J = δ_ij and <z_i, C z_j>_J = 0, where C is krein_conjugate.
// The vectors are picked greedily along the most positive J-direction.
CMatrix paired_positive_basis(const CMatrix& span, double tol);

// Extends the J-orthonormal columns `partial` (all with J-norm +1, pairwise
// J-orthogonal together with their conjugates) to a full set of `k` columns.
CMatrix complete_paired_basis(const CMatrix& partial, Index k, double tol);

// Takagi factorization of a complex symmetric matrix: a = u diag(s) uᵀ with
// u unitary and s >= 0 in descending order.
struct Takagi {
  CMatrix u;
  RVector s;
};
Takagi takagi(const CMatrix& a);

}  // namespace lqss::detail
