#include "lqss/detail/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lqss/errors.hpp"

namespace lqss::detail {

namespace {
Index rank_above(const RVector& sv, double tol) {
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++r;
  return r;
}
}  // namespace

CMatrix null_space(const CMatrix& a, double tol) {
  if (a.cols() == 0) return CMatrix(0, 0);
  if (a.rows() == 0) return CMatrix::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const Index r = rank_above(svd.singularValues(), tol);
  return svd.matrixV().rightCols(a.cols() - r);
}

CMatrix orthonormal_range(const CMatrix& a, double tol) {
  if (a.cols() == 0) return CMatrix(a.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU);
  const Index r = rank_above(svd.singularValues(), tol);
  return svd.matrixU().leftCols(r);
}

CMatrix leading_range(const CMatrix& a, Index rank) {
  if (rank == 0) return CMatrix(a.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(rank);
}

CMatrix pinv_solve(const CMatrix& a, const CMatrix& b, double tol) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& sv = svd.singularValues();
  const Index r = rank_above(sv, tol);
  const CMatrix ub = svd.matrixU().leftCols(r).adjoint() * b;
  CMatrix scaled = ub;
  for (Index i = 0; i < r; ++i) scaled.row(i) /= sv(i);
  return svd.matrixV().leftCols(r) * scaled;
}

cd normalize_phase(Eigen::Ref<CVector> z) {
  Index k = 0;
  z.cwiseAbs().maxCoeff(&k);
  const double m = std::abs(z(k));
  if (m == 0.0) return cd(1.0, 0.0);
  const cd phase = std::conj(z(k)) / m;
  z *= phase;
  z(k) = cd(z(k).real(), 0.0);
  return phase;
}

CMatrix paired_positive_basis(const CMatrix& span, double tol) {
  const Index dim = span.rows();
  CMatrix basis = orthonormal_range(span, 1e-12 * std::max(1.0, span.norm()));
  if (basis.cols() % 2 != 0) {
    std::ostringstream os;
    os << "J-nondegenerate subspace expected to have even dimension, got " << basis.cols();
    throw Error(ErrorKind::numerical, os.str());
  }
  const Index d = basis.cols() / 2;
  const CMatrix j = j_matrix(dim / 2);
  CMatrix out(dim, d);
  for (Index k = 0; k < d; ++k) {
    const CMatrix gram = basis.adjoint() * j * basis;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (gram + gram.adjoint()));
    const double mu = es.eigenvalues()(es.eigenvalues().size() - 1);
    if (mu <= tol) {
      std::ostringstream os;
      os << "subspace is J-degenerate: largest Gram eigenvalue " << mu;
      throw Error(ErrorKind::numerical, os.str());
    }
    CVector z = basis * es.eigenvectors().col(es.eigenvectors().cols() - 1) / std::sqrt(mu);
    normalize_phase(z);
    out.col(k) = z;
    if (k + 1 == d) break;
    const CVector w = krein_conjugate(z);
    // J-project the remaining span onto the complement of {z, Cz}
    CMatrix proj = basis;
    for (Index c = 0; c < proj.cols(); ++c) {
      const CVector x = proj.col(c);
      proj.col(c) = x - z * j_inner(z, x) + w * j_inner(w, x);
    }
    basis = leading_range(proj, basis.cols() - 2);
  }
  return out;
}

CMatrix complete_paired_basis(const CMatrix& partial, Index k, double tol) {
  const Index dim = 2 * k;
  const Index p = partial.cols();
  if (p == k) return partial;
  CMatrix both(dim, 2 * p);
  both << partial, krein_conjugate(partial);
  CMatrix complement;
  if (p == 0) {
    complement = CMatrix::Identity(dim, dim);
  } else {
    const CMatrix constraints = both.adjoint() * j_matrix(k);
    // the constraint rows have full rank 2p; take the exact complement dimension
    Eigen::JacobiSVD<CMatrix> svd(constraints, Eigen::ComputeFullV);
    complement = svd.matrixV().rightCols(dim - 2 * p);
  }
  CMatrix out(dim, k);
  out << partial, paired_positive_basis(complement, tol);
  return out;
}

Takagi takagi(const CMatrix& a) {
  const Index k = a.rows();
  if (a.cols() != k) throw Error(ErrorKind::validation, "takagi: matrix must be square");
  const CMatrix sym = 0.5 * (a + a.transpose());
  const RMatrix re = sym.real(), im = sym.imag();
  RMatrix emb(2 * k, 2 * k);
  emb << re, im, im, -re;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(emb);
  const double floor = 1e-13 * std::max(1.0, a.norm());
  Takagi out;
  out.u = CMatrix::Zero(k, k);
  out.s = RVector::Zero(k);
  Index found = 0;
  for (Index i = 2 * k - 1; i >= 0 && found < k; --i) {
    const double sigma = es.eigenvalues()(i);
    if (sigma <= floor) break;
    const RVector v = es.eigenvectors().col(i);
    out.u.col(found) = (v.head(k).cast<cd>() + cd(0.0, 1.0) * v.tail(k).cast<cd>());
    out.s(found) = sigma;
    ++found;
  }
  if (found < k) {
    // the remaining columns span the null space of a; any orthonormal basis works
    if (found == 0) {
      out.u = CMatrix::Identity(k, k);
    } else {
      Eigen::JacobiSVD<CMatrix> svd(out.u.leftCols(found).adjoint(), Eigen::ComputeFullV);
      out.u.rightCols(k - found) = svd.matrixV().rightCols(k - found);
    }
  }
  return out;
}

}  // namespace lqss::detail
