#pragma once

// Indefinite (Krein space) algebra for doubled-up linear quantum systems.
//
// A doubled-up matrix of half-size r x s is the 2r x 2s block matrix
// [[X1, X2], [conj(X2), conj(X1)]].  The ♭-adjoint X♭ = J X† J plays the role
// of the Hermitian adjoint for the indefinite inner product <x, y>_J = x† J y.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace lqss {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kStructureTol = 1e-9;

// J_{2k} = diag(I, -I)
CMatrix j_matrix(Index k);
// Σ_{2k} = [[0, I], [I, 0]]
CMatrix sigma_matrix(Index k);
// real symplectic unit [[0, I], [-I, 0]]
RMatrix symplectic_unit(Index k);
// unitary change of basis from doubled-up to real quadrature coordinates
CMatrix phi_matrix(Index k);

class DoubledUpMatrix {
 public:
  DoubledUpMatrix() = default;
  DoubledUpMatrix(CMatrix x1, CMatrix x2);

  // Throws ErrorKind::structure when the residual exceeds tol.
  static DoubledUpMatrix from_full(const CMatrix& x, double tol = kStructureTol);
  static DoubledUpMatrix identity(Index k);
  static DoubledUpMatrix zero(Index r, Index s);

  Index half_rows() const { return x1_.rows(); }
  Index half_cols() const { return x1_.cols(); }
  const CMatrix& x1() const { return x1_; }
  const CMatrix& x2() const { return x2_; }

  CMatrix full() const;
  DoubledUpMatrix flat() const;

  friend DoubledUpMatrix operator*(const DoubledUpMatrix& a, const DoubledUpMatrix& b);
  friend DoubledUpMatrix operator+(const DoubledUpMatrix& a, const DoubledUpMatrix& b);
  friend DoubledUpMatrix operator-(const DoubledUpMatrix& a, const DoubledUpMatrix& b);
  friend DoubledUpMatrix operator*(double c, const DoubledUpMatrix& a);

 private:
  CMatrix x1_;
  CMatrix x2_;
};

// ‖Σ X Σ − conj(X)‖_F; zero exactly when X is doubled-up.
double doubled_up_residual(const CMatrix& x);

// max of the doubled-up residual and ‖R R♭ − I‖_F, ‖R♭ R − I‖_F.
double bogoliubov_residual(const CMatrix& r);

// A doubled-up matrix that is invertible with inverse R♭.
class BogoliubovMatrix {
 public:
  BogoliubovMatrix() = default;
  static BogoliubovMatrix from(const DoubledUpMatrix& r, double tol = kStructureTol);
  static BogoliubovMatrix from_full(const CMatrix& r, double tol = kStructureTol);
  static BogoliubovMatrix identity(Index k);
  // Builds diag(U, conj(U)) from a unitary U.
  static BogoliubovMatrix passive(const CMatrix& u, double tol = kStructureTol);

  Index half_size() const { return m_.half_rows(); }
  const DoubledUpMatrix& matrix() const { return m_; }
  CMatrix full() const { return m_.full(); }
  BogoliubovMatrix inverse() const;

  friend BogoliubovMatrix operator*(const BogoliubovMatrix& a, const BogoliubovMatrix& b);

 private:
  explicit BogoliubovMatrix(DoubledUpMatrix m) : m_(std::move(m)) {}
  DoubledUpMatrix m_;
};

// X♭ = J_{2s} X† J_{2r} for X of size 2r x 2s.
CMatrix flat_adjoint(const CMatrix& x);
// X♯ = -𝕁_{2n} Xᵀ 𝕁_{2m} for real X of size 2m x 2n.
RMatrix sharp_adjoint(const RMatrix& x);

// <x, y>_J = x† J y
cd j_inner(const CVector& x, const CVector& y);

// The antilinear involution z -> Σ conj(z).  It maps J-norm +1 vectors to
// J-norm -1 vectors and keeps eigenvectors of ♭-selfadjoint doubled-up
// matrices inside the eigenspace of the conjugate eigenvalue.
CVector krein_conjugate(const CVector& z);
CMatrix krein_conjugate(const CMatrix& z);

// Φ X Φ⁻¹ for doubled-up X; the result is real.
RMatrix phi_to_real(const DoubledUpMatrix& x);
// Φ⁻¹ X Φ for real X of even dimensions; the result is doubled-up.
DoubledUpMatrix phi_to_doubled(const RMatrix& x);

// Hermitian doubled-up matrix with standard normal entries times scale.
DoubledUpMatrix random_hermitian_doubled_up(Index k, std::mt19937_64& rng, double scale = 1.0);
DoubledUpMatrix random_doubled_up(Index r, Index s, std::mt19937_64& rng, double scale = 1.0);
CMatrix random_unitary(Index k, std::mt19937_64& rng);

// exp(-i J H) for Hermitian doubled-up H; always Bogoliubov.
BogoliubovMatrix bogoliubov_exp(const DoubledUpMatrix& h);
BogoliubovMatrix random_bogoliubov(Index k, std::uint64_t seed, double scale = 0.5);

}  // namespace lqss
