#include "lqss/krein.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

#include "lqss/errors.hpp"

namespace lqss {

namespace {

void require_even(const CMatrix& x, const char* what) {
  if (x.rows() % 2 != 0 || x.cols() % 2 != 0) {
    std::ostringstream os;
    os << what << ": expected even dimensions, got " << x.rows() << "x" << x.cols();
    throw Error(ErrorKind::validation, os.str());
  }
}

}  // namespace

CMatrix j_matrix(Index k) {
  CMatrix j = CMatrix::Identity(2 * k, 2 * k);
  j.bottomRightCorner(k, k) *= -1.0;
  return j;
}

CMatrix sigma_matrix(Index k) {
  CMatrix s = CMatrix::Zero(2 * k, 2 * k);
  s.topRightCorner(k, k).setIdentity();
  s.bottomLeftCorner(k, k).setIdentity();
  return s;
}

RMatrix symplectic_unit(Index k) {
  RMatrix s = RMatrix::Zero(2 * k, 2 * k);
  s.topRightCorner(k, k).setIdentity();
  s.bottomLeftCorner(k, k) = -RMatrix::Identity(k, k);
  return s;
}

CMatrix phi_matrix(Index k) {
  const double h = 1.0 / std::sqrt(2.0);
  const cd i(0.0, 1.0);
  CMatrix p(2 * k, 2 * k);
  const CMatrix id = CMatrix::Identity(k, k);
  p << h * id, h * id, -i * h * id, i * h * id;
  return p;
}

DoubledUpMatrix::DoubledUpMatrix(CMatrix x1, CMatrix x2) : x1_(std::move(x1)), x2_(std::move(x2)) {
  if (x1_.rows() != x2_.rows() || x1_.cols() != x2_.cols())
    throw Error(ErrorKind::validation, "doubled-up blocks must have equal shapes");
}

DoubledUpMatrix DoubledUpMatrix::from_full(const CMatrix& x, double tol) {
  require_even(x, "doubled-up matrix");
  const Index r = x.rows() / 2, s = x.cols() / 2;
  const CMatrix x1 = x.topLeftCorner(r, s);
  const CMatrix x2 = x.topRightCorner(r, s);
  // compare the lower blocks with the conjugates of the upper ones
  CMatrix diff(2 * r, 2 * s);
  diff << CMatrix::Zero(r, s), CMatrix::Zero(r, s), x.bottomLeftCorner(r, s) - x2.conjugate(),
      x.bottomRightCorner(r, s) - x1.conjugate();
  const double res = diff.norm();
  if (res > tol * std::max(1.0, x.norm())) {
    Index i = 0, j = 0;
    diff.cwiseAbs().maxCoeff(&i, &j);
    std::ostringstream os;
    os << "matrix is not doubled-up: residual " << res << ", worst entry (" << i << ", " << j
       << ") off by " << std::abs(diff(i, j));
    throw Error(ErrorKind::structure, os.str());
  }
  // average the two copies so the stored blocks are consistent
  return DoubledUpMatrix(0.5 * (x1 + x.bottomRightCorner(r, s).conjugate()),
                         0.5 * (x2 + x.bottomLeftCorner(r, s).conjugate()));
}

DoubledUpMatrix DoubledUpMatrix::identity(Index k) {
  return DoubledUpMatrix(CMatrix::Identity(k, k), CMatrix::Zero(k, k));
}

DoubledUpMatrix DoubledUpMatrix::zero(Index r, Index s) {
  return DoubledUpMatrix(CMatrix::Zero(r, s), CMatrix::Zero(r, s));
}

CMatrix DoubledUpMatrix::full() const {
  CMatrix x(2 * half_rows(), 2 * half_cols());
  x << x1_, x2_, x2_.conjugate(), x1_.conjugate();
  return x;
}

DoubledUpMatrix DoubledUpMatrix::flat() const {
  // J [[A, B], [B#, A#]]† J = [[A†, -B^T], [-B†, A^T]]
  return DoubledUpMatrix(x1_.adjoint(), -x2_.transpose());
}

DoubledUpMatrix operator*(const DoubledUpMatrix& a, const DoubledUpMatrix& b) {
  if (a.half_cols() != b.half_rows())
    throw Error(ErrorKind::validation, "doubled-up product: shape mismatch");
  return DoubledUpMatrix(a.x1_ * b.x1_ + a.x2_ * b.x2_.conjugate(),
                         a.x1_ * b.x2_ + a.x2_ * b.x1_.conjugate());
}

DoubledUpMatrix operator+(const DoubledUpMatrix& a, const DoubledUpMatrix& b) {
  return DoubledUpMatrix(a.x1_ + b.x1_, a.x2_ + b.x2_);
}

DoubledUpMatrix operator-(const DoubledUpMatrix& a, const DoubledUpMatrix& b) {
  return DoubledUpMatrix(a.x1_ - b.x1_, a.x2_ - b.x2_);
}

DoubledUpMatrix operator*(double c, const DoubledUpMatrix& a) {
  return DoubledUpMatrix(c * a.x1_, c * a.x2_);
}

double doubled_up_residual(const CMatrix& x) {
  require_even(x, "doubled-up residual");
  return (sigma_matrix(x.rows() / 2) * x * sigma_matrix(x.cols() / 2) - x.conjugate()).norm();
}

double bogoliubov_residual(const CMatrix& r) {
  if (r.rows() != r.cols()) throw Error(ErrorKind::validation, "Bogoliubov matrix must be square");
  const CMatrix rf = flat_adjoint(r);
  const CMatrix id = CMatrix::Identity(r.rows(), r.cols());
  return std::max({doubled_up_residual(r), (r * rf - id).norm(), (rf * r - id).norm()});
}

BogoliubovMatrix BogoliubovMatrix::from(const DoubledUpMatrix& r, double tol) {
  if (r.half_rows() != r.half_cols())
    throw Error(ErrorKind::validation, "Bogoliubov matrix must be square");
  const CMatrix f = r.full();
  const double res = bogoliubov_residual(f);
  if (res > tol * std::max(1.0, f.squaredNorm())) {
    std::ostringstream os;
    os << "matrix is not Bogoliubov: max(‖RR♭-I‖, ‖R♭R-I‖) = " << res;
    throw Error(ErrorKind::structure, os.str());
  }
  return BogoliubovMatrix(r);
}

BogoliubovMatrix BogoliubovMatrix::from_full(const CMatrix& r, double tol) {
  return from(DoubledUpMatrix::from_full(r, tol), tol);
}

BogoliubovMatrix BogoliubovMatrix::identity(Index k) {
  return BogoliubovMatrix(DoubledUpMatrix::identity(k));
}

BogoliubovMatrix BogoliubovMatrix::passive(const CMatrix& u, double tol) {
  return from(DoubledUpMatrix(u, CMatrix::Zero(u.rows(), u.cols())), tol);
}

BogoliubovMatrix BogoliubovMatrix::inverse() const { return BogoliubovMatrix(m_.flat()); }

BogoliubovMatrix operator*(const BogoliubovMatrix& a, const BogoliubovMatrix& b) {
  return BogoliubovMatrix(a.m_ * b.m_);
}

CMatrix flat_adjoint(const CMatrix& x) {
  require_even(x, "♭-adjoint");
  return j_matrix(x.cols() / 2) * x.adjoint() * j_matrix(x.rows() / 2);
}

RMatrix sharp_adjoint(const RMatrix& x) {
  if (x.rows() % 2 != 0 || x.cols() % 2 != 0)
    throw Error(ErrorKind::validation, "♯-adjoint: expected even dimensions");
  return -symplectic_unit(x.cols() / 2) * x.transpose() * symplectic_unit(x.rows() / 2);
}

cd j_inner(const CVector& x, const CVector& y) {
  if (x.size() != y.size() || x.size() % 2 != 0)
    throw Error(ErrorKind::validation, "J inner product: vectors must share an even length");
  const Index k = x.size() / 2;
  return x.head(k).dot(y.head(k)) - x.tail(k).dot(y.tail(k));
}

CVector krein_conjugate(const CVector& z) {
  const Index k = z.size() / 2;
  CVector out(z.size());
  out << z.tail(k).conjugate(), z.head(k).conjugate();
  return out;
}

CMatrix krein_conjugate(const CMatrix& z) {
  const Index k = z.rows() / 2;
  CMatrix out(z.rows(), z.cols());
  out << z.bottomRows(k).conjugate(), z.topRows(k).conjugate();
  return out;
}

RMatrix phi_to_real(const DoubledUpMatrix& x) {
  const CMatrix r = phi_matrix(x.half_rows()) * x.full() * phi_matrix(x.half_cols()).adjoint();
  return r.real();
}

DoubledUpMatrix phi_to_doubled(const RMatrix& x) {
  if (x.rows() % 2 != 0 || x.cols() % 2 != 0)
    throw Error(ErrorKind::validation, "phi_to_doubled: expected even dimensions");
  const CMatrix d = phi_matrix(x.rows() / 2).adjoint() * x.cast<cd>() * phi_matrix(x.cols() / 2);
  return DoubledUpMatrix::from_full(d, 1e-12);
}

namespace {
CMatrix gaussian_complex(Index r, Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) a(i, j) = cd(g(rng), g(rng));
  return a;
}
}  // namespace

DoubledUpMatrix random_hermitian_doubled_up(Index k, std::mt19937_64& rng, double scale) {
  const CMatrix a = gaussian_complex(k, k, rng);
  const CMatrix b = gaussian_complex(k, k, rng);
  // H1 Hermitian, H2 complex symmetric
  return DoubledUpMatrix(0.5 * scale * (a + a.adjoint()), 0.5 * scale * (b + b.transpose()));
}

DoubledUpMatrix random_doubled_up(Index r, Index s, std::mt19937_64& rng, double scale) {
  return DoubledUpMatrix(scale * gaussian_complex(r, s, rng), scale * gaussian_complex(r, s, rng));
}

CMatrix random_unitary(Index k, std::mt19937_64& rng) {
  const CMatrix a = gaussian_complex(k, k, rng);
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ();
  // fix the phases so the distribution is Haar
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < k; ++j) {
    const double m = std::abs(r(j, j));
    if (m > 0) q.col(j) *= r(j, j) / m;
  }
  return q;
}

BogoliubovMatrix bogoliubov_exp(const DoubledUpMatrix& h) {
  const Index k = h.half_rows();
  const CMatrix gen = cd(0.0, -1.0) * j_matrix(k) * h.full();
  const CMatrix e = gen.exp();
  return BogoliubovMatrix::from_full(e, 1e-8);
}

BogoliubovMatrix random_bogoliubov(Index k, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  return bogoliubov_exp(random_hermitian_doubled_up(k, rng, scale));
}

}  // namespace lqss
