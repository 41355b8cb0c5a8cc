#include "lqss/synth_passive.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <sstream>

#include "lqss/detail/linalg.hpp"
#include "lqss/errors.hpp"

namespace lqss {

namespace {
const cd I(0.0, 1.0);

CMatrix tf(const CMatrix& m, const CMatrix& n, const CMatrix& s, cd freq) {
  const Index k = m.rows();
  const CMatrix res = freq * CMatrix::Identity(k, k) + I * m + 0.5 * n.adjoint() * n;
  Eigen::PartialPivLU<CMatrix> lu(res);
  if (k > 0 && !(lu.rcond() > 1e-14)) {
    std::ostringstream os;
    os << "transfer function evaluated at a pole (s = " << freq << ")";
    throw Error(ErrorKind::pole, os.str());
  }
  const CMatrix id = CMatrix::Identity(n.rows(), n.rows());
  if (k == 0) return s;
  return (id - n * lu.solve(n.adjoint())) * s;
}
}  // namespace

void PassiveModel::validate(double tol) const {
  std::ostringstream os;
  if (m.rows() != m.cols()) os << "M must be square; ";
  if (n.cols() != m.rows()) os << "N must have as many columns as M has rows; ";
  if (s.rows() != s.cols() || s.rows() != n.rows()) os << "S must be square with as many rows as N; ";
  if (!os.str().empty()) throw Error(ErrorKind::validation, os.str());
  const double herm = (m - m.adjoint()).norm();
  if (herm > tol * std::max(1.0, m.norm())) {
    os << "M is not Hermitian (‖M - M†‖ = " << herm << ")";
    throw Error(ErrorKind::validation, os.str());
  }
  const double unit = (s.adjoint() * s - CMatrix::Identity(s.rows(), s.cols())).norm();
  if (unit > tol) {
    os << "S is not unitary (‖S†S - I‖ = " << unit << ")";
    throw Error(ErrorKind::validation, os.str());
  }
}

CMatrix passive_tf(const PassiveModel& model, cd s) { return tf(model.m, model.n, model.s, s); }

StateSpace passive_state_space(const PassiveModel& model) {
  StateSpace ss;
  ss.a = -I * model.m - 0.5 * model.n.adjoint() * model.n;
  ss.b = -model.n.adjoint() * model.s;
  ss.c = model.n;
  ss.d = model.s;
  return ss;
}

PassiveSvd passive_svd(const CMatrix& n, double rank_tol) {
  const Index m = n.rows(), k = n.cols();
  Eigen::JacobiSVD<CMatrix> svd(n, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& sv = svd.singularValues();
  PassiveSvd out;
  out.v = svd.matrixU();
  out.w = svd.matrixV();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  out.rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * smax && sv(i) > 0.0) ++out.rank;
  out.n_hat = CMatrix::Zero(m, k);
  for (Index i = 0; i < out.rank; ++i) out.n_hat(i, i) = sv(i);
  for (Index j = 0; j < k; ++j) {
    const cd ph = detail::normalize_phase(out.w.col(j));
    // keep N = V N̂ W† for the paired left vector
    if (j < out.rank) out.v.col(j) *= ph;
  }
  for (Index j = out.rank; j < m; ++j) detail::normalize_phase(out.v.col(j));
  const double nn = n.norm();
  out.residual = (n - out.v * out.n_hat * out.w.adjoint()).norm() / (nn > 0.0 ? nn : 1.0);
  return out;
}

CMatrix cayley(const CMatrix& r) {
  const Index k = r.rows();
  const CMatrix id = CMatrix::Identity(k, k);
  Eigen::PartialPivLU<CMatrix> lu(id - r);
  if (!(lu.rcond() > 1e-12)) {
    Eigen::ComplexEigenSolver<CMatrix> es(r, false);
    Index best = 0;
    (es.eigenvalues().array() - cd(1.0, 0.0)).abs().minCoeff(&best);
    throw UnitEigenvalueError(es.eigenvalues()(best));
  }
  return lu.solve(id + r);
}

CMatrix inverse_cayley(const CMatrix& x) {
  const Index k = x.rows();
  const CMatrix id = CMatrix::Identity(k, k);
  Eigen::PartialPivLU<CMatrix> lu((x + id).transpose());
  if (!(lu.rcond() > 1e-12)) throw Error(ErrorKind::numerical, "X + I is singular; the feedback matrix is undefined");
  // (X - I)(X + I)⁻¹ = ((X + I)⁻ᵀ (X - I)ᵀ)ᵀ
  return lu.solve((x - id).transpose()).transpose();
}

PassiveRealization synthesize_passive(const PassiveModel& model, const PassiveSynthOptions& opts) {
  model.validate();
  const Index n = model.modes(), m = model.channels();
  PassiveRealization out;
  out.detunings = opts.detunings.size() ? opts.detunings : RVector::Zero(n);
  out.interconnect_kappa = opts.interconnect_kappa.size() ? opts.interconnect_kappa : RVector::Ones(n);
  if (out.detunings.size() != n || out.interconnect_kappa.size() != n)
    throw Error(ErrorKind::validation, "detunings and interconnect couplings need one entry per mode");
  if ((out.interconnect_kappa.array() <= 0.0).any())
    throw Error(ErrorKind::validation, "interconnect couplings must be positive");

  out.svd = passive_svd(model.n, opts.rank_tol);
  out.m_hat = out.svd.w.adjoint() * model.m * out.svd.w;
  out.pre = out.svd.v.adjoint() * model.s;
  out.post = out.svd.v;

  const CMatrix nt_inv = out.interconnect_kappa.cwiseSqrt().cwiseInverse().cast<cd>().asDiagonal();
  const CMatrix d = out.detunings.cast<cd>().asDiagonal();
  out.x = 2.0 * I * nt_inv * (out.m_hat - d) * nt_inv;
  out.r = inverse_cayley(out.x);

  out.bank.channels = m;
  for (Index j = 0; j < n; ++j) {
    Cavity c;
    c.detuning = out.detunings(j);
    c.interconnect_kappa = out.interconnect_kappa(j);
    if (j < out.svd.rank) {
      c.ports.push_back({j, out.svd.n_hat(j, j), 0.0});
      c.role = "system_port";
    } else {
      c.role = "interconnect_only";
    }
    out.bank.cavities.push_back(c);
    out.bank.stages.emplace_back(j);
  }
  return out;
}

CMatrix reduced_passive_tf(const PassiveRealization& real, cd s) {
  return tf(real.m_hat, real.svd.n_hat, CMatrix::Identity(real.svd.n_hat.rows(), real.svd.n_hat.rows()), s);
}

}  // namespace lqss
