#include "lqss/synth_general.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <random>
#include <sstream>

#include "lqss/errors.hpp"

namespace lqss {

namespace {
const cd I(0.0, 1.0);
}

void GeneralModel::validate(double tol) const {
  std::ostringstream os;
  if (m.half_rows() != m.half_cols()) os << "M must be square; ";
  if (n.half_cols() != m.half_rows()) os << "N must have as many columns as M; ";
  if (s.half_size() != n.half_rows()) os << "S must match the channel count of N; ";
  if (!os.str().empty()) throw Error(ErrorKind::validation, os.str());
  const CMatrix mf = m.full();
  const double herm = (mf - mf.adjoint()).norm();
  if (herm > tol * std::max(1.0, mf.norm())) {
    os << "M is not Hermitian (‖M - M†‖ = " << herm << ")";
    throw Error(ErrorKind::validation, os.str());
  }
}

GeneralModel GeneralModel::from_passive(const PassiveModel& p) {
  GeneralModel g;
  g.m = DoubledUpMatrix(p.m, CMatrix::Zero(p.modes(), p.modes()));
  g.n = DoubledUpMatrix(p.n, CMatrix::Zero(p.channels(), p.modes()));
  g.s = BogoliubovMatrix::passive(p.s);
  return g;
}

StateSpace general_state_space(const GeneralModel& model) {
  const CMatrix n = model.n.full();
  const CMatrix nf = flat_adjoint(n);
  StateSpace ss;
  ss.a = -I * j_matrix(model.modes()) * model.m.full() - 0.5 * nf * n;
  ss.b = -nf * model.s.full();
  ss.c = n;
  ss.d = model.s.full();
  return ss;
}

CMatrix general_tf(const GeneralModel& model, cd s) {
  const Index k = 2 * model.modes();
  const CMatrix n = model.n.full();
  const CMatrix nf = flat_adjoint(n);
  const CMatrix res = s * CMatrix::Identity(k, k) + I * j_matrix(model.modes()) * model.m.full() + 0.5 * nf * n;
  Eigen::PartialPivLU<CMatrix> lu(res);
  if (k > 0 && !(lu.rcond() > 1e-14)) {
    std::ostringstream os;
    os << "transfer function evaluated at a pole (s = " << s << ")";
    throw Error(ErrorKind::pole, os.str());
  }
  const Index c = 2 * model.channels();
  if (k == 0) return model.s.full();
  return (CMatrix::Identity(c, c) - n * lu.solve(nf)) * model.s.full();
}

CMatrix general_cayley(const CMatrix& r) {
  const Index k = r.rows();
  const CMatrix id = CMatrix::Identity(k, k);
  Eigen::PartialPivLU<CMatrix> lu((id - r).transpose());
  if (!(lu.rcond() > 1e-12)) {
    Eigen::ComplexEigenSolver<CMatrix> es(r, false);
    Index best = 0;
    (es.eigenvalues().array() - cd(1.0, 0.0)).abs().minCoeff(&best);
    throw UnitEigenvalueError(es.eigenvalues()(best));
  }
  return lu.solve((id + r).transpose()).transpose();
}

CMatrix general_inverse_cayley(const CMatrix& x) { return inverse_cayley(x); }

CMatrix interconnect_coupling(const RVector& kappa) {
  const Index n = kappa.size();
  RVector d(2 * n);
  d << kappa.cwiseSqrt(), kappa.cwiseSqrt();
  return d.cast<cd>().asDiagonal();
}

CavityBank build_cavity_bank(const BogoliubovSvd& svd, const RVector& detunings,
                             const RVector& kappa) {
  const Index n = svd.n_hat.half_cols();
  const Index m = svd.n_hat.half_rows();
  CavityBank bank;
  bank.channels = m;
  bank.cavities.resize(n);
  for (Index j = 0; j < n; ++j) {
    bank.cavities[j].detuning = detunings(j);
    bank.cavities[j].interconnect_kappa = kappa(j);
  }
  const CMatrix& n1 = svd.n_hat.x1();
  const CMatrix& n2 = svd.n_hat.x2();
  for (std::size_t ci = 0; ci < svd.spectrum.classes.size(); ++ci) {
    const EigenClass& cls = svd.spectrum.classes[ci];
    const ClassPlacement& pl = svd.placement[ci];
    if (cls.kind == EigenClassKind::complex_pair) {
      // two identical cavities, each with an active port on the first
      // channel and a passive port on the second, cascaded through a
      // beam splitter; a compensating splitter in front keeps the
      // scattering of the block trivial
      const Index a = pl.w_begin, b = pl.w_begin + 1;
      const Index c1 = pl.v_begin, c2 = pl.v_begin + 1;
      const cd alpha = n1(c1, a);
      const cd ibeta = n2(c1, b);
      for (Index mode : {a, b}) {
        Cavity& cav = bank.cavities[mode];
        cav.ports = {{c1, 0.0, ibeta}, {c2, alpha, 0.0}};
        cav.detuning = detunings(a);
        cav.role = "complex_pair";
      }
      CMatrix bs(2, 2);
      bs << 0.0, 1.0, -1.0, 0.0;
      bank.stages.emplace_back(ChannelMixer{c1, c2, bs.adjoint()});
      bank.stages.emplace_back(a);
      bank.stages.emplace_back(ChannelMixer{c1, c2, bs});
      bank.stages.emplace_back(b);
      continue;
    }
    for (Index j = pl.w_begin; j < pl.w_begin + pl.w_count; ++j) {
      Cavity& cav = bank.cavities[j];
      cav.role = to_string(cls.kind);
      for (Index c = pl.v_begin; c < pl.v_begin + pl.v_count; ++c) {
        if (std::abs(n1(c, j)) == 0.0 && std::abs(n2(c, j)) == 0.0) continue;
        cav.ports.push_back({c, n1(c, j), n2(c, j)});
      }
      bank.stages.emplace_back(j);
    }
  }
  return bank;
}

namespace {

RVector perturbed(const RVector& kappa, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.9, 1.1);
  RVector out = kappa;
  for (Index i = 0; i < out.size(); ++i) out(i) *= u(rng);
  return out;
}

}  // namespace

GeneralRealization synthesize_general(const GeneralModel& model, const GeneralSynthOptions& opts) {
  model.validate();
  const Index n = model.modes();
  GeneralRealization out;
  out.detunings = opts.detunings.size() ? opts.detunings : RVector::Zero(n);
  out.interconnect_kappa = opts.interconnect_kappa.size() ? opts.interconnect_kappa : RVector::Ones(n);
  if (out.detunings.size() != n || out.interconnect_kappa.size() != n)
    throw Error(ErrorKind::validation, "detunings and interconnect couplings need one entry per mode");
  if ((out.interconnect_kappa.array() <= 0.0).any())
    throw Error(ErrorKind::validation, "interconnect couplings must be positive");

  out.svd = bogoliubov_svd(model.n, opts.svd);
  if (!(out.svd.residual < 1e-8)) {
    std::ostringstream os;
    os << "Bogoliubov SVD reconstruction residual " << out.svd.residual << " is too large";
    throw Error(ErrorKind::numerical, os.str());
  }
  const CMatrix w = out.svd.w.full();
  out.m_hat = w.adjoint() * model.m.full() * w;
  out.pre = out.svd.v.inverse().full() * model.s.full();
  out.post = out.svd.v.full();

  std::mt19937_64 rng(opts.seed);
  const CMatrix jm = j_matrix(n);
  for (int attempt = 0;; ++attempt) {
    out.bank = build_cavity_bank(out.svd, out.detunings, out.interconnect_kappa);
    // complex pairs share a detuning; report what the bank actually uses
    for (Index j = 0; j < n; ++j) out.detunings(j) = out.bank.cavities[j].detuning;
    const SlhTriple t = bank_model(out.bank);
    out.m_conc = t.m;
    out.bank_residual = (t.n - out.svd.n_hat.full()).norm() +
                        (t.s - CMatrix::Identity(t.s.rows(), t.s.cols())).norm();
    const CMatrix nt_inv = interconnect_coupling(out.interconnect_kappa).inverse();
    out.x = 2.0 * I * nt_inv * (jm * out.m_hat - jm * out.m_conc) * nt_inv;
    try {
      out.r = general_inverse_cayley(out.x);
      out.retries = attempt;
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::numerical || attempt >= opts.max_retries) throw;
      out.interconnect_kappa = perturbed(out.interconnect_kappa, rng);
    }
  }
  return out;
}

CMatrix cayley_drift(const GeneralRealization& real) {
  const Index n = real.m_hat.rows() / 2;
  const CMatrix nh = real.svd.n_hat.full();
  const CMatrix nt = interconnect_coupling(real.interconnect_kappa);
  return -I * j_matrix(n) * real.m_conc - 0.5 * flat_adjoint(nh) * nh - 0.5 * flat_adjoint(nt) * real.x * nt;
}

CMatrix eliminated_drift(const GeneralRealization& real) {
  const Index n = real.m_hat.rows() / 2;
  return close_feedback(bank_state_space(real.bank), n, real.r).a;
}

CMatrix reduced_general_tf(const GeneralRealization& real, cd s) {
  GeneralModel reduced;
  reduced.m = DoubledUpMatrix::from_full(real.m_hat, 1e-8);
  reduced.n = real.svd.n_hat;
  reduced.s = BogoliubovMatrix::identity(real.svd.n_hat.half_rows());
  return general_tf(reduced, s);
}

}  // namespace lqss
