#include "lqss/network.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <sstream>

#include "lqss/errors.hpp"

namespace lqss {

CMatrix StateSpace::eval(cd s) const {
  const Index n = a.rows();
  Eigen::PartialPivLU<CMatrix> lu(s * CMatrix::Identity(n, n) - a);
  if (n > 0 && !(lu.rcond() > 1e-14)) {
    std::ostringstream os;
    os << "transfer function evaluated at a pole (s = " << s << ", rcond " << lu.rcond() << ")";
    throw Error(ErrorKind::pole, os.str());
  }
  if (n == 0) return d;
  return c * lu.solve(b) + d;
}

namespace {

const cd I(0.0, 1.0);

void check_channel(Index c, Index channels) {
  if (c < 0 || c >= channels) {
    std::ostringstream os;
    os << "channel index " << c << " outside [0, " << channels << ")";
    throw Error(ErrorKind::validation, os.str());
  }
}

}  // namespace

SlhTriple bank_model(const CavityBank& bank) {
  const Index m = bank.channels;
  const Index n = static_cast<Index>(bank.cavities.size());
  SlhTriple t;
  t.s = CMatrix::Identity(2 * m, 2 * m);
  t.n = CMatrix::Zero(2 * m, 2 * n);
  t.m = CMatrix::Zero(2 * n, 2 * n);
  for (Index j = 0; j < n; ++j) {
    t.m(j, j) = bank.cavities[j].detuning;
    t.m(n + j, n + j) = bank.cavities[j].detuning;
  }
  std::vector<bool> seen(n, false);
  const CMatrix sig = sigma_matrix(n);
  for (const auto& stage : bank.stages) {
    if (const auto* mix = std::get_if<ChannelMixer>(&stage)) {
      check_channel(mix->channel_a, m);
      check_channel(mix->channel_b, m);
      CMatrix u = CMatrix::Identity(m, m);
      const Index ab[2] = {mix->channel_a, mix->channel_b};
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) u(ab[r], ab[c]) = mix->unitary(r, c);
      CMatrix ud = CMatrix::Zero(2 * m, 2 * m);
      ud.topLeftCorner(m, m) = u;
      ud.bottomRightCorner(m, m) = u.conjugate();
      t.s = ud * t.s;
      t.n = ud * t.n;
      continue;
    }
    const Index j = std::get<Index>(stage);
    if (j < 0 || j >= n || seen[j])
      throw Error(ErrorKind::validation, "bank stages must list every cavity exactly once");
    seen[j] = true;
    CMatrix nj = CMatrix::Zero(2 * m, 2 * n);
    for (const auto& p : bank.cavities[j].ports) {
      check_channel(p.channel, m);
      nj(p.channel, j) += p.passive;
      nj(p.channel, n + j) += p.active;
      nj(m + p.channel, j) += std::conj(p.active);
      nj(m + p.channel, n + j) += std::conj(p.passive);
    }
    // Hamiltonian picked up by feeding the earlier outputs into cavity j
    const CMatrix f = nj.topRows(m);
    const CMatrix g = t.n.topRows(m);
    const CMatrix k = (f.adjoint() * g - g.adjoint() * f) / (2.0 * I);
    t.m += k + sig * k.conjugate() * sig;
    t.n += nj;
  }
  for (Index j = 0; j < n; ++j)
    if (!seen[j]) throw Error(ErrorKind::validation, "bank stages must list every cavity exactly once");
  return t;
}

StateSpace bank_state_space(const CavityBank& bank) {
  const SlhTriple t = bank_model(bank);
  const Index m = bank.channels;
  const Index n = static_cast<Index>(bank.cavities.size());
  const Index p = m + n;
  CMatrix nt = CMatrix::Zero(2 * p, 2 * n);
  CMatrix st = CMatrix::Identity(2 * p, 2 * p);
  nt.topRows(m) = t.n.topRows(m);
  nt.middleRows(p, m) = t.n.bottomRows(m);
  st.topLeftCorner(m, m) = t.s.topLeftCorner(m, m);
  st.block(0, p, m, m) = t.s.topRightCorner(m, m);
  st.block(p, 0, m, m) = t.s.bottomLeftCorner(m, m);
  st.block(p, p, m, m) = t.s.bottomRightCorner(m, m);
  for (Index j = 0; j < n; ++j) {
    const double k = std::sqrt(bank.cavities[j].interconnect_kappa);
    nt(m + j, j) = k;
    nt(p + m + j, n + j) = k;
  }
  StateSpace ss;
  const CMatrix nflat = flat_adjoint(nt);
  ss.a = -I * j_matrix(n) * t.m - 0.5 * nflat * nt;
  ss.b = -nflat * st;
  ss.c = nt;
  ss.d = st;
  return ss;
}

namespace {

CMatrix pick_rows(const CMatrix& x, const std::vector<Index>& idx) {
  CMatrix out(static_cast<Index>(idx.size()), x.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Index>(i)) = x.row(idx[i]);
  return out;
}

CMatrix pick_cols(const CMatrix& x, const std::vector<Index>& idx) {
  CMatrix out(x.rows(), static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out.col(static_cast<Index>(i)) = x.col(idx[i]);
  return out;
}

StateSpace eliminate(const StateSpace& open, const std::vector<Index>& sys,
                     const std::vector<Index>& in, const CMatrix& r) {
  const CMatrix bs = pick_cols(open.b, sys), bi = pick_cols(open.b, in);
  const CMatrix cs = pick_rows(open.c, sys), ci = pick_rows(open.c, in);
  const CMatrix dr_s = pick_rows(open.d, sys), dr_i = pick_rows(open.d, in);
  const CMatrix dss = pick_cols(dr_s, sys), dsi = pick_cols(dr_s, in);
  const CMatrix dis = pick_cols(dr_i, sys), dii = pick_cols(dr_i, in);
  const Index k = static_cast<Index>(in.size());
  // y_i = C_i x + D_is u + D_ii u_i and u_i = R y_i
  const CMatrix loop = CMatrix::Identity(k, k) - r * dii;
  Eigen::PartialPivLU<CMatrix> lu(loop);
  if (!(lu.rcond() > 1e-13)) {
    Eigen::ComplexEigenSolver<CMatrix> es(r * dii, false);
    Index best = 0;
    (es.eigenvalues().array() - cd(1.0, 0.0)).abs().minCoeff(&best);
    throw UnitEigenvalueError(es.eigenvalues()(best));
  }
  const CMatrix gx = lu.solve(r * ci);
  const CMatrix gu = lu.solve(r * dis);
  StateSpace out;
  out.a = open.a + bi * gx;
  out.b = bs + bi * gu;
  out.c = cs + dsi * gx;
  out.d = dss + dsi * gu;
  return out;
}

}  // namespace

StateSpace close_feedback(const StateSpace& open, Index n_int, const CMatrix& r) {
  const Index p = open.d.rows() / 2;
  const Index m = p - n_int;
  if (r.rows() != 2 * n_int || r.cols() != 2 * n_int)
    throw Error(ErrorKind::validation, "feedback matrix has the wrong size");
  std::vector<Index> sys, in;
  for (Index i = 0; i < m; ++i) sys.push_back(i);
  for (Index i = 0; i < m; ++i) sys.push_back(p + i);
  for (Index i = 0; i < n_int; ++i) in.push_back(m + i);
  for (Index i = 0; i < n_int; ++i) in.push_back(p + m + i);
  return eliminate(open, sys, in, r);
}

StateSpace close_feedback_passive(const StateSpace& open, Index n_int, const CMatrix& r) {
  const Index p = open.d.rows();
  const Index m = p - n_int;
  if (r.rows() != n_int || r.cols() != n_int)
    throw Error(ErrorKind::validation, "feedback matrix has the wrong size");
  std::vector<Index> sys, in;
  for (Index i = 0; i < m; ++i) sys.push_back(i);
  for (Index i = 0; i < n_int; ++i) in.push_back(m + i);
  return eliminate(open, sys, in, r);
}

}  // namespace lqss
