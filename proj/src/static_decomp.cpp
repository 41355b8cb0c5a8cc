#include "lqss/static_decomp.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

#include "lqss/detail/linalg.hpp"
#include "lqss/errors.hpp"

namespace lqss {

namespace {
const cd I(0.0, 1.0);

cd expi(double a) { return std::polar(1.0, a); }
}  // namespace

CMatrix BeamSplitter::matrix() const {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  CMatrix u(2, 2);
  u << expi((phi + psi) / 2) * c, expi((psi - phi) / 2) * s,
       -expi((phi - psi) / 2) * s, expi(-(phi + psi) / 2) * c;
  return expi(zeta) * u;
}

BeamSplitter BeamSplitter::from_unitary(Index a, Index b, const CMatrix& u) {
  BeamSplitter bs;
  bs.a = a;
  bs.b = b;
  bs.zeta = 0.5 * std::arg(u.determinant());
  const CMatrix su = expi(-bs.zeta) * u;
  const cd p = su(0, 0), q = su(0, 1);
  bs.theta = 2.0 * std::atan2(std::abs(q), std::abs(p));
  const double ap = std::abs(p) > 1e-300 ? std::arg(p) : 0.0;
  const double aq = std::abs(q) > 1e-300 ? std::arg(q) : 0.0;
  bs.psi = ap + aq;
  bs.phi = ap - aq;
  return bs;
}

CMatrix Squeezer::matrix() const {
  CMatrix s(2, 2);
  s << expi(phi + psi) * std::cosh(x), expi(psi - phi) * std::sinh(x),
       expi(phi - psi) * std::sinh(x), expi(-(phi + psi)) * std::cosh(x);
  return s;
}

CMatrix DeviceSchedule::matrix() const {
  const Index m = dimension;
  const bool dbl = kind == ScheduleKind::bogoliubov;
  const Index k = dbl ? 2 * m : m;
  CMatrix out = CMatrix::Identity(k, k);
  auto check = [m](Index c) {
    if (c < 0 || c >= m) throw Error(ErrorKind::validation, "device channel out of range");
  };
  for (const auto& dev : devices) {
    CMatrix g = CMatrix::Identity(k, k);
    if (const auto* bs = std::get_if<BeamSplitter>(&dev)) {
      check(bs->a);
      check(bs->b);
      const CMatrix u = bs->matrix();
      const Index ch[2] = {bs->a, bs->b};
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          g(ch[r], ch[c]) = u(r, c);
          if (dbl) g(m + ch[r], m + ch[c]) = std::conj(u(r, c));
        }
    } else if (const auto* ps = std::get_if<PhaseShifter>(&dev)) {
      check(ps->channel);
      g(ps->channel, ps->channel) = expi(ps->phase);
      if (dbl) g(m + ps->channel, m + ps->channel) = expi(-ps->phase);
    } else {
      const auto& sq = std::get<Squeezer>(dev);
      check(sq.channel);
      if (!dbl) throw Error(ErrorKind::validation, "squeezers cannot appear in a unitary schedule");
      const CMatrix s = sq.matrix();
      const Index c = sq.channel;
      g(c, c) = s(0, 0);
      g(c, m + c) = s(0, 1);
      g(m + c, c) = s(1, 0);
      g(m + c, m + c) = s(1, 1);
    }
    out = g * out;
  }
  return out;
}

Index DeviceSchedule::count_beam_splitters() const {
  Index k = 0;
  for (const auto& d : devices) k += std::holds_alternative<BeamSplitter>(d);
  return k;
}

Index DeviceSchedule::count_squeezers() const {
  Index k = 0;
  for (const auto& d : devices) k += std::holds_alternative<Squeezer>(d);
  return k;
}

BlochMessiah bloch_messiah(const BogoliubovMatrix& r) {
  const CMatrix& r1 = r.matrix().x1();
  const CMatrix& r2 = r.matrix().x2();
  const Index m = r1.rows();
  Eigen::JacobiSVD<CMatrix> svd(r1, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const CMatrix p = svd.matrixU();
  const CMatrix q = svd.matrixV();
  // P† R2 conj(Q) is complex symmetric and block diagonal over equal
  // singular values of R1; its Takagi vectors finish the reduction
  const CMatrix t = p.adjoint() * r2 * q.conjugate();
  const detail::Takagi tk = detail::takagi(t);
  BlochMessiah out;
  out.u2 = p * tk.u;
  out.u1 = tk.u.adjoint() * q.adjoint();
  out.x = tk.s.array().asinh();
  const RVector ch = out.x.array().cosh(), sh = out.x.array().sinh();
  const CMatrix rec1 = out.u2 * ch.cast<cd>().asDiagonal() * out.u1;
  const CMatrix rec2 = out.u2 * sh.cast<cd>().asDiagonal() * out.u1.conjugate();
  out.residual = std::sqrt(2.0 * ((r1 - rec1).squaredNorm() + (r2 - rec2).squaredNorm()));
  if (!(out.residual < 1e-8 * std::max(1.0, r1.norm()) * m)) {
    std::ostringstream os;
    os << "Bloch-Messiah reconstruction failed with residual " << out.residual;
    throw Error(ErrorKind::numerical, os.str());
  }
  return out;
}

DeviceSchedule reck_decompose(const CMatrix& u) {
  const Index m = u.rows();
  if (u.cols() != m) throw Error(ErrorKind::validation, "unitary must be square");
  const double unit = (u.adjoint() * u - CMatrix::Identity(m, m)).norm();
  if (unit > 1e-8) {
    std::ostringstream os;
    os << "matrix is not unitary (‖U†U - I‖ = " << unit << ")";
    throw Error(ErrorKind::structure, os.str());
  }
  CMatrix work = u;
  struct Rot {
    Index row;
    CMatrix g;
  };
  std::vector<Rot> rots;
  for (Index j = 0; j + 1 < m; ++j) {
    for (Index i = m - 1; i > j; --i) {
      const cd a = work(i - 1, j), b = work(i, j);
      if (std::abs(b) < 1e-15) continue;
      const double nrm = std::hypot(std::abs(a), std::abs(b));
      CMatrix g(2, 2);
      g << std::conj(a) / nrm, std::conj(b) / nrm, -b / nrm, a / nrm;
      work.middleRows(i - 1, 2) = (g * work.middleRows(i - 1, 2)).eval();
      rots.push_back({i - 1, g});
    }
  }
  DeviceSchedule sched;
  sched.dimension = m;
  sched.kind = ScheduleKind::unitary;
  // U = G_1† ... G_N† D; the signal meets D first
  for (Index c = 0; c < m; ++c) {
    const double ph = std::arg(work(c, c));
    if (std::abs(ph) > 1e-15) sched.devices.push_back(PhaseShifter{c, ph});
  }
  for (auto it = rots.rbegin(); it != rots.rend(); ++it)
    sched.devices.push_back(BeamSplitter::from_unitary(it->row, it->row + 1, it->g.adjoint()));
  return sched;
}

DeviceSchedule schedule_static(const BogoliubovMatrix& r) {
  const BlochMessiah bm = bloch_messiah(r);
  DeviceSchedule sched;
  sched.dimension = r.half_size();
  sched.kind = ScheduleKind::bogoliubov;
  const DeviceSchedule first = reck_decompose(bm.u1);
  const DeviceSchedule last = reck_decompose(bm.u2);
  sched.devices = first.devices;
  for (Index c = 0; c < bm.x.size(); ++c)
    if (std::abs(bm.x(c)) > 1e-12) sched.devices.push_back(Squeezer{c, bm.x(c), 0.0, 0.0});
  sched.devices.insert(sched.devices.end(), last.devices.begin(), last.devices.end());
  return sched;
}

}  // namespace lqss
