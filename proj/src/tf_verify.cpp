#include "lqss/tf_verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "lqss/errors.hpp"

namespace lqss {

Index Model::modes() const { return type == ModelType::passive ? passive.modes() : general.modes(); }

Index Model::channels() const {
  return type == ModelType::passive ? passive.channels() : general.channels();
}

CMatrix Model::tf(cd s) const {
  return type == ModelType::passive ? passive_tf(passive, s) : general_tf(general, s);
}

double Model::hamiltonian_norm() const {
  return type == ModelType::passive ? passive.m.norm() : general.m.full().norm();
}

namespace {

std::vector<ClassSummary> summarize(const KreinSpectrum& spectrum) {
  std::vector<ClassSummary> out;
  for (const auto& c : spectrum.classes) out.push_back({to_string(c.kind), c.value});
  return out;
}

}  // namespace

Netlist make_netlist(const PassiveRealization& real) {
  Netlist net;
  net.type = ModelType::passive;
  net.modes = real.m_hat.rows();
  net.channels = real.post.rows();
  net.pre = real.pre;
  net.post = real.post;
  net.pre_schedule = reck_decompose(real.pre);
  net.post_schedule = reck_decompose(real.post);
  net.bank = real.bank;
  net.feedback = real.r;
  net.feedback_schedule = reck_decompose(real.r);
  net.n_hat = real.svd.n_hat;
  net.m_hat = real.m_hat;
  net.m_conc = real.detunings.cast<cd>().asDiagonal();
  net.x = real.x;
  for (Index i = 0; i < net.modes; ++i) {
    if (i < real.svd.rank) {
      const double k = std::norm(real.svd.n_hat(i, i));
      net.classes.push_back({to_string(EigenClassKind::real_positive), k});
    } else {
      net.classes.push_back({to_string(EigenClassKind::zero_kernel), 0.0});
    }
  }
  net.residuals["svd"] = real.svd.residual;
  net.residuals["cayley_round_trip"] = (cayley(real.r) - real.x).norm();
  net.residuals["feedback_unitarity"] =
      (real.r.adjoint() * real.r - CMatrix::Identity(net.modes, net.modes)).norm();
  return net;
}

Netlist make_netlist(const GeneralRealization& real) {
  Netlist net;
  net.type = ModelType::general;
  net.modes = real.m_hat.rows() / 2;
  net.channels = real.post.rows() / 2;
  net.pre = real.pre;
  net.post = real.post;
  net.pre_schedule = schedule_static(BogoliubovMatrix::from_full(real.pre, 1e-8));
  net.post_schedule = schedule_static(real.svd.v);
  net.bank = real.bank;
  net.feedback = real.r;
  net.feedback_schedule = schedule_static(BogoliubovMatrix::from_full(real.r, 1e-8));
  net.n_hat = real.svd.n_hat.full();
  net.m_hat = real.m_hat;
  net.m_conc = real.m_conc;
  net.x = real.x;
  net.classes = summarize(real.svd.spectrum);
  net.residuals["bogoliubov_svd"] = real.svd.residual;
  net.residuals["cavity_bank"] = real.bank_residual;
  net.residuals["cayley_round_trip"] = (general_cayley(real.r) - real.x).norm();
  net.residuals["feedback_bogoliubov"] = bogoliubov_residual(real.r);
  net.residuals["interconnect_retries"] = real.retries;
  return net;
}

Netlist synthesize(const Model& model, std::uint64_t seed) {
  if (model.type == ModelType::passive) {
    PassiveSynthOptions opts;
    opts.detunings = model.detunings;
    opts.interconnect_kappa = model.interconnect_kappa;
    return make_netlist(synthesize_passive(model.passive, opts));
  }
  GeneralSynthOptions opts;
  opts.detunings = model.detunings;
  opts.interconnect_kappa = model.interconnect_kappa;
  opts.seed = seed;
  return make_netlist(synthesize_general(model.general, opts));
}

namespace {

StateSpace passive_part(const StateSpace& ss, Index n, Index p) {
  StateSpace out;
  out.a = ss.a.topLeftCorner(n, n);
  out.b = ss.b.topLeftCorner(n, p);
  out.c = ss.c.topLeftCorner(p, n);
  out.d = ss.d.topLeftCorner(p, p);
  return out;
}

}  // namespace

CMatrix netlist_tf(const Netlist& net, cd s) {
  const Index n = static_cast<Index>(net.bank.cavities.size());
  if (n != net.modes || net.bank.channels != net.channels)
    throw Error(ErrorKind::validation, "netlist cavity bank does not match its declared size");
  const StateSpace open = bank_state_space(net.bank);
  StateSpace closed;
  if (net.type == ModelType::passive) {
    for (const auto& c : net.bank.cavities)
      for (const auto& p : c.ports)
        if (std::abs(p.active) != 0.0)
          throw Error(ErrorKind::validation, "passive netlist contains an active port");
    closed = close_feedback_passive(passive_part(open, n, net.channels + n), n, net.feedback);
  } else {
    closed = close_feedback(open, n, net.feedback);
  }
  return net.post * closed.eval(s) * net.pre;
}

double schedule_mismatch(const Netlist& net) {
  return std::max({(net.pre_schedule.matrix() - net.pre).norm(),
                   (net.post_schedule.matrix() - net.post).norm(),
                   (net.feedback_schedule.matrix() - net.feedback).norm()});
}

std::vector<cd> verification_grid(double scale, int count, std::uint64_t seed) {
  if (count < 1) throw Error(ErrorKind::validation, "need at least one verification frequency");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  std::vector<cd> grid;
  for (int k = 0; k < count; ++k) {
    const double e = count == 1 ? 0.0 : -2.0 + 5.0 * k / (count - 1);
    const double w = scale * std::pow(10.0, e + jitter(rng));
    grid.emplace_back(k % 2 == 0 ? 0.0 : 0.1, w);
  }
  return grid;
}

VerifyReport compare_tf(const std::function<CMatrix(cd)>& reference,
                        const std::function<CMatrix(cd)>& candidate,
                        const std::vector<cd>& grid, double tol) {
  VerifyReport rep;
  rep.tol = tol;
  for (const cd s : grid) {
    const CMatrix g = reference(s);
    const CMatrix h = candidate(s);
    if (g.rows() != h.rows() || g.cols() != h.cols())
      throw Error(ErrorKind::validation, "transfer functions have different shapes");
    const double e = (g - h).norm() / (1.0 + g.norm());
    rep.samples.push_back({s, e});
    rep.max_error = std::max(rep.max_error, std::isnan(e) ? INFINITY : e);
  }
  rep.pass = rep.max_error < tol;
  return rep;
}

VerifyReport verify(const Model& model, const Netlist& net, const VerifyOptions& opts) {
  if (model.type != net.type)
    throw Error(ErrorKind::validation, "model and netlist are of different types");
  if (model.modes() != net.modes || model.channels() != net.channels)
    throw Error(ErrorKind::validation, "model and netlist sizes differ");
  const double scale = std::max(1.0, model.hamiltonian_norm());
  const auto grid = verification_grid(scale, opts.freqs, opts.seed);
  return compare_tf([&](cd s) { return model.tf(s); }, [&](cd s) { return netlist_tf(net, s); },
                    grid, opts.tol);
}

}  // namespace lqss
