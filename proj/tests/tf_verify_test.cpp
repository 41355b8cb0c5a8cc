#include <gtest/gtest.h>

#include "lqss/errors.hpp"
#include "lqss/io.hpp"
#include "lqss/tf_verify.hpp"
#include "support/oracles.hpp"
#include "support/planting.hpp"
#include "support/reference_models.hpp"

using namespace lqss;

namespace {

Model wrap(const PassiveModel& p) {
  Model m;
  m.type = ModelType::passive;
  m.passive = p;
  return m;
}

Model wrap(const GeneralModel& g) {
  Model m;
  m.type = ModelType::general;
  m.general = g;
  return m;
}

}  // namespace

TEST(Grid, ShapeAndDeterminism) {
  const auto g = verification_grid(2.0, 20, 42);
  ASSERT_EQ(g.size(), 20u);
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_EQ(g[k].real(), k % 2 == 0 ? 0.0 : 0.1);
    EXPECT_GT(g[k].imag(), 2.0 * 1e-2 * 0.85);
    EXPECT_LT(g[k].imag(), 2.0 * 1e3 * 1.15);
  }
  EXPECT_EQ(verification_grid(2.0, 20, 42), g);
  EXPECT_NE(verification_grid(2.0, 20, 43), g);
  EXPECT_EQ(verification_grid(1.0, 1, 42).size(), 1u);
  EXPECT_THROW(verification_grid(1.0, 0, 42), Error);
}

TEST(Model, TransferFunctionsAgreeWithOracle) {
  const auto p = refdata::passive_three_mode();
  const auto g = refdata::active_two_mode();
  const cd s(0.1, 1.3);
  EXPECT_LT((wrap(p).tf(s) - oracle::passive_tf(p.m, p.n, p.s, s)).norm(), 1e-12);
  EXPECT_LT((wrap(g).tf(s) - oracle::general_tf(g.m.full(), g.n.full(), g.s.full(), s)).norm(), 1e-12);
  // the doubled-up form of a passive model is block diagonal in G and conj G(-conj s)
  const CMatrix gd = general_tf(GeneralModel::from_passive(p), s);
  EXPECT_LT((gd.topLeftCorner(3, 3) - passive_tf(p, s)).norm(), 1e-12);
  EXPECT_LT(gd.topRightCorner(3, 3).norm(), 1e-12);
}

TEST(Model, PoleRaises) {
  // undamped mode: the drift has an eigenvalue at -iM
  PassiveModel p;
  p.m = CMatrix::Constant(1, 1, 2.0);
  p.n = CMatrix::Zero(1, 1);
  p.s = CMatrix::Identity(1, 1);
  try {
    passive_state_space(p).eval(cd(0.0, -2.0));
    FAIL() << "expected a pole error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::pole);
  }
}

TEST(Verify, ReferenceModels) {
  double kappa[3] = {1, 2, 3};
  Model deg = wrap(refdata::degenerate_single_mode(0.7, kappa));
  deg.detunings = RVector::Constant(1, 0.7);
  const std::pair<Model, double> cases[] = {
      {wrap(refdata::passive_three_mode()), 1e-8}, {wrap(refdata::active_two_mode()), 1e-7}, {deg, 1e-10}};
  for (const auto& [model, tol] : cases) {
    const Netlist net = synthesize(model);
    const VerifyReport rep = verify(model, net, {20, 42, tol});
    EXPECT_TRUE(rep.pass) << rep.max_error;
    EXPECT_EQ(rep.samples.size(), 20u);
    EXPECT_LT(schedule_mismatch(net), 1e-8);
  }
}

TEST(Verify, DetectsPerturbedFeedback) {
  const Model model = wrap(refdata::passive_three_mode());
  Netlist net = synthesize(model);
  net.feedback(0, 1) += 1e-3;
  const VerifyReport rep = verify(model, net);
  EXPECT_FALSE(rep.pass);
  EXPECT_GT(rep.max_error, 1e-5);
}

TEST(Verify, UnitEigenvalueFeedback) {
  const Model model = wrap(refdata::passive_three_mode());
  Netlist net = synthesize(model);
  net.feedback = CMatrix::Identity(3, 3);
  try {
    netlist_tf(net, cd(0.0, 1.0));
    FAIL() << "expected a unit eigenvalue error";
  } catch (const UnitEigenvalueError& e) {
    EXPECT_LT(std::abs(e.eigenvalue() - cd(1.0)), 1e-9);
  }
}

TEST(Io, NetlistRoundTrip) {
  const Model model = wrap(refdata::active_two_mode());
  const Netlist net = synthesize(model);
  const Netlist back = io::netlist_from_json(io::to_json(net));
  for (cd s : verification_grid(1.0, 5, 7)) EXPECT_LT((netlist_tf(back, s) - netlist_tf(net, s)).norm(), 1e-12);
  EXPECT_EQ(back.bank.cavities.size(), net.bank.cavities.size());
  EXPECT_LT(schedule_mismatch(back), 1e-8);
}

TEST(Io, ModelRoundTripAndValidation) {
  const Model model = wrap(refdata::passive_three_mode());
  const Model back = io::model_from_json(io::to_json(model), 1e-9);
  EXPECT_LT((back.passive.n - model.passive.n).norm(), 1e-15);
  auto j = io::to_json(model);
  j["M"][0][1] = {9.0, 0.0};  // breaks Hermiticity
  try {
    io::model_from_json(j, 1e-9);
    FAIL() << "expected a validation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::validation);
  }
  j = io::to_json(model);
  j["schema_version"] = 99;
  EXPECT_THROW(io::model_from_json(j, 1e-9), Error);
}
