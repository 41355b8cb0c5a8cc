#include <gtest/gtest.h>

#include "lqss/errors.hpp"
#include "lqss/krein.hpp"
#include "support/oracles.hpp"

using namespace lqss;

namespace {

CMatrix random_du(Index r, Index s, std::mt19937_64& rng) { return random_doubled_up(r, s, rng).full(); }

}  // namespace

TEST(Krein, UnitMatrices) {
  EXPECT_EQ((j_matrix(2) - oracle::jmat(2)).norm(), 0.0);
  EXPECT_EQ((sigma_matrix(3) - oracle::smat(3)).norm(), 0.0);
  const CMatrix phi = phi_matrix(2);
  EXPECT_LT((phi * phi.adjoint() - CMatrix::Identity(4, 4)).norm(), 1e-15);
  const RMatrix jj = symplectic_unit(2);
  EXPECT_LT((jj * jj + RMatrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(Krein, FlatAdjointRules) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const CMatrix a = random_du(2, 3, rng), b = random_du(3, 1, rng);
    EXPECT_LT((flat_adjoint(a) - oracle::flat(a)).norm(), 1e-12);
    EXPECT_LT((flat_adjoint(a * b) - flat_adjoint(b) * flat_adjoint(a)).norm(), 1e-10);
    EXPECT_LT((flat_adjoint(flat_adjoint(a)) - a).norm(), 1e-12);
  }
}

TEST(Krein, DoubledUpRoundTripAndStructureError) {
  std::mt19937_64 rng(2);
  const DoubledUpMatrix x = random_doubled_up(2, 2, rng);
  EXPECT_LT(doubled_up_residual(x.full()), 1e-15);
  EXPECT_LT((DoubledUpMatrix::from_full(x.full()).full() - x.full()).norm(), 1e-15);
  CMatrix bad = x.full();
  bad(0, 3) += 0.1;
  try {
    DoubledUpMatrix::from_full(bad);
    FAIL() << "expected a structure error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::structure);
  }
}

TEST(Krein, BogoliubovGroup) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const BogoliubovMatrix r = random_bogoliubov(3, seed);
    EXPECT_LT(bogoliubov_residual(r.full()), 1e-10);
    EXPECT_LT((r.inverse().full() - oracle::flat(r.full())).norm(), 1e-10);
    const BogoliubovMatrix q = random_bogoliubov(3, seed + 100);
    EXPECT_LT(bogoliubov_residual((r * q).full()), 1e-10);
  }
  std::mt19937_64 rng(3);
  const BogoliubovMatrix p = BogoliubovMatrix::passive(random_unitary(3, rng));
  EXPECT_LT(p.matrix().x2().norm(), 1e-15);
  EXPECT_THROW(BogoliubovMatrix::from_full(2.0 * CMatrix::Identity(2, 2)), Error);
}

TEST(Krein, JInnerAndConjugate) {
  std::mt19937_64 rng(4);
  const CVector z = oracle::gaussian(4, 1, rng);
  const CVector cz = krein_conjugate(z);
  EXPECT_NEAR(std::abs(j_inner(cz, cz) + j_inner(z, z)), 0.0, 1e-12);
  EXPECT_LT((krein_conjugate(cz) - z).norm(), 1e-15);
}

TEST(Krein, PhiIsomorphism) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const DoubledUpMatrix a = random_doubled_up(2, 2, rng), b = random_doubled_up(2, 2, rng);
    const RMatrix ra = phi_to_real(a), rb = phi_to_real(b);
    EXPECT_LT((phi_to_doubled(ra).full() - a.full()).norm(), 1e-12);
    EXPECT_LT((phi_to_real(a * b) - ra * rb).norm(), 1e-10);
    EXPECT_LT((phi_to_real(a.flat()) - sharp_adjoint(ra)).norm(), 1e-10);
  }
  // Bogoliubov matrices become real symplectic
  const RMatrix s = phi_to_real(random_bogoliubov(2, 9).matrix());
  const RMatrix jj = symplectic_unit(2);
  EXPECT_LT((s.transpose() * jj * s - jj).norm(), 1e-10);
}

TEST(Krein, ExponentialIsBogoliubov) {
  std::mt19937_64 rng(6);
  const DoubledUpMatrix h = random_hermitian_doubled_up(3, rng, 0.7);
  const BogoliubovMatrix r = bogoliubov_exp(h);
  EXPECT_LT(bogoliubov_residual(r.full()), 1e-10);
  // generator check: exp(-iJH) to first order for a tiny H
  const BogoliubovMatrix small = bogoliubov_exp(1e-6 * h);
  const CMatrix lin = CMatrix::Identity(6, 6) - cd(0, 1e-6) * oracle::jmat(3) * h.full();
  EXPECT_LT((small.full() - lin).norm(), 1e-10);
}
