#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cylresp/classify.hpp"
#include "cylresp/errors.hpp"

using namespace cylresp;

namespace {

const auto mg = reference_cylinder();

double w(double f_hz) { return 2 * std::numbers::pi * f_hz; }

TEST(Classify, ReferenceCylinderK1) {
  EXPECT_EQ(classify(mg, 1, 1, w(5000)).case_id, CaseId::Case1);
  EXPECT_EQ(classify(mg, 1, 1, w(15000)).case_id, CaseId::Case3);
  EXPECT_EQ(classify(mg, 1, 1, w(25000)).case_id, CaseId::Case2);
  EXPECT_EQ(classify(mg, 3, 0, w(25000)).case_id, CaseId::KZero);
}

TEST(Classify, Boundaries) {
  const auto [fs, fd] = case_boundaries_hz(mg, 1);
  EXPECT_NEAR(fs, 10074.5, 0.5);  // sqrt(mu/rho) / 2L
  EXPECT_NEAR(fd, 18847.7, 0.5);
  EXPECT_EQ(classify(mg, 0, 1, w(fs)).case_id, CaseId::Singular2);
  EXPECT_EQ(classify(mg, 0, 1, w(fd)).case_id, CaseId::Singular1);
  EXPECT_TRUE(is_singular(classify(mg, 0, 1, w(fd * (1 + 1e-11))).case_id));

  const auto near = classify(mg, 0, 1, w(fs * (1 + 1e-7)));
  EXPECT_EQ(near.case_id, CaseId::Case3);
  EXPECT_TRUE(near.near_boundary);
  EXPECT_FALSE(classify(mg, 0, 1, w(fs * 1.01)).near_boundary);
}

TEST(Classify, BranchParameters) {
  for (double f : {3000.0, 14000.0, 30000.0}) {
    const auto c = classify(mg, 2, 1, w(f));
    const double rw2 = mg.rho * w(f) * w(f);
    const double kz = std::numbers::pi / mg.L;
    EXPECT_DOUBLE_EQ(c.kz, kz);
    EXPECT_NEAR(c.alpha1 * c.alpha1, std::abs(kz * kz - rw2 / (mg.lambda + 2 * mg.mu)), 1e-10 * kz * kz);
    EXPECT_NEAR(c.alpha2 * c.alpha2, std::abs(kz * kz - rw2 / mg.mu), 1e-10 * kz * kz);
    // kz^2 gamma2 = +alpha2^2 in case 1, -alpha2^2 otherwise
    const double sgn = c.case_id == CaseId::Case1 ? 1.0 : -1.0;
    EXPECT_NEAR(kz * kz * c.gamma2, sgn * c.alpha2 * c.alpha2, 1e-9 * kz * kz);
    EXPECT_EQ(c.gamma1, 1.0);
    EXPECT_DOUBLE_EQ(c.kappa, -kz * kz);
    EXPECT_DOUBLE_EQ(c.tau, -w(f) * w(f));
  }
}

TEST(Classify, BesselKinds) {
  const auto c1 = classify(mg, 1, 1, w(5000));
  const auto c2 = classify(mg, 1, 1, w(25000));
  const auto c3 = classify(mg, 1, 1, w(15000));
  EXPECT_EQ(c1.eps1(), 1);
  EXPECT_EQ(c1.eps2(), 1);
  EXPECT_EQ(c2.eps1(), -1);
  EXPECT_EQ(c2.eps2(), -1);
  EXPECT_EQ(c3.eps1(), 1);
  EXPECT_EQ(c3.eps2(), -1);
}

TEST(Classify, KZeroWavenumber) {
  const auto c = classify(mg, 2, 0, w(8000));
  EXPECT_NEAR(c.alpha2, w(8000) * std::sqrt(mg.rho / mg.mu), 1e-12 * c.alpha2);
}

TEST(Classify, RejectsBadInput) {
  EXPECT_THROW(classify(mg, -1, 1, w(1000)), DomainError);
  EXPECT_THROW(classify(mg, 0, -1, w(1000)), DomainError);
  EXPECT_THROW(classify(mg, 0, 1, 0.0), DomainError);
}

TEST(Classify, CaseOrderIsMonotoneInFrequency) {
  for (int k = 1; k <= 5; ++k) {
    int stage = 0;  // 0: case 1, 1: case 3, 2: case 2
    for (double f = 100; f < 150000; f *= 1.01) {
      const auto id = classify(mg, 0, k, w(f)).case_id;
      const int s = id == CaseId::Case1 ? 0 : id == CaseId::Case3 ? 1 : 2;
      EXPECT_GE(s, stage);
      stage = s;
    }
    EXPECT_EQ(stage, 2);
  }
}

}  // namespace
