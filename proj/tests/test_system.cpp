#include <cmath>

#include <gtest/gtest.h>

#include "cylresp/errors.hpp"
#include "cylresp/system.hpp"
#include "testing.hpp"

using namespace cylresp;
using cylresp::testutil::Quad;

namespace {

const auto mg = reference_cylinder();

ExcitationSpec spec(Bvp bvp, int m, int k, double f, double a = 1e5, double b = 1e5, double c = 1e5) {
  return ExcitationSpec::at_hz(bvp, m, k, f, a, b, c);
}

CaseClassification<double> cls_of(const ExcitationSpec& ex) { return classify(mg, ex.m, ex.k, ex.omega); }

double vec_rel(const SmallVector<double>& a, const SmallVector<double>& b) {
  return (a - b).cwiseAbs().maxCoeff() / b.cwiseAbs().maxCoeff();
}

TEST(System, ReducedEntriesAreExact) {
  const auto ex = spec(Bvp::Two, 2, 1, 5000);
  const auto c = cls_of(ex);
  const auto e = system_entries(c, ex, mg);
  const double x1 = c.alpha1 * mg.R;
  EXPECT_EQ(e.p, 2.0 / mg.R * besselI(2, x1));
  EXPECT_EQ(e.v, c.alpha1 * besselI(3, x1));
  EXPECT_TRUE(std::isnan(e.F));
  EXPECT_DOUBLE_EQ(e.rhsA, 1e5 * mg.R / (2 * mg.mu));
  EXPECT_DOUBLE_EQ(e.rhsC, 1e5 * mg.L / (M_PI * mg.mu));
}

TEST(System, MatrixAgreesWithQuadPrecision) {
  const auto ex = spec(Bvp::Two, 2, 1, 5000);
  const auto A = assemble_system(cls_of(ex), ex, mg).matrix;
  const auto mq = mg.cast<Quad>();
  const auto Aq = assemble_system(classify(mq, 2, 1, Quad(ex.omega)), ex, mq).matrix;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_LT(std::abs(A(i, j) - static_cast<double>(Aq(i, j))), 1e-14 * std::abs(A(i, j))) << i << j;
}

TEST(System, BvpSignMap) {
  for (double f : {5000.0, 15000.0, 25000.0}) {
    const auto e1 = spec(Bvp::One, 2, 1, f), e2 = spec(Bvp::Two, 2, 1, f);
    const auto s1 = assemble_system(cls_of(e1), e1, mg);
    const auto s2 = assemble_system(cls_of(e2), e2, mg);
    EXPECT_EQ(s1.matrix.leftCols(2), s2.matrix.leftCols(2));
    EXPECT_EQ(s1.matrix.col(2), -s2.matrix.col(2));
    EXPECT_EQ(s1.rhs(0), s2.rhs(0));
    EXPECT_EQ(s1.rhs(1), -s2.rhs(1));
    EXPECT_EQ(s1.rhs(2), s2.rhs(2));
  }
}

TEST(System, CofactorDeterminant) {
  for (int m = 1; m <= 3; ++m)
    for (double f : {2000.0, 5000.0, 15000.0, 25000.0, 60000.0}) {
      const auto ex = spec(Bvp::One, m, 1, f);
      const auto c = cls_of(ex);
      const auto e = system_entries(c, ex, mg);
      const auto cf = closed_form_coefficients(composites(e));
      const auto A = assemble_system(c, ex, mg).matrix;
      const double scale = A.cwiseAbs().rowwise().maxCoeff().prod();
      EXPECT_LT(std::abs(cf.D - A.determinant()), 1e-11 * scale) << m << " " << f;
      const auto ex2 = spec(Bvp::Two, m, 1, f);
      const auto A2 = assemble_system(c, ex2, mg).matrix;
      EXPECT_LT(std::abs(cf.D + A2.determinant()), 1e-11 * scale);
    }
}

TEST(System, DeltaSigns) {
  EXPECT_EQ(delta_signs(Bvp::One), (std::array<int, 3>{-1, 1, 1}));
  EXPECT_EQ(delta_signs(Bvp::Two), (std::array<int, 3>{-1, 1, -1}));
  const auto s = solve(mg, spec(Bvp::Two, 1, 1, 5000));
  EXPECT_EQ(s.delta_signs, delta_signs(Bvp::Two));
}

TEST(System, M1ReductionMatchesGeneralForm) {
  for (auto bvp : {Bvp::One, Bvp::Two})
    for (int k = 1; k <= 3; ++k)
      for (double f : testutil::spanning_frequencies(mg, k, 4, 3, 3)) {
        const auto ex = spec(bvp, 1, k, f);
        const auto c = cls_of(ex);
        const auto e = system_entries(c, ex, mg);
        const auto gen = closed_form_coefficients(composites(e));
        const auto red = closed_form_coefficients_m1(e);
        EXPECT_LT(std::abs(gen.D - red.D), 1e-13 * std::abs(gen.D)) << to_string(c.case_id) << f;
        const auto rhs = assemble_system(c, ex, mg).rhs;
        const SmallVector<double> a = gen.C * rhs / gen.D, b = red.C * rhs / red.D;
        EXPECT_LT(vec_rel(b, a), 1e-13) << to_string(c.case_id) << f;
      }
  const auto ex = spec(Bvp::One, 2, 1, 5000);
  EXPECT_THROW(closed_form_coefficients_m1(system_entries(cls_of(ex), ex, mg)), RoutingError);
}

TEST(System, ClosedFormMatchesElimination) {
  for (auto bvp : {Bvp::One, Bvp::Two})
    for (int m = 0; m <= 3; ++m)
      for (int k = 1; k <= 5; ++k)
        for (double f0 : testutil::spanning_frequencies(mg, k, 3, 2, 2)) {
          const double f = testutil::off_resonance(mg, bvp, m, k, f0);
          const auto ex = spec(bvp, m, k, f, 1e5, -2e5, 3e5);
          const auto a = solve(mg, ex, SolveMethod::ClosedForm);
          const auto b = solve(mg, ex, SolveMethod::Generic);
          EXPECT_EQ(a.case_id, b.case_id);
          EXPECT_LT(vec_rel(a.amplitudes, b.amplitudes), 1e-11) << to_string(bvp) << " m" << m << " k" << k << " f" << f;
        }
}

TEST(System, ZeroLoadGivesZeroAmplitudes) {
  for (int m = 0; m <= 2; ++m) {
    const auto s = solve(mg, spec(Bvp::One, m, 1, 7000, 0, 0, 0));
    EXPECT_TRUE(s.amplitudes.isZero(0.0));
  }
}

TEST(System, Linearity) {
  for (int m = 0; m <= 2; ++m)
    for (auto method : {SolveMethod::ClosedForm, SolveMethod::Generic}) {
      const auto a = solve(mg, spec(Bvp::Two, m, 2, 9000, 1e5, 2e5, 3e5), method);
      const auto b = solve(mg, spec(Bvp::Two, m, 2, 9000, 2e5, 4e5, 6e5), method);
      EXPECT_EQ(b.amplitudes, 2.0 * a.amplitudes);
    }
}

TEST(System, GenericSolver) {
  SmallMatrix<double> A(3, 3);
  A << 2, 1, 0, 1, 3, 1, 0, 1, 4;
  SmallVector<double> b(3);
  b << 3, 5, 5;
  const auto x = solve_generic<double>(A, b);
  EXPECT_NEAR(x(0), 1, 1e-15);
  EXPECT_NEAR(x(1), 1, 1e-15);
  EXPECT_NEAR(x(2), 1, 1e-15);

  SmallMatrix<double> S(2, 2);
  S << 1, 2, 2, 4;
  SmallVector<double> c(2);
  c << 1, 1;
  EXPECT_THROW(solve_generic<double>(S, c), SingularSystemError);
  EXPECT_THROW(solve_generic<double>(A, c), DomainError);
}

TEST(System, KZero) {
  for (int m = 0; m <= 3; ++m) {
    const auto ex = spec(Bvp::Two, m, 0, 12000, 0, 0, 2.5e5);
    const auto s = solve(mg, ex);
    EXPECT_EQ(s.case_id, CaseId::KZero);
    const double a = ex.omega * std::sqrt(mg.rho / mg.mu);
    const double den = m / mg.R * std::cyl_bessel_j(m, a * mg.R) - a * std::cyl_bessel_j(m + 1, a * mg.R);
    ASSERT_EQ(s.amplitudes.size(), 1);
    EXPECT_LT(testutil::rel(s.amplitudes(0), 2.5e5 / (mg.mu * den)), 1e-13);
    EXPECT_LT(testutil::rel(s.determinant, den), 1e-13);
    EXPECT_LT(testutil::rel(system_determinant(mg, ex).determinant, den), 1e-13);
  }
}

TEST(System, Axisymmetric2x2) {
  for (double f : {5000.0, 15000.0, 25000.0}) {
    const auto ex = spec(Bvp::Two, 0, 1, f);
    const auto c = cls_of(ex);
    const auto sys = assemble_axisymmetric_system(c, ex, mg);
    ASSERT_EQ(sys.matrix.rows(), 2);
    const auto s = solve(mg, ex);
    EXPECT_EQ(s.determinant, sys.matrix.determinant());
    EXPECT_LT((sys.matrix * s.amplitudes - sys.rhs).cwiseAbs().maxCoeff(), 1e-13 * sys.rhs.cwiseAbs().maxCoeff());
  }
}

TEST(System, Torsional1x1) {
  for (double f : {5000.0, 15000.0, 25000.0}) {
    const auto ex = spec(Bvp::One, 0, 1, f);
    const auto c = cls_of(ex);
    const auto sys = assemble_torsional_system(c, ex, mg);
    ASSERT_EQ(sys.matrix.rows(), 1);
    const auto s = solve(mg, ex);
    EXPECT_LT(testutil::rel(sys.matrix(0, 0) * s.amplitudes(0), sys.rhs(0)), 1e-14);
  }
}

TEST(System, Routing) {
  const auto ex0 = spec(Bvp::Two, 0, 1, 5000);
  EXPECT_THROW(assemble_system(cls_of(ex0), ex0, mg), RoutingError);
  EXPECT_THROW(assemble_torsional_system(cls_of(ex0), ex0, mg), RoutingError);
  const auto exk = spec(Bvp::Two, 1, 0, 5000);
  EXPECT_THROW(assemble_system(cls_of(exk), exk, mg), RoutingError);
  const auto ex1 = spec(Bvp::One, 0, 1, 5000);
  EXPECT_THROW(assemble_axisymmetric_system(cls_of(ex1), ex1, mg), RoutingError);
  EXPECT_THROW(solve_k0(ex1, mg), RoutingError);
}

TEST(System, SingularAndResonant) {
  const double fs = case_boundaries_hz(mg, 1).first;
  EXPECT_THROW(solve(mg, spec(Bvp::Two, 1, 1, fs)), DomainError);
  const auto d = system_determinant(mg, spec(Bvp::Two, 1, 1, fs));
  EXPECT_TRUE(is_singular(d.case_id));

  SolveOptions strict;
  strict.determinant_floor = 2.0;  // no row-scaled determinant reaches this
  try {
    solve(mg, spec(Bvp::Two, 1, 1, 5000), SolveMethod::ClosedForm, strict);
    FAIL() << "expected ResonanceError";
  } catch (const ResonanceError& e) {
    EXPECT_NE(e.determinant(), 0.0);
  }
}

TEST(System, DeterminantSampleMatchesSolve) {
  for (int m = 0; m <= 2; ++m)
    for (auto bvp : {Bvp::One, Bvp::Two}) {
      const auto ex = spec(bvp, m, 2, 13000);
      EXPECT_EQ(system_determinant(mg, ex).determinant, solve(mg, ex).determinant);
    }
}

}  // namespace
