#pragma once

// Boundary-condition systems on the curved surface and their solution.
//
// For m >= 1 the three conditions (normal, circumferential shear, axial shear)
// form a 3x3 system in (A1, A2, A3). Its entries are written in terms of
//   lower case  f g h p q v w   for branches whose radial part is I_m
//   upper case  F G H P Q V W   for branches whose radial part is J_m
// and, per case, collapse into the composite entries
//   row 1:  a1  a2  -c2
//   row 2:  b1  c2  -d2
//   row 3:  2 e1  (1+g2) e2  -q2
// BVP2 flips the sign of column 3 and of the second right-hand side.

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cylresp/bessel.hpp"
#include "cylresp/classify.hpp"
#include "cylresp/errors.hpp"
#include "cylresp/model.hpp"
#include "cylresp/scalar.hpp"

namespace cylresp {

template <typename Scalar>
using SmallVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, 3, 1>;
template <typename Scalar>
using SmallMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

enum class SolveMethod { ClosedForm, Generic };

struct SolveOptions {
  double determinant_floor = 1e-300;          // on the row-scaled determinant
  double near_resonance_threshold = 1e-8;     // quality flag only
};

template <typename Scalar>
struct SystemEntries {
  Bvp bvp = Bvp::Two;
  CaseId case_id = CaseId::Case1;
  int m = 0;
  // NaN where the corresponding branch does not use that kind of Bessel function
  Scalar f, g, h, p, q, v, w;
  Scalar F, G, H, P, Q, V, W;
  Scalar beta1, beta2, eta1, eta2;
  Scalar gamma2;
  Scalar rhsA, rhsB, rhsC;  // A R / 2mu, B R / 2mu, C L / (k pi mu)
};

template <typename Scalar>
struct LinearSystem {
  SmallMatrix<Scalar> matrix;
  SmallVector<Scalar> rhs;
};

template <typename Scalar>
struct Composites {
  Scalar a1, b1, e1;
  Scalar a2, c2, d2, e2, q2;
  Scalar opg;  // 1 + gamma2
};

/// Closed-form cofactor coefficients: C(i, 0..2) multiply (A, B, C) of row i.
template <typename Scalar>
struct ClosedFormCoefficients {
  Eigen::Matrix<Scalar, 3, 3> C;
  Scalar D;
};

template <typename Scalar>
struct ModalSolution {
  Bvp bvp = Bvp::Two;
  CaseId case_id = CaseId::Case1;
  int m = 0;
  int k = 0;
  Scalar omega{};
  SolveMethod method = SolveMethod::ClosedForm;
  // (A1, A2, A3) for m >= 1; (A1, A2) for m = 0 BVP2; (A3) for m = 0 BVP1; (A) for k = 0
  SmallVector<Scalar> amplitudes;
  std::array<int, 3> delta_signs{0, 0, 0};
  Scalar determinant{};
  Scalar scaled_determinant{};
  bool near_resonance = false;
};

namespace internal {

template <typename Scalar>
Scalar nan() {
  return std::numeric_limits<Scalar>::quiet_NaN();
}

template <typename Scalar>
void bessel_pair(int eps, int m, Scalar x, Scalar& zm, Scalar& zm1) {
  std::array<Scalar, 2> buf;
  if (m == 0) {
    // sequences start at order zero
    if (eps > 0) besselISequence(x, std::span<Scalar>(buf));
    else besselJSequence(x, std::span<Scalar>(buf));
    zm = buf[0];
    zm1 = buf[1];
    return;
  }
  if (eps > 0) {
    zm = besselI(m, x);
    zm1 = besselI(m + 1, x);
  } else {
    zm = besselJ(m, x);
    zm1 = besselJ(m + 1, x);
  }
}

template <typename Scalar>
Scalar row_scaled_det(const SmallMatrix<Scalar>& A) {
  Scalar scale(1);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Scalar rmax(0);
    for (Eigen::Index j = 0; j < A.cols(); ++j) rmax = std::max(rmax, Scalar(abs(A(i, j))));
    if (rmax == Scalar(0)) return Scalar(0);
    scale *= rmax;
  }
  return A.determinant() / scale;
}

inline void check_solvable(CaseId c) {
  if (c == CaseId::KZero) throw RoutingError("k = 0 is solved by the dedicated k = 0 path");
  if (is_singular(c)) throw DomainError(std::string("singular parameter set (") + to_string(c) + ") is not solvable");
}

}  // namespace internal

/// Evaluates the raw entries for the active case.
template <typename Scalar>
SystemEntries<Scalar> system_entries(const CaseClassification<Scalar>& cls, const ExcitationSpec& ex,
                                     const MaterialGeometry<Scalar>& mg) {
  internal::check_solvable(cls.case_id);
  const Scalar nan = internal::nan<Scalar>();
  SystemEntries<Scalar> e;
  e.bvp = ex.bvp;
  e.case_id = cls.case_id;
  e.m = ex.m;
  e.f = e.g = e.h = e.p = e.q = e.v = e.w = nan;
  e.F = e.G = e.H = e.P = e.Q = e.V = e.W = nan;
  e.beta1 = e.beta2 = e.eta1 = e.eta2 = nan;
  const int m = ex.m;
  const Scalar R = mg.R;
  const Scalar lam = mg.lambda, mu = mg.mu;
  const Scalar kz2 = cls.kz * cls.kz;
  const Scalar a1 = cls.alpha1, a2 = cls.alpha2;
  const Scalar mm1 = Scalar(m) * Scalar(m - 1) / R;
  e.gamma2 = cls.gamma2;

  Scalar z1m, z1m1, z2m, z2m1;
  internal::bessel_pair(cls.eps1(), m, a1 * R, z1m, z1m1);
  internal::bessel_pair(cls.eps2(), m, a2 * R, z2m, z2m1);

  if (cls.eps1() > 0) {
    e.beta1 = lam * (a1 * a1 - cls.gamma1 * kz2) + 2 * mu * a1 * a1;
    e.f = (e.beta1 * R / (2 * mu) + mm1) * z1m;
    e.p = Scalar(m) / R * z1m;
    e.v = a1 * z1m1;
  } else {
    e.eta1 = lam * (a1 * a1 + cls.gamma1 * kz2) + 2 * mu * a1 * a1;
    e.F = (-e.eta1 * R / (2 * mu) + mm1) * z1m;
    e.P = Scalar(m) / R * z1m;
    e.V = a1 * z1m1;
  }
  if (cls.eps2() > 0) {
    e.beta2 = lam * (a2 * a2 - cls.gamma2 * kz2) + 2 * mu * a2 * a2;
    e.g = (e.beta2 * R / (2 * mu) + mm1) * z2m;
    e.h = (a2 * a2 * R / 2 + mm1) * z2m;
    e.q = Scalar(m) / R * z2m;
    e.w = a2 * z2m1;
  } else {
    e.eta2 = lam * (a2 * a2 + cls.gamma2 * kz2) + 2 * mu * a2 * a2;
    e.G = (-e.eta2 * R / (2 * mu) + mm1) * z2m;
    e.H = (-a2 * a2 * R / 2 + mm1) * z2m;
    e.Q = Scalar(m) / R * z2m;
    e.W = a2 * z2m1;
  }
  e.rhsA = Scalar(ex.ampA) * R / (2 * mu);
  e.rhsB = Scalar(ex.ampB) * R / (2 * mu);
  e.rhsC = Scalar(ex.ampC) * mg.L / (Scalar(ex.k) * pi<Scalar>() * mu);
  return e;
}

template <typename Scalar>
Composites<Scalar> composites(const SystemEntries<Scalar>& e) {
  const Scalar m(e.m), m1(e.m - 1);
  Composites<Scalar> c;
  const bool lower1 = e.case_id != CaseId::Case2;
  const bool lower2 = e.case_id == CaseId::Case1;
  if (lower1) {
    c.a1 = e.f - e.v;
    c.b1 = m1 * e.p + m * e.v;
    c.e1 = e.p + e.v;
  } else {
    c.a1 = e.F + e.V;
    c.b1 = m1 * e.P - m * e.V;
    c.e1 = e.P - e.V;
  }
  if (lower2) {
    c.a2 = e.g - e.w;
    c.c2 = m1 * e.q + m * e.w;
    c.d2 = e.h - e.w;
    c.e2 = e.q + e.w;
    c.q2 = e.q;
  } else {
    c.a2 = e.G + e.W;
    c.c2 = m1 * e.Q - m * e.W;
    c.d2 = e.H + e.W;
    c.e2 = e.Q - e.W;
    c.q2 = e.Q;
  }
  c.opg = Scalar(1) + e.gamma2;
  return c;
}

/// 3x3 system for m >= 1.
template <typename Scalar>
LinearSystem<Scalar> assemble_system(const CaseClassification<Scalar>& cls, const ExcitationSpec& ex,
                                     const MaterialGeometry<Scalar>& mg) {
  internal::check_solvable(cls.case_id);
  if (ex.m == 0) throw RoutingError("m = 0 is solved by the reduced axisymmetric/torsional systems");
  const auto e = system_entries(cls, ex, mg);
  const auto c = composites(e);
  const Scalar s3 = ex.bvp == Bvp::One ? Scalar(1) : Scalar(-1);
  LinearSystem<Scalar> sys;
  sys.matrix.resize(3, 3);
  sys.matrix << c.a1, c.a2, -s3 * c.c2,
                c.b1, c.c2, -s3 * c.d2,
                2 * c.e1, c.opg * c.e2, -s3 * c.q2;
  sys.rhs.resize(3);
  sys.rhs << e.rhsA, s3 * e.rhsB, e.rhsC;
  return sys;
}

/// 2x2 system for BVP2 with m = 0 (the circumferential condition is void).
template <typename Scalar>
LinearSystem<Scalar> assemble_axisymmetric_system(const CaseClassification<Scalar>& cls, const ExcitationSpec& ex,
                                                  const MaterialGeometry<Scalar>& mg) {
  internal::check_solvable(cls.case_id);
  if (ex.bvp != Bvp::Two) throw RoutingError("the 2x2 axisymmetric system belongs to BVP2");
  if (ex.m != 0) throw RoutingError("the 2x2 axisymmetric system needs m = 0");
  const auto e = system_entries(cls, ex, mg);
  LinearSystem<Scalar> sys;
  sys.matrix.resize(2, 2);
  switch (cls.case_id) {
    case CaseId::Case1:
      sys.matrix << e.f - e.v, e.g - e.w,
                    2 * e.v, (1 + e.gamma2) * e.w;
      break;
    case CaseId::Case2:
      sys.matrix << e.F + e.V, e.G + e.W,
                    -2 * e.V, -(1 + e.gamma2) * e.W;
      break;
    default:
      sys.matrix << e.f - e.v, e.G + e.W,
                    2 * e.v, -(1 + e.gamma2) * e.W;
      break;
  }
  sys.rhs.resize(2);
  sys.rhs << e.rhsA, e.rhsC;
  return sys;
}

/// 1x1 system for BVP1 with m = 0: only the circumferential shear survives.
template <typename Scalar>
LinearSystem<Scalar> assemble_torsional_system(const CaseClassification<Scalar>& cls, const ExcitationSpec& ex,
                                               const MaterialGeometry<Scalar>& mg) {
  internal::check_solvable(cls.case_id);
  if (ex.bvp != Bvp::One || ex.m != 0) throw RoutingError("the torsional system needs BVP1 with m = 0");
  const auto e = system_entries(cls, ex, mg);
  const auto c = composites(e);
  LinearSystem<Scalar> sys;
  sys.matrix.resize(1, 1);
  sys.matrix(0, 0) = -c.d2;
  sys.rhs.resize(1);
  sys.rhs(0) = e.rhsB;
  return sys;
}

/// General-m cofactor coefficients and determinant.
template <typename Scalar>
ClosedFormCoefficients<Scalar> closed_form_coefficients(const Composites<Scalar>& c) {
  ClosedFormCoefficients<Scalar> out;
  auto& C = out.C;
  C(0, 0) = c.c2 * c.q2 - c.opg * c.d2 * c.e2;
  C(0, 1) = c.opg * c.c2 * c.e2 - c.a2 * c.q2;
  C(0, 2) = c.a2 * c.d2 - c.c2 * c.c2;
  C(1, 0) = c.b1 * c.q2 - 2 * c.d2 * c.e1;
  C(1, 1) = 2 * c.c2 * c.e1 - c.a1 * c.q2;
  C(1, 2) = c.a1 * c.d2 - c.c2 * c.b1;
  C(2, 0) = c.opg * c.b1 * c.e2 - 2 * c.c2 * c.e1;
  C(2, 1) = 2 * c.a2 * c.e1 - c.opg * c.a1 * c.e2;
  C(2, 2) = c.a1 * c.c2 - c.a2 * c.b1;
  out.D = 2 * (c.c2 * c.c2 - c.a2 * c.d2) * c.e1 + c.opg * (c.a1 * c.d2 - c.c2 * c.b1) * c.e2 +
          (c.a2 * c.b1 - c.a1 * c.c2) * c.q2;
  return out;
}

/// The same coefficients written out for m = 1 directly in the raw entries.
template <typename Scalar>
ClosedFormCoefficients<Scalar> closed_form_coefficients_m1(const SystemEntries<Scalar>& e) {
  if (e.m != 1) throw RoutingError("reduced coefficients are for m = 1 only");
  ClosedFormCoefficients<Scalar> out;
  auto& C = out.C;
  const Scalar og = 1 + e.gamma2;
  switch (e.case_id) {
    case CaseId::Case1: {
      const Scalar f = e.f, g = e.g, h = e.h, p = e.p, q = e.q, v = e.v, w = e.w;
      C(0, 0) = q * w - og * (h - w) * (q + w);
      C(0, 1) = og * (q + w) * w - (g - w) * q;
      C(0, 2) = (g - w) * (h - w) - w * w;
      C(1, 0) = q * v - 2 * (h - w) * (p + v);
      C(1, 1) = 2 * (p + v) * w - (f - v) * q;
      C(1, 2) = (f - v) * (h - w) - v * w;
      C(2, 0) = og * (q + w) * v - 2 * (p + v) * w;
      C(2, 1) = 2 * (g - w) * (p + v) - og * (f - v) * (q + w);
      C(2, 2) = (f - v) * w - (g - w) * v;
      out.D = 2 * (w * w - (g - w) * (h - w)) * (p + v) + og * ((f - v) * (h - w) - v * w) * (q + w) +
              ((g - w) * v - (f - v) * w) * q;
      break;
    }
    case CaseId::Case2: {
      const Scalar F = e.F, G = e.G, H = e.H, P = e.P, Q = e.Q, V = e.V, W = e.W;
      C(0, 0) = -Q * W - og * (H + W) * (Q - W);
      C(0, 1) = -og * (Q - W) * W - (G + W) * Q;
      C(0, 2) = (G + W) * (H + W) - W * W;
      C(1, 0) = -Q * V - 2 * (H + W) * (P - V);
      C(1, 1) = -2 * (P - V) * W - (F + V) * Q;
      C(1, 2) = (F + V) * (H + W) - V * W;
      C(2, 0) = -og * (Q - W) * V + 2 * (P - V) * W;
      C(2, 1) = 2 * (G + W) * (P - V) - og * (F + V) * (Q - W);
      C(2, 2) = -(F + V) * W + (G + W) * V;
      out.D = 2 * (W * W - (G + W) * (H + W)) * (P - V) + og * ((F + V) * (H + W) - V * W) * (Q - W) +
              (-(G + W) * V + (F + V) * W) * Q;
      break;
    }
    default: {
      const Scalar f = e.f, p = e.p, v = e.v, G = e.G, H = e.H, Q = e.Q, W = e.W;
      C(0, 0) = -Q * W - og * (H + W) * (Q - W);
      C(0, 1) = -og * (Q - W) * W - (G + W) * Q;
      C(0, 2) = (G + W) * (H + W) - W * W;
      C(1, 0) = Q * v - 2 * (H + W) * (p + v);
      C(1, 1) = -2 * (p + v) * W - (f - v) * Q;
      C(1, 2) = (f - v) * (H + W) + v * W;
      C(2, 0) = og * (Q - W) * v + 2 * (p + v) * W;
      C(2, 1) = 2 * (G + W) * (p + v) - og * (f - v) * (Q - W);
      C(2, 2) = -(f - v) * W - (G + W) * v;
      out.D = 2 * (W * W - (G + W) * (H + W)) * (p + v) + og * ((f - v) * (H + W) + v * W) * (Q - W) +
              ((G + W) * v + (f - v) * W) * Q;
      break;
    }
  }
  return out;
}

inline std::array<int, 3> delta_signs(Bvp bvp) {
  return bvp == Bvp::One ? std::array<int, 3>{-1, +1, +1} : std::array<int, 3>{-1, +1, -1};
}

/// Elimination with partial pivoting (Eigen's LU), for square systems up to 3x3.
template <typename Scalar>
SmallVector<Scalar> solve_generic(const SmallMatrix<Scalar>& A, const SmallVector<Scalar>& b) {
  if (A.rows() != A.cols() || A.rows() != b.size() || A.rows() < 1 || A.rows() > 3)
    throw DomainError("solve_generic expects a square system of size 1..3");
  Eigen::PartialPivLU<SmallMatrix<Scalar>> lu(A);
  const auto& U = lu.matrixLU();
  for (Eigen::Index i = 0; i < U.rows(); ++i)
    if (U(i, i) == Scalar(0)) throw SingularSystemError("zero pivot in elimination");
  return lu.solve(b);
}

namespace internal {

template <typename Scalar>
ModalSolution<Scalar> make_solution(const ExcitationSpec& ex, CaseId c, SolveMethod method) {
  ModalSolution<Scalar> s;
  s.bvp = ex.bvp;
  s.case_id = c;
  s.m = ex.m;
  s.k = ex.k;
  s.omega = Scalar(ex.omega);
  s.method = method;
  return s;
}

template <typename Scalar>
void set_determinant(ModalSolution<Scalar>& s, Scalar det, Scalar scaled, const SolveOptions& opt) {
  s.determinant = det;
  s.scaled_determinant = scaled;
  if (det == Scalar(0) || abs(scaled) < Scalar(opt.determinant_floor))
    throw ResonanceError("boundary-condition determinant vanishes (resonance)", static_cast<double>(det));
  s.near_resonance = abs(scaled) < Scalar(opt.near_resonance_threshold);
}

// 1x1 systems: scale by the sum of the magnitudes of the two terms that make up the entry
template <typename Scalar>
Scalar two_term_scaled(Scalar t1, Scalar t2) {
  const Scalar s = abs(t1) + abs(t2);
  return s == Scalar(0) ? Scalar(0) : (t1 + t2) / s;
}

}  // namespace internal

/// m = 0 and BVP1: the torsional amplitude A3.
template <typename Scalar>
ModalSolution<Scalar> solve_torsional(const CaseClassification<Scalar>& cls, const ExcitationSpec& ex,
                                      const MaterialGeometry<Scalar>& mg, SolveMethod method,
                                      const SolveOptions& opt = {}) {
  auto sys = assemble_torsional_system(cls, ex, mg);
  auto s = internal::make_solution<Scalar>(ex, cls.case_id, method);
  const int eps = cls.eps2();
  const Scalar a2 = cls.alpha2;
  Scalar z0, z1;
  internal::bessel_pair(eps, 0, a2 * mg.R, z0, z1);
  // entry = -(eps a2^2 R/2 Z0 - eps a2 Z1)
  internal::set_determinant(s, sys.matrix(0, 0),
                            internal::two_term_scaled(Scalar(-eps) * a2 * a2 * mg.R / 2 * z0, Scalar(eps) * a2 * z1), opt);
  s.amplitudes.resize(1);
  s.delta_signs = {0, 0, 0};
  if (method == SolveMethod::Generic) {
    s.amplitudes = solve_generic<Scalar>(sys.matrix, sys.rhs);
  } else {
    const Scalar d0 = a2 / 2 * z0 - z1 / mg.R;
    const Scalar K = (Scalar(ex.ampB) / (2 * mg.mu)) / d0;
    s.amplitudes(0) = -K / (Scalar(eps) * a2);
  }
  return s;
}

/// m = 0 and BVP2: (A1, A2).
template <typename Scalar>
ModalSolution<Scalar> solve_axisymmetric(const CaseClassification<Scalar>& cls, const ExcitationSpec& ex,
                                         const MaterialGeometry<Scalar>& mg, SolveMethod method,
                                         const SolveOptions& opt = {}) {
  auto sys = assemble_axisymmetric_system(cls, ex, mg);
  auto s = internal::make_solution<Scalar>(ex, cls.case_id, method);
  internal::set_determinant(s, sys.matrix.determinant(), internal::row_scaled_det(sys.matrix), opt);
  s.amplitudes.resize(2);
  s.delta_signs = {0, 0, 0};
  if (method == SolveMethod::Generic) {
    s.amplitudes = solve_generic<Scalar>(sys.matrix, sys.rhs);
    return s;
  }
  const auto e = system_entries(cls, ex, mg);
  const Scalar og = 1 + e.gamma2, A = e.rhsA, C = e.rhsC;
  switch (cls.case_id) {
    case CaseId::Case1: {
      const Scalar den = og * e.w * (e.f - e.v) - 2 * e.v * (e.g - e.w);
      s.amplitudes(0) = (og * e.w * A - (e.g - e.w) * C) / den;
      s.amplitudes(1) = ((e.f - e.v) * C - 2 * e.v * A) / den;
      break;
    }
    case CaseId::Case2: {
      const Scalar den = og * e.W * (e.F + e.V) - 2 * e.V * (e.G + e.W);
      s.amplitudes(0) = (og * e.W * A + (e.G + e.W) * C) / den;
      s.amplitudes(1) = -(2 * e.V * A + (e.F + e.V) * C) / den;
      break;
    }
    default: {
      const Scalar den = og * e.W * (e.f - e.v) + 2 * e.v * (e.G + e.W);
      s.amplitudes(0) = (og * e.W * A + (e.G + e.W) * C) / den;
      s.amplitudes(1) = (2 * e.v * A - (e.f - e.v) * C) / den;
      break;
    }
  }
  return s;
}

/// m >= 1, both BVPs.
template <typename Scalar>
ModalSolution<Scalar> solve_general(const CaseClassification<Scalar>& cls, const ExcitationSpec& ex,
                                    const MaterialGeometry<Scalar>& mg, SolveMethod method,
                                    const SolveOptions& opt = {}) {
  auto sys = assemble_system(cls, ex, mg);
  auto s = internal::make_solution<Scalar>(ex, cls.case_id, method);
  s.delta_signs = delta_signs(ex.bvp);
  internal::set_determinant(s, sys.matrix.determinant(), internal::row_scaled_det(sys.matrix), opt);
  if (method == SolveMethod::Generic) {
    s.amplitudes = solve_generic<Scalar>(sys.matrix, sys.rhs);
    return s;
  }
  const auto e = system_entries(cls, ex, mg);
  const auto cf = closed_form_coefficients(composites(e));
  const Scalar sB = ex.bvp == Bvp::One ? Scalar(1) : Scalar(-1);
  s.amplitudes.resize(3);
  for (int i = 0; i < 3; ++i)
    s.amplitudes(i) = Scalar(s.delta_signs[i]) / cf.D * (cf.C(i, 0) * e.rhsA + sB * cf.C(i, 1) * e.rhsB + cf.C(i, 2) * e.rhsC);
  return s;
}

/// k = 0: only the axial shear load survives and drives u_z = A J_m(alpha r).
template <typename Scalar>
ModalSolution<Scalar> solve_k0(const ExcitationSpec& ex, const MaterialGeometry<Scalar>& mg,
                               const SolveOptions& opt = {}) {
  if (ex.k != 0) throw RoutingError("solve_k0 needs k = 0");
  const auto cls = classify(mg, ex.m, 0, Scalar(ex.omega));
  const Scalar alpha = cls.alpha2;
  Scalar jm, jm1;
  internal::bessel_pair(-1, ex.m, alpha * mg.R, jm, jm1);
  const Scalar t1 = Scalar(ex.m) / mg.R * jm, t2 = -alpha * jm1;
  auto s = internal::make_solution<Scalar>(ex, CaseId::KZero, SolveMethod::ClosedForm);
  internal::set_determinant(s, t1 + t2, internal::two_term_scaled(t1, t2), opt);
  s.amplitudes.resize(1);
  s.amplitudes(0) = Scalar(ex.ampC) / (mg.mu * (t1 + t2));
  return s;
}

/// Dispatches on (k, m, bvp).
template <typename Scalar>
ModalSolution<Scalar> solve(const MaterialGeometry<Scalar>& mg, const ExcitationSpec& ex,
                            SolveMethod method = SolveMethod::ClosedForm, const SolveOptions& opt = {}) {
  ex.validate();
  if (ex.k == 0) {
    auto s = solve_k0(ex, mg, opt);
    s.method = method;
    return s;
  }
  const auto cls = classify(mg, ex.m, ex.k, Scalar(ex.omega));
  if (ex.m == 0)
    return ex.bvp == Bvp::One ? solve_torsional(cls, ex, mg, method, opt) : solve_axisymmetric(cls, ex, mg, method, opt);
  return solve_general(cls, ex, mg, method, opt);
}

struct DeterminantSample {
  CaseId case_id;
  double determinant;  // of the assembled system (sign tracks resonance crossings)
  double scaled;       // row-scaled
};

/// Determinant of the system that solve() would use, without solving it.
template <typename Scalar>
DeterminantSample system_determinant(const MaterialGeometry<Scalar>& mg, const ExcitationSpec& ex) {
  ex.validate();
  if (ex.k == 0) {
    const Scalar alpha = sqrt(mg.rho / mg.mu) * Scalar(ex.omega);
    Scalar jm, jm1;
    internal::bessel_pair(-1, ex.m, alpha * mg.R, jm, jm1);
    const Scalar t1 = Scalar(ex.m) / mg.R * jm, t2 = -alpha * jm1;
    return {CaseId::KZero, static_cast<double>(t1 + t2), static_cast<double>(internal::two_term_scaled(t1, t2))};
  }
  const auto cls = classify(mg, ex.m, ex.k, Scalar(ex.omega));
  if (is_singular(cls.case_id)) return {cls.case_id, 0.0, 0.0};
  LinearSystem<Scalar> sys;
  if (ex.m == 0 && ex.bvp == Bvp::One) {
    sys = assemble_torsional_system(cls, ex, mg);
    Scalar z0, z1;
    const int eps = cls.eps2();
    internal::bessel_pair(eps, 0, cls.alpha2 * mg.R, z0, z1);
    const Scalar t1 = Scalar(-eps) * cls.alpha2 * cls.alpha2 * mg.R / 2 * z0, t2 = Scalar(eps) * cls.alpha2 * z1;
    return {cls.case_id, static_cast<double>(sys.matrix(0, 0)), static_cast<double>(internal::two_term_scaled(t1, t2))};
  }
  sys = ex.m == 0 ? assemble_axisymmetric_system(cls, ex, mg) : assemble_system(cls, ex, mg);
  return {cls.case_id, static_cast<double>(sys.matrix.determinant()),
          static_cast<double>(internal::row_scaled_det(sys.matrix))};
}

}  // namespace cylresp
