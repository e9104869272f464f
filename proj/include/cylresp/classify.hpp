#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "cylresp/errors.hpp"
#include "cylresp/scalar.hpp"
#include "cylresp/model.hpp"

namespace cylresp {

// Case1: (kπ/L)^2 > ρω²/μ             both radial parts modified (I_m)
// Case2: (kπ/L)^2 < ρω²/(λ+2μ)        both ordinary (J_m)
// Case3: in between                   dilatational part I_m, shear part J_m
enum class CaseId { Case1, Case2, Case3, KZero, Singular1, Singular2 };

inline const char* to_string(CaseId c) {
  switch (c) {
    case CaseId::Case1: return "case1";
    case CaseId::Case2: return "case2";
    case CaseId::Case3: return "case3";
    case CaseId::KZero: return "k0";
    case CaseId::Singular1: return "singular1";
    case CaseId::Singular2: return "singular2";
  }
  return "?";
}

inline bool is_singular(CaseId c) { return c == CaseId::Singular1 || c == CaseId::Singular2; }

inline constexpr double kSingularTolerance = 1e-9;
inline constexpr double kNearBoundaryTolerance = 1e-6;

template <typename Scalar = double>
struct CaseClassification {
  CaseId case_id = CaseId::Case1;
  Scalar alpha1{};  // unused for KZero
  Scalar alpha2{};  // for KZero, sqrt(ρω²/μ)
  Scalar gamma1{1};
  Scalar gamma2{};
  Scalar kappa{};  // -(kπ/L)^2
  Scalar tau{};    // -ω²
  Scalar kz{};     // kπ/L
  bool near_boundary = false;

  // +1 when branch s uses I_m, -1 when it uses J_m
  int eps1() const { return case_id == CaseId::Case2 ? -1 : 1; }
  int eps2() const { return case_id == CaseId::Case1 ? 1 : -1; }
};

namespace internal {
template <typename Scalar>
Scalar relative_gap(Scalar a, Scalar b) {
  const Scalar scale = std::max(abs(a), abs(b));
  return scale == Scalar(0) ? Scalar(0) : abs(a - b) / scale;
}
}  // namespace internal

/// Classifies (m, k, ω) for the given cylinder. Singular configurations come back
/// as Singular1/Singular2 rather than throwing; callers decide.
template <typename Scalar>
CaseClassification<Scalar> classify(const MaterialGeometry<Scalar>& mg, int m, int k, Scalar omega) {
  if (m < 0) throw DomainError("m must be >= 0");
  if (k < 0) throw DomainError("k must be >= 0");
  if (!(omega > Scalar(0)) || !isfinite(omega)) throw DomainError("omega must be positive");

  CaseClassification<Scalar> c;
  const Scalar rw2 = mg.rho * omega * omega;
  const Scalar d1 = rw2 / (mg.lambda + 2 * mg.mu);
  const Scalar d2 = rw2 / mg.mu;
  c.tau = -omega * omega;
  c.gamma1 = Scalar(1);

  if (k == 0) {
    c.case_id = CaseId::KZero;
    c.alpha2 = sqrt(d2);
    return c;
  }

  c.kz = Scalar(k) * pi<Scalar>() / mg.L;
  const Scalar kz2 = c.kz * c.kz;
  c.kappa = -kz2;
  c.gamma2 = Scalar(1) - d2 / kz2;

  const Scalar gap1 = internal::relative_gap(kz2, d1);
  const Scalar gap2 = internal::relative_gap(kz2, d2);
  if (gap1 <= Scalar(kSingularTolerance)) {
    c.case_id = CaseId::Singular1;
    return c;
  }
  if (gap2 <= Scalar(kSingularTolerance)) {
    c.case_id = CaseId::Singular2;
    return c;
  }
  c.near_boundary = gap1 <= Scalar(kNearBoundaryTolerance) || gap2 <= Scalar(kNearBoundaryTolerance);

  if (kz2 > d2) c.case_id = CaseId::Case1;
  else if (kz2 < d1) c.case_id = CaseId::Case2;
  else c.case_id = CaseId::Case3;

  c.alpha1 = sqrt(abs(kz2 - d1));
  c.alpha2 = sqrt(abs(kz2 - d2));
  return c;
}

/// Frequencies (Hz) at which the case changes for wave number k: first the
/// shear bound (Case1/Case3), then the dilatational bound (Case3/Case2).
template <typename Scalar>
std::pair<Scalar, Scalar> case_boundaries_hz(const MaterialGeometry<Scalar>& mg, int k) {
  const Scalar kz = Scalar(k) * pi<Scalar>() / mg.L;
  const Scalar two_pi = 2 * pi<Scalar>();
  return {kz * sqrt(mg.mu / mg.rho) / two_pi, kz * sqrt((mg.lambda + 2 * mg.mu) / mg.rho) / two_pi};
}

}  // namespace cylresp
