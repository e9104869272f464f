#pragma once

// Displacement and stress fields from a solved mode.
//
// Every case shares one form. With Z = I (e = +1) or Z = J (e = -1) per branch,
//   u_r  = [ sum_s A_s Z_s' + a3 (m/r) Z_2 ]       Ta(θ) sin(kz z)
//   u_θ  = [ (m/r) sum_s A_s Z_s + a3 Z_2' ]       Tb(θ) sin(kz z)
//   u_z  = [ kz sum_s A_s g_s Z_s ]                Ta(θ) cos(kz z)
// all times sin(ωt), where a3 = -A3 for BVP1 and +A3 for BVP2, and
//   BVP1: Ta = sin mθ, Tb = cos mθ;    BVP2: Ta = cos mθ, Tb = -sin mθ.
// Radial quantities that carry 1/r are evaluated through Bessel recurrences
// near the axis so the fields stay regular at r = 0.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "cylresp/bessel.hpp"
#include "cylresp/classify.hpp"
#include "cylresp/errors.hpp"
#include "cylresp/model.hpp"
#include "cylresp/scalar.hpp"
#include "cylresp/system.hpp"

namespace cylresp {

template <typename Scalar>
struct Point {
  Scalar r{};
  Scalar theta{};
  Scalar z{};
};

template <typename Scalar>
struct FieldSample {
  Eigen::Matrix<Scalar, 3, 1> u = Eigen::Matrix<Scalar, 3, 1>::Zero();      // (u_r, u_θ, u_z)
  Eigen::Matrix<Scalar, 6, 1> sigma = Eigen::Matrix<Scalar, 6, 1>::Zero();  // (rr, θθ, zz, rθ, rz, θz)
  Scalar t{};
};

enum StressIndex { kRR = 0, kTT = 1, kZZ = 2, kRT = 3, kRZ = 4, kTZ = 5 };

enum class StressForm {
  Surface,  // rr, rθ, rz in the closed forms used for the boundary conditions
  Chain     // all six from the displacement gradient
};

/// r-dependent factors of one solution at one radius; the angular and axial
/// factors are applied separately.
template <typename Scalar>
struct RadialProfile {
  Scalar Ur{}, Ut{}, Uz{};
  std::array<Scalar, 6> S{};  // stress coefficients in StressIndex order
};

namespace internal {

// Z_{m-2} .. Z_{m+2} of one branch at x = alpha r.
template <typename Scalar>
struct BranchValues {
  int eps = 1;
  Scalar alpha{};
  std::array<Scalar, 5> z{};
  Scalar at(int offset) const { return z[offset + 2]; }
};

template <typename Scalar>
BranchValues<Scalar> branch_values(int eps, int m, Scalar alpha, Scalar r) {
  BranchValues<Scalar> b;
  b.eps = eps;
  b.alpha = alpha;
  std::vector<Scalar> seq(static_cast<std::size_t>(m) + 3);
  const Scalar x = alpha * r;
  if (eps > 0) besselISequence(x, std::span<Scalar>(seq));
  else besselJSequence(x, std::span<Scalar>(seq));
  for (int j = -2; j <= 2; ++j) {
    const int n = m + j;
    if (n >= 0) {
      b.z[j + 2] = seq[n];
    } else {
      // J_{-n} = (-1)^n J_n, I_{-n} = I_n
      const Scalar val = seq[-n];
      b.z[j + 2] = (eps < 0 && (n % 2 != 0)) ? -val : val;
    }
  }
  return b;
}

// Radial building blocks of one branch.
template <typename Scalar>
struct BranchTerms {
  Scalar Z, dZ, d2Z;  // Z_m, Z_m', Z_m''
  Scalar mZr;         // (m/r) Z_m
  Scalar dmZr;        // d/dr [(m/r) Z_m]
  Scalar Zp1r;        // Z_{m+1} / r
  Scalar mm1Zr2;      // m(m-1) Z_m / r^2
  Scalar Zp1;         // Z_{m+1}
};

template <typename Scalar>
BranchTerms<Scalar> branch_terms(const BranchValues<Scalar>& b, int m, Scalar r) {
  const Scalar a = b.alpha, e = Scalar(b.eps);
  const Scalar zm2 = b.at(-2), zm1 = b.at(-1), z0 = b.at(0), zp1 = b.at(1), zp2 = b.at(2);
  BranchTerms<Scalar> t;
  t.Z = z0;
  t.Zp1 = zp1;
  t.dZ = a / 2 * (zm1 + e * zp1);
  t.d2Z = a * a / 4 * (zm2 + 2 * e * z0 + zp2);
  t.dmZr = a * a / 4 * (zm2 - zp2);
  const Scalar mm = Scalar(m), mm1 = Scalar(m) * Scalar(m - 1);
  if (a * r < Scalar(1)) {
    t.mZr = a / 2 * (zm1 - e * zp1);
    t.Zp1r = a * (z0 - e * zp2) / (2 * (mm + 1));
    if (m >= 2)
      t.mm1Zr2 = a * a / 4 * (zm2 - e * z0 - e * Scalar(m - 1) / (mm + 1) * (z0 - e * zp2));
    else
      t.mm1Zr2 = Scalar(0);
  } else {
    t.mZr = mm * z0 / r;
    t.Zp1r = zp1 / r;
    t.mm1Zr2 = mm1 * z0 / (r * r);
  }
  return t;
}

template <typename Scalar>
void check_consistent(const ModalSolution<Scalar>& sol, const CaseClassification<Scalar>& cls,
                      const ExcitationSpec& ex, const MaterialGeometry<Scalar>& mg) {
  if (sol.bvp != ex.bvp || sol.m != ex.m || sol.k != ex.k)
    throw ContractError("solution was computed for a different (bvp, m, k)");
  if (sol.omega != Scalar(ex.omega)) throw ContractError("solution was computed at a different frequency");
  if (sol.case_id != cls.case_id) throw ContractError("solution and classification disagree on the case");
  if (cls.kz != Scalar(ex.k) * pi<Scalar>() / mg.L || cls.tau != -sol.omega * sol.omega)
    throw ContractError("classification was computed for a different k or frequency");
  Eigen::Index expected = 3;
  if (ex.k == 0 || (ex.m == 0 && ex.bvp == Bvp::One)) expected = 1;
  else if (ex.m == 0) expected = 2;
  if (sol.amplitudes.size() != expected) throw ContractError("amplitude vector has the wrong length");
}

template <typename Scalar>
void check_point(const Point<Scalar>& p, const MaterialGeometry<Scalar>& mg) {
  if (!isfinite(p.r) || !isfinite(p.theta) || !isfinite(p.z)) throw DomainError("point coordinates must be finite");
  if (p.r < Scalar(0) || p.r > mg.R) throw DomainError("point lies outside 0 <= r <= R");
  if (p.z < Scalar(0) || p.z > mg.L) throw DomainError("point lies outside 0 <= z <= L");
}

template <typename Scalar>
struct UnifiedAmplitudes {
  Scalar A1{}, A2{}, a3{};
};

template <typename Scalar>
UnifiedAmplitudes<Scalar> unified_amplitudes(const ModalSolution<Scalar>& sol) {
  UnifiedAmplitudes<Scalar> u;
  const Scalar sign3 = sol.bvp == Bvp::One ? Scalar(-1) : Scalar(1);
  if (sol.m == 0 && sol.bvp == Bvp::One) {
    u.a3 = sign3 * sol.amplitudes(0);
  } else if (sol.m == 0) {
    u.A1 = sol.amplitudes(0);
    u.A2 = sol.amplitudes(1);
  } else {
    u.A1 = sol.amplitudes(0);
    u.A2 = sol.amplitudes(1);
    u.a3 = sign3 * sol.amplitudes(2);
  }
  return u;
}

template <typename Scalar>
RadialProfile<Scalar> k0_profile(const ModalSolution<Scalar>& sol, const CaseClassification<Scalar>& cls,
                                 const MaterialGeometry<Scalar>& mg, Scalar r) {
  const int m = sol.m;
  const auto b = branch_values(-1, m, cls.alpha2, r);
  const auto t = branch_terms(b, m, r);
  const Scalar A = sol.amplitudes(0);
  RadialProfile<Scalar> out;
  out.Uz = A * t.Z;
  out.S[kRZ] = mg.mu * A * t.dZ;
  out.S[kTZ] = mg.mu * A * t.mZr;
  return out;
}

}  // namespace internal

/// Radial amplitudes of displacement and stress at radius r.
template <typename Scalar>
RadialProfile<Scalar> radial_profile(const ModalSolution<Scalar>& sol, const CaseClassification<Scalar>& cls,
                                     const MaterialGeometry<Scalar>& mg, Scalar r,
                                     StressForm form = StressForm::Surface) {
  if (sol.case_id == CaseId::KZero) return internal::k0_profile(sol, cls, mg, r);

  const int m = sol.m;
  const Scalar kz = cls.kz, lam = mg.lambda, mu = mg.mu;
  const auto amp = internal::unified_amplitudes(sol);
  const std::array<Scalar, 2> A{amp.A1, amp.A2};
  const std::array<Scalar, 2> gam{cls.gamma1, cls.gamma2};
  const std::array<int, 2> eps{cls.eps1(), cls.eps2()};
  const std::array<Scalar, 2> alpha{cls.alpha1, cls.alpha2};

  std::array<internal::BranchTerms<Scalar>, 2> T;
  for (int s = 0; s < 2; ++s) {
    if (s == 0 && amp.A1 == Scalar(0) && amp.A2 == Scalar(0)) {
      T[0] = {};  // torsional-only solution; branch 1 is never used
      continue;
    }
    T[s] = internal::branch_terms(internal::branch_values(eps[s], m, alpha[s], r), m, r);
  }
  const auto& T2 = T[1];
  const Scalar e2 = Scalar(eps[1]), a2 = alpha[1];
  const Scalar mS = Scalar(m);

  Scalar Ur = amp.a3 * T2.mZr, Ut = amp.a3 * T2.dZ, Uz(0);
  Scalar dUr = amp.a3 * T2.dmZr, dUt = amp.a3 * T2.d2Z, dUz(0), mUzr(0);
  Scalar hoop = amp.a3 * (-T2.mm1Zr2 - mS * e2 * a2 * T2.Zp1r);   // (U_r - m U_θ)/r
  Scalar twist = amp.a3 * (T2.mm1Zr2 - e2 * a2 * T2.Zp1r);        // (m U_r - U_θ)/r
  for (int s = 0; s < 2; ++s) {
    if (A[s] == Scalar(0)) continue;
    const auto& t = T[s];
    const Scalar e = Scalar(eps[s]), a = alpha[s];
    Ur += A[s] * t.dZ;
    Ut += A[s] * t.mZr;
    Uz += kz * A[s] * gam[s] * t.Z;
    dUr += A[s] * t.d2Z;
    dUt += A[s] * t.dmZr;
    dUz += kz * A[s] * gam[s] * t.dZ;
    mUzr += kz * A[s] * gam[s] * t.mZr;
    hoop += A[s] * (-t.mm1Zr2 + e * a * t.Zp1r);
    twist += A[s] * (t.mm1Zr2 + mS * e * a * t.Zp1r);
  }

  RadialProfile<Scalar> out;
  out.Ur = Ur;
  out.Ut = Ut;
  out.Uz = Uz;
  const Scalar l2m = lam + 2 * mu;
  out.S[kTT] = lam * dUr + l2m * hoop - lam * kz * Uz;
  out.S[kZZ] = lam * dUr + lam * hoop - l2m * kz * Uz;
  out.S[kTZ] = mu * (kz * Ut + mUzr);

  if (form == StressForm::Chain) {
    out.S[kRR] = l2m * dUr + lam * hoop - lam * kz * Uz;
    out.S[kRT] = mu * (twist + dUt);
    out.S[kRZ] = mu * (kz * Ur + dUz);
    return out;
  }

  // closed forms, as imposed on the curved surface
  const Scalar kz2 = kz * kz;
  Scalar srr = 2 * mu * amp.a3 * (T2.mm1Zr2 + e2 * a2 * mS * T2.Zp1r);
  Scalar srt = amp.a3 * (e2 * a2 * a2 / 2 * T2.Z + T2.mm1Zr2 - e2 * a2 * T2.Zp1r);
  Scalar srz = amp.a3 * T2.mZr;
  for (int s = 0; s < 2; ++s) {
    if (A[s] == Scalar(0)) continue;
    const auto& t = T[s];
    const Scalar e = Scalar(eps[s]), a = alpha[s];
    const Scalar B = e * l2m * a * a - lam * gam[s] * kz2;
    srr += A[s] * (B * t.Z + 2 * mu * t.mm1Zr2 - e * 2 * mu * a * t.Zp1r);
    srt += A[s] * (t.mm1Zr2 + e * a * mS * t.Zp1r);
    srz += A[s] * (1 + gam[s]) * t.dZ;
  }
  out.S[kRR] = srr;
  out.S[kRT] = 2 * mu * srt;
  out.S[kRZ] = mu * kz * srz;
  return out;
}

namespace internal {

template <typename Scalar>
struct Factors {
  Scalar Ta, Tb, S, C;
};

template <typename Scalar>
Factors<Scalar> factors(Bvp bvp, int m, int k, const MaterialGeometry<Scalar>& mg, Scalar theta, Scalar z) {
  const Scalar mt = Scalar(m) * theta;
  const Scalar sm = sin(mt), cm = cos(mt);
  Factors<Scalar> f;
  if (bvp == Bvp::One) {
    f.Ta = sm;
    f.Tb = cm;
  } else {
    f.Ta = cm;
    f.Tb = -sm;
  }
  const Scalar arg = Scalar(k) * z / mg.L;  // kz z / pi
  f.S = sin_pi(arg);
  f.C = cos_pi(arg);
  return f;
}

template <typename Scalar>
FieldSample<Scalar> apply_factors(const RadialProfile<Scalar>& rp, const Factors<Scalar>& f, Scalar time_factor) {
  FieldSample<Scalar> out;
  out.u << rp.Ur * f.Ta * f.S, rp.Ut * f.Tb * f.S, rp.Uz * f.Ta * f.C;
  out.sigma << rp.S[kRR] * f.Ta * f.S, rp.S[kTT] * f.Ta * f.S, rp.S[kZZ] * f.Ta * f.S, rp.S[kRT] * f.Tb * f.S,
      rp.S[kRZ] * f.Ta * f.C, rp.S[kTZ] * f.Tb * f.C;
  out.u *= time_factor;
  out.sigma *= time_factor;
  return out;
}

}  // namespace internal

/// Stationary (time-independent) displacement and stress at p.
template <typename Scalar>
FieldSample<Scalar> stationary_field(const ModalSolution<Scalar>& sol, const CaseClassification<Scalar>& cls,
                                     const ExcitationSpec& ex, const MaterialGeometry<Scalar>& mg,
                                     const Point<Scalar>& p, StressForm form = StressForm::Surface) {
  internal::check_consistent(sol, cls, ex, mg);
  internal::check_point(p, mg);
  const auto rp = radial_profile(sol, cls, mg, p.r, form);
  return internal::apply_factors(rp, internal::factors(ex.bvp, ex.m, ex.k, mg, p.theta, p.z), Scalar(1));
}

/// Full field at time t (stationary part times sin ωt).
template <typename Scalar>
FieldSample<Scalar> field(const ModalSolution<Scalar>& sol, const CaseClassification<Scalar>& cls,
                          const ExcitationSpec& ex, const MaterialGeometry<Scalar>& mg, const Point<Scalar>& p,
                          Scalar t, StressForm form = StressForm::Surface) {
  auto out = stationary_field(sol, cls, ex, mg, p, form);
  const Scalar s = sin(sol.omega * t);
  out.u *= s;
  out.sigma *= s;
  out.t = t;
  return out;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> displacement(const ModalSolution<Scalar>& sol, const CaseClassification<Scalar>& cls,
                                         const ExcitationSpec& ex, const MaterialGeometry<Scalar>& mg,
                                         const Point<Scalar>& p, Scalar t) {
  return field(sol, cls, ex, mg, p, t).u;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 6, 1> stress(const ModalSolution<Scalar>& sol, const CaseClassification<Scalar>& cls,
                                   const ExcitationSpec& ex, const MaterialGeometry<Scalar>& mg,
                                   const Point<Scalar>& p, Scalar t) {
  return field(sol, cls, ex, mg, p, t).sigma;
}

/// Prescribed (σ_rr, σ_rθ, σ_rz) on the curved surface, stationary part.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> prescribed_surface_stress(const ExcitationSpec& ex, const MaterialGeometry<Scalar>& mg,
                                                       Scalar theta, Scalar z) {
  const Scalar mt = Scalar(ex.m) * theta;
  const Scalar arg = Scalar(ex.k) * z / mg.L;
  const Scalar S = sin_pi(arg), C = cos_pi(arg);
  const Scalar sm = sin(mt), cm = cos(mt);
  Eigen::Matrix<Scalar, 3, 1> out;
  if (ex.bvp == Bvp::One) out << Scalar(ex.ampA) * sm * S, Scalar(ex.ampB) * cm * S, Scalar(ex.ampC) * sm * C;
  else out << Scalar(ex.ampA) * cm * S, Scalar(ex.ampB) * sm * S, Scalar(ex.ampC) * cm * C;
  return out;
}

/// Max over an n_theta x n_z grid on r = R of |computed - prescribed| for the
/// three surface tractions, divided by max(|A|,|B|,|C|) (absolute when all are zero).
template <typename Scalar>
Scalar boundary_residual(const ModalSolution<Scalar>& sol, const CaseClassification<Scalar>& cls,
                         const ExcitationSpec& ex, const MaterialGeometry<Scalar>& mg, int n_theta = 20,
                         int n_z = 20) {
  if (n_theta < 2 || n_z < 2) throw DomainError("boundary grid needs at least 2 x 2 points");
  internal::check_consistent(sol, cls, ex, mg);
  const auto rp = radial_profile(sol, cls, mg, mg.R);
  const Scalar two_pi = 2 * pi<Scalar>();
  Scalar worst(0);
  for (int i = 0; i < n_theta; ++i) {
    const Scalar theta = two_pi * Scalar(i) / Scalar(n_theta);
    for (int j = 0; j < n_z; ++j) {
      const Scalar z = mg.L * Scalar(j) / Scalar(n_z - 1);
      const auto s = internal::apply_factors(rp, internal::factors(ex.bvp, ex.m, ex.k, mg, theta, z), Scalar(1));
      const auto want = prescribed_surface_stress(ex, mg, theta, z);
      worst = std::max(worst, Scalar(abs(s.sigma(kRR) - want(0))));
      worst = std::max(worst, Scalar(abs(s.sigma(kRT) - want(1))));
      worst = std::max(worst, Scalar(abs(s.sigma(kRZ) - want(2))));
    }
  }
  const Scalar scale(ex.max_amplitude());
  return scale > Scalar(0) ? worst / scale : worst;
}

}  // namespace cylresp
