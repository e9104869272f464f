#pragma once

// Independent checks of a solved field:
//  - finite-difference residual of the equation of motion
//      (λ+μ) ∇(∇·u) + μ ∇²u + ρω² u = 0
//    on the stationary field, in Cartesian coordinates;
//  - for BVP2 with m = 0, a reconstruction of the axisymmetric field through
//    the separated-series (ENBKS) parameterization, using complex radial
//    wavenumbers that are tracked symbolically as real multiples of 1 or i.

#include <algorithm>
#include <array>
#include <vector>

#include <Eigen/Dense>

#include "cylresp/bessel.hpp"
#include "cylresp/classify.hpp"
#include "cylresp/errors.hpp"
#include "cylresp/fields.hpp"
#include "cylresp/model.hpp"
#include "cylresp/scalar.hpp"
#include "cylresp/system.hpp"

namespace cylresp {

template <typename Scalar>
struct PdeResidual {
  Eigen::Matrix<Scalar, 3, 1> residual;  // Pa/m, Cartesian components
  Scalar normalized{};                   // |residual|_inf / (ρω² |u|_inf)
};

namespace internal {

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> cartesian_displacement(const ModalSolution<Scalar>& sol,
                                                   const CaseClassification<Scalar>& cls, const ExcitationSpec& ex,
                                                   const MaterialGeometry<Scalar>& mg,
                                                   const Eigen::Matrix<Scalar, 3, 1>& x) {
  const Scalar r = hypot(x(0), x(1));
  const Scalar theta = atan2(x(1), x(0));
  const auto u = stationary_field(sol, cls, ex, mg, Point<Scalar>{r, theta, x(2)}).u;
  const Scalar c = r > Scalar(0) ? x(0) / r : Scalar(1);
  const Scalar s = r > Scalar(0) ? x(1) / r : Scalar(0);
  Eigen::Matrix<Scalar, 3, 1> out;
  out << u(0) * c - u(1) * s, u(0) * s + u(1) * c, u(2);
  return out;
}

}  // namespace internal

/// Second-order central-difference residual at an interior point p, step h.
template <typename Scalar>
PdeResidual<Scalar> pde_residual(const ModalSolution<Scalar>& sol, const CaseClassification<Scalar>& cls,
                                 const ExcitationSpec& ex, const MaterialGeometry<Scalar>& mg,
                                 const Point<Scalar>& p, Scalar h) {
  if (!(h > Scalar(0))) throw DomainError("finite-difference step must be positive");
  if (p.r < Scalar(0) || p.r + 2 * h > mg.R || p.z < 2 * h || p.z + 2 * h > mg.L)
    throw DomainError("point must lie at least 2h inside the cylinder");
  using Vec = Eigen::Matrix<Scalar, 3, 1>;
  const Vec x0(p.r * cos(p.theta), p.r * sin(p.theta), p.z);
  auto u = [&](const Vec& x) { return internal::cartesian_displacement(sol, cls, ex, mg, x); };
  std::array<Vec, 3> e;
  for (int i = 0; i < 3; ++i) e[i] = Vec::Unit(i);

  const Vec u0 = u(x0);
  std::array<Vec, 3> up, um;
  for (int i = 0; i < 3; ++i) {
    up[i] = u(x0 + h * e[i]);
    um[i] = u(x0 - h * e[i]);
  }
  const Scalar h2 = h * h;
  Vec lap = Vec::Zero();
  for (int i = 0; i < 3; ++i) lap += (up[i] - 2 * u0 + um[i]) / h2;

  // H(i, j) = ∂²u_j / ∂x_i ∂x_j summed over j gives ∂_i (∇·u)
  Vec grad_div = Vec::Zero();
  for (int i = 0; i < 3; ++i) grad_div(i) += (up[i](i) - 2 * u0(i) + um[i](i)) / h2;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const Vec upp = u(x0 + h * e[i] + h * e[j]);
      const Vec upm = u(x0 + h * e[i] - h * e[j]);
      const Vec ump = u(x0 - h * e[i] + h * e[j]);
      const Vec umm = u(x0 - h * e[i] - h * e[j]);
      const Vec mixed = (upp - upm - ump + umm) / (4 * h2);  // ∂²u / ∂x_i ∂x_j
      grad_div(i) += mixed(j);
      grad_div(j) += mixed(i);
    }
  }
  const Scalar rw2 = mg.rho * sol.omega * sol.omega;
  PdeResidual<Scalar> out;
  out.residual = (mg.lambda + mg.mu) * grad_div + mg.mu * lap + rw2 * u0;
  const Scalar unorm = u0.cwiseAbs().maxCoeff();
  out.normalized = unorm > Scalar(0) ? out.residual.cwiseAbs().maxCoeff() / (rw2 * unorm) : Scalar(0);
  return out;
}

/// Real number times 1 or i.
template <typename Scalar>
struct ImagReal {
  Scalar mag{};
  bool imag = false;

  friend ImagReal operator*(const ImagReal& a, const ImagReal& b) {
    const bool both = a.imag && b.imag;
    return {both ? -(a.mag * b.mag) : a.mag * b.mag, a.imag != b.imag};
  }
  friend ImagReal operator*(Scalar s, const ImagReal& a) { return {s * a.mag, a.imag}; }
  friend ImagReal operator+(const ImagReal& a, const ImagReal& b) {
    if (a.imag != b.imag) throw ContractError("adding real and imaginary parts");
    return {a.mag + b.mag, a.imag};
  }
  friend ImagReal operator-(const ImagReal& a) { return {-a.mag, a.imag}; }
  friend ImagReal operator/(const ImagReal& a, const ImagReal& b) {
    // 1/i = -i
    const Scalar q = a.mag / b.mag;
    if (!b.imag) return {q, a.imag};
    return a.imag ? ImagReal{q, false} : ImagReal{-q, true};
  }
  Scalar real() const {
    if (imag) throw ContractError("expected a real quantity");
    return mag;
  }
};

template <typename Scalar>
struct EnbksBranch {
  ImagReal<Scalar> k_r;  // radial wavenumber
  ImagReal<Scalar> chi;  // coupling constant
  Scalar Q{};            // amplitude constant
  Scalar alpha{};
  bool modified = false;  // k_r = i alpha: Bessel values come from I_p
};

template <typename Scalar>
struct EnbksConstants {
  Scalar kz{};
  std::array<EnbksBranch<Scalar>, 2> branch;
  Scalar Q_torsion{};  // zero in this specialization
};

template <typename Scalar>
struct EnbksSample {
  Scalar u_z{}, u_r{}, s_rr{}, s_zz{}, s_rz{};
};

/// Maps (A1, A2) of the m = 0 BVP2 solution onto the separated-series constants.
template <typename Scalar>
EnbksConstants<Scalar> enbks_constants(const CaseClassification<Scalar>& cls, Scalar A1, Scalar A2) {
  if (cls.case_id != CaseId::Case1 && cls.case_id != CaseId::Case2 && cls.case_id != CaseId::Case3)
    throw ContractError("the axisymmetric reconstruction needs case 1, 2 or 3");
  EnbksConstants<Scalar> c;
  c.kz = cls.kz;
  const ImagReal<Scalar> kz{cls.kz, false};
  for (int s = 0; s < 2; ++s) {
    auto& b = c.branch[s];
    b.alpha = s == 0 ? cls.alpha1 : cls.alpha2;
    b.modified = (s == 0 ? cls.eps1() : cls.eps2()) > 0;
    b.k_r = {b.alpha, b.modified};
  }
  c.branch[0].chi = -(c.branch[0].k_r / kz);
  c.branch[1].chi = kz / c.branch[1].k_r;
  c.branch[0].Q = cls.kz * A1;
  // (kπ/L)² γ2 = +α2² in case 1 and -α2² in cases 2, 3
  const Scalar sgn = cls.case_id == CaseId::Case1 ? Scalar(1) : Scalar(-1);
  c.branch[1].Q = sgn * A2 * cls.alpha2 * cls.alpha2 / cls.kz;
  return c;
}

namespace internal {

// J_p(k_r r) for p = 0, 1, 2 as ImagReal, via J_p(i x) = i^p I_p(x).
template <typename Scalar>
std::array<ImagReal<Scalar>, 3> enbks_bessel(const EnbksBranch<Scalar>& b, Scalar r) {
  std::array<Scalar, 3> v;
  const Scalar x = b.alpha * r;
  std::array<ImagReal<Scalar>, 3> out;
  if (b.modified) {
    besselISequence(x, std::span<Scalar>(v));
    out[0] = {v[0], false};
    out[1] = {v[1], true};
    out[2] = {-v[2], false};
  } else {
    besselJSequence(x, std::span<Scalar>(v));
    for (int p = 0; p < 3; ++p) out[p] = {v[p], false};
  }
  return out;
}

}  // namespace internal

/// Axisymmetric field through the separated-series constants (stationary part).
template <typename Scalar>
EnbksSample<Scalar> enbks_fields(const EnbksConstants<Scalar>& c, const MaterialGeometry<Scalar>& mg, Scalar r,
                                 Scalar z) {
  const Scalar lam = mg.lambda, mu = mg.mu, l2m = lam + 2 * mu;
  const ImagReal<Scalar> kz{c.kz, false};
  const Scalar arg = z * c.kz / pi<Scalar>();
  const Scalar S = sin_pi(arg), C = cos_pi(arg);
  EnbksSample<Scalar> out;
  for (const auto& b : c.branch) {
    const auto J = internal::enbks_bessel(b, r);
    // J_1(k r)/r, regular at the axis
    const ImagReal<Scalar> J1r = r > Scalar(0) && b.alpha * r >= Scalar(1)
                                     ? (Scalar(1) / r) * J[1]
                                     : Scalar(0.5) * (b.k_r * (J[0] + J[2]));
    const ImagReal<Scalar> chik = b.chi * b.k_r;
    out.u_z += b.Q * J[0].real() * C;
    out.u_r += b.Q * (b.chi * J[1]).real() * S;
    out.s_rr += b.Q * ((l2m * chik + (-lam) * kz).real() * J[0].real() - 2 * mu * (b.chi * J1r).real()) * S;
    out.s_zz += b.Q * ((-l2m) * kz + lam * chik).real() * J[0].real() * S;
    out.s_rz += mu * b.Q * ((-b.k_r + b.chi * kz) * J[1]).real() * C;
  }
  return out;
}

template <typename Scalar>
struct EnbksComparison {
  Scalar displacement{};  // max |main - series| / max |u| over the grid
  Scalar stress{};        // same for (σ_rr, σ_zz, σ_rz) against max |σ|
  Scalar worst() const { return std::max(displacement, stress); }
};

/// Compares the main solution with the series reconstruction on an n_r x n_z grid.
template <typename Scalar>
EnbksComparison<Scalar> enbks_compare(const MaterialGeometry<Scalar>& mg, const ExcitationSpec& ex, int n_r = 9,
                                      int n_z = 9) {
  if (ex.m != 0 || ex.bvp != Bvp::Two) throw ContractError("the axisymmetric reconstruction needs m = 0 and BVP2");
  const auto cls = classify(mg, ex.m, ex.k, Scalar(ex.omega));
  const auto sol = solve(mg, ex);
  const auto c = enbks_constants(cls, sol.amplitudes(0), sol.amplitudes(1));
  Scalar du(0), ds(0), umax(0), smax(0);
  for (int i = 0; i < n_r; ++i) {
    const Scalar r = mg.R * Scalar(i) / Scalar(n_r - 1);
    for (int j = 0; j < n_z; ++j) {
      const Scalar z = mg.L * Scalar(j) / Scalar(n_z - 1);
      const auto main = stationary_field(sol, cls, ex, mg, Point<Scalar>{r, Scalar(0), z});
      const auto alt = enbks_fields(c, mg, r, z);
      du = std::max({du, Scalar(abs(main.u(0) - alt.u_r)), Scalar(abs(main.u(2) - alt.u_z))});
      ds = std::max({ds, Scalar(abs(main.sigma(kRR) - alt.s_rr)), Scalar(abs(main.sigma(kZZ) - alt.s_zz)),
                     Scalar(abs(main.sigma(kRZ) - alt.s_rz))});
      umax = std::max({umax, Scalar(abs(main.u(0))), Scalar(abs(main.u(2)))});
      smax = std::max({smax, Scalar(abs(main.sigma(kRR))), Scalar(abs(main.sigma(kZZ))),
                       Scalar(abs(main.sigma(kRZ)))});
    }
  }
  EnbksComparison<Scalar> out;
  out.displacement = umax > Scalar(0) ? du / umax : du;
  out.stress = smax > Scalar(0) ? ds / smax : ds;
  return out;
}

}  // namespace cylresp
