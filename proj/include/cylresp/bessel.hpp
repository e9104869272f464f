#pragma once

// Bessel functions of the first kind J_n and modified Bessel functions of the
// first kind I_n for non-negative integer order and non-negative real argument.
//
// Algorithms (Scalar is any IEEE floating type, double and long double are tested):
//   J_n : ascending series when x <= 2 or x^2/4 <= (n+1)/2, Hankel asymptotics
//         for x > 50 when the expansion converges to working precision,
//         otherwise Miller backward recurrence normalized by
//         J_0 + 2 sum J_2k = 1.
//   I_n : ascending series (all terms positive) for x <= 50, asymptotic
//         expansion of e^{-x} I_n(x) beyond, with a backward-recurrence fallback
//         normalized by I_0 when the expansion does not converge for large n.
//
// The unscaled I_n overflows once x exceeds roughly log(max()) + log(2 pi x)/2,
// i.e. x ~ 713 in double; besselI raises RangeError there. besselIScaled never
// overflows.
//
// Math calls are unqualified so multiprecision scalars work through ADL.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cylresp/errors.hpp"
#include "cylresp/scalar.hpp"

namespace cylresp {

namespace internal {

template <typename Scalar>
inline constexpr Scalar kSeriesLimitJ = Scalar(2);
template <typename Scalar>
inline constexpr Scalar kSeriesLimitI = Scalar(50);
template <typename Scalar>
inline constexpr Scalar kAsymptoticLimit = Scalar(50);

template <typename Scalar>
void check_argument(int n, Scalar x) {
  if (n < 0) throw DomainError("Bessel order must be non-negative");
  if (!isfinite(x)) throw DomainError("Bessel argument must be finite");
  if (x < Scalar(0)) throw DomainError("Bessel argument must be non-negative");
}

// sum_k sign^k (x/2)^{n+2k} / (k! (n+k)!)
template <typename Scalar>
Scalar ascending_series(int n, Scalar x, int sign) {
  const Scalar half = x / 2;
  const Scalar q = half * half;
  Scalar term(1);
  for (int j = 1; j <= n; ++j) term *= half / Scalar(j);
  Scalar sum = term;
  if (term == Scalar(0)) return sum;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  for (int k = 1; k < 10000; ++k) {
    term *= Scalar(sign) * q / (Scalar(k) * Scalar(n + k));
    sum += term;
    if (abs(term) <= eps * Scalar(0.25) * abs(sum)) break;
  }
  return sum;
}

template <typename Scalar>
bool use_series_j(int n, Scalar x) {
  return x <= kSeriesLimitJ<Scalar> || x * x / 4 <= Scalar(n + 1) / 2;
}

// Hankel expansion. Returns nullopt when the terms stop decreasing before they
// reach working precision.
template <typename Scalar>
std::optional<Scalar> hankel_asymptotic_j(int n, Scalar x) {
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar mu = Scalar(4) * Scalar(n) * Scalar(n);
  Scalar p(1), q(0), term(1);
  bool converged = false;
  for (int k = 1; k < 200; ++k) {
    const Scalar odd = Scalar(2 * k - 1);
    const Scalar next = term * (mu - odd * odd) / (Scalar(k) * Scalar(8) * x);
    if (abs(next) > abs(term) && k > 1) break;
    term = next;
    // t_1 -> Q, t_2 -> -P, t_3 -> -Q, t_4 -> +P, ...
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    if (abs(term) <= eps * Scalar(0.25)) {
      converged = true;
      break;
    }
  }
  if (!converged) return std::nullopt;
  // chi = x - (2n+1) pi/4; the phase is reduced exactly modulo 2 pi.
  const int octant = (2 * n + 1) % 8;
  const Scalar r = sqrt(Scalar(2)) / 2;
  static constexpr int kCos[8] = {2, 1, 0, -1, -2, -1, 0, 1};  // cos(j pi/4) in units of r, 2 == 1
  static constexpr int kSin[8] = {0, 1, 2, 1, 0, -1, -2, -1};
  auto unit = [r](int v) { return v == 2 ? Scalar(1) : v == -2 ? Scalar(-1) : Scalar(v) * r; };
  const Scalar cphi = unit(kCos[octant]);
  const Scalar sphi = unit(kSin[octant]);
  const Scalar cx = cos(x), sx = sin(x);
  const Scalar cos_chi = cx * cphi + sx * sphi;
  const Scalar sin_chi = sx * cphi - cx * sphi;
  const Scalar amp = sqrt(Scalar(2) / (pi<Scalar>() * x));
  return amp * (p * cos_chi - q * sin_chi);
}

// e^{-x} I_n(x) for large x.
template <typename Scalar>
std::optional<Scalar> asymptotic_i_scaled(int n, Scalar x) {
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  const Scalar mu = Scalar(4) * Scalar(n) * Scalar(n);
  Scalar sum(1), term(1);
  bool converged = false;
  for (int k = 1; k < 400; ++k) {
    const Scalar odd = Scalar(2 * k - 1);
    const Scalar next = -term * (mu - odd * odd) / (Scalar(k) * Scalar(8) * x);
    if (abs(next) > abs(term) && k > 1) break;
    term = next;
    sum += term;
    if (abs(term) <= eps * Scalar(0.25) * abs(sum)) {
      converged = true;
      break;
    }
  }
  if (!converged) return std::nullopt;
  return sum / sqrt(Scalar(2) * pi<Scalar>() * x);
}

// Miller backward recurrence for J_0..J_{out.size()-1}.
template <typename Scalar>
void miller_j(Scalar x, std::span<Scalar> out) {
  const int nmax = static_cast<int>(out.size()) - 1;
  const Scalar top = std::max(Scalar(nmax), x);
  const int digits = std::numeric_limits<Scalar>::digits10;
  int start = static_cast<int>(top + Scalar(digits + 10) + sqrt(Scalar(4 * digits + 20) * top));
  if (start % 2) ++start;
  const Scalar big = sqrt(std::numeric_limits<Scalar>::max()) * std::numeric_limits<Scalar>::epsilon();
  Scalar next(0), cur = std::numeric_limits<Scalar>::min() / std::numeric_limits<Scalar>::epsilon();
  Scalar norm(0);
  std::fill(out.begin(), out.end(), Scalar(0));
  for (int k = start; k >= 1; --k) {
    // cur = J_k (unnormalized), compute J_{k-1}
    const Scalar prev = Scalar(2 * k) / x * cur - next;
    next = cur;
    cur = prev;
    const int order = k - 1;
    if (order <= nmax) out[order] = cur;
    if (order > 0 && order % 2 == 0) norm += 2 * cur;
    if (abs(cur) > big) {
      const Scalar s = Scalar(1) / big;
      cur *= s;
      next *= s;
      norm *= s;
      for (int j = std::max(order, 0); j <= nmax; ++j) out[j] *= s;
    }
  }
  norm += cur;  // J_0
  for (auto& v : out) v /= norm;
}

// Backward recurrence ratios I_k / I_0 for k = 0..out.size()-1, scaled by i0.
template <typename Scalar>
void miller_i(Scalar x, Scalar i0, std::span<Scalar> out) {
  const int nmax = static_cast<int>(out.size()) - 1;
  const int digits = std::numeric_limits<Scalar>::digits10;
  const int start = nmax + digits + 10 + static_cast<int>(sqrt(Scalar(4 * digits + 20) * x));
  const Scalar big = sqrt(std::numeric_limits<Scalar>::max()) * std::numeric_limits<Scalar>::epsilon();
  Scalar next(0), cur = std::numeric_limits<Scalar>::min() / std::numeric_limits<Scalar>::epsilon();
  std::fill(out.begin(), out.end(), Scalar(0));
  for (int k = start; k >= 1; --k) {
    const Scalar prev = Scalar(2 * k) / x * cur + next;
    next = cur;
    cur = prev;
    const int order = k - 1;
    if (order <= nmax) out[order] = cur;
    if (abs(cur) > big) {
      const Scalar s = Scalar(1) / big;
      cur *= s;
      next *= s;
      for (int j = std::max(order, 0); j <= nmax; ++j) out[j] *= s;
    }
  }
  const Scalar scale = i0 / cur;
  for (auto& v : out) v *= scale;
}

}  // namespace internal

/// Fills out[n] = J_n(x) for n = 0 .. out.size()-1.
template <typename Scalar>
void besselJSequence(Scalar x, std::span<Scalar> out) {
  if (out.empty()) return;
  internal::check_argument(static_cast<int>(out.size()) - 1, x);
  if (x == Scalar(0)) {
    std::fill(out.begin(), out.end(), Scalar(0));
    out[0] = Scalar(1);
    return;
  }
  const int nmax = static_cast<int>(out.size()) - 1;
  if (x <= internal::kSeriesLimitJ<Scalar>) {
    for (int n = 0; n <= nmax; ++n) out[n] = internal::ascending_series(n, x, -1);
    return;
  }
  if (x > internal::kAsymptoticLimit<Scalar>) {
    bool ok = true;
    for (int n = 0; n <= nmax && ok; ++n) {
      if (auto v = internal::hankel_asymptotic_j(n, x)) out[n] = *v;
      else ok = false;
    }
    if (ok) return;
  }
  internal::miller_j(x, out);
  // High orders with x^2/4 well below n are better served by the series.
  for (int n = 0; n <= nmax; ++n)
    if (internal::use_series_j(n, x)) out[n] = internal::ascending_series(n, x, -1);
}

/// J_n(x), x >= 0.
template <typename Scalar>
Scalar besselJ(int n, Scalar x) {
  internal::check_argument(n, x);
  if (x == Scalar(0)) return n == 0 ? Scalar(1) : Scalar(0);
  if (internal::use_series_j(n, x)) return internal::ascending_series(n, x, -1);
  if (x > internal::kAsymptoticLimit<Scalar>)
    if (auto v = internal::hankel_asymptotic_j(n, x)) return *v;
  std::vector<Scalar> seq(static_cast<std::size_t>(n) + 1);
  internal::miller_j(x, std::span<Scalar>(seq));
  return seq.back();
}

/// Fills out[n] = e^{-x} I_n(x) for n = 0 .. out.size()-1.
template <typename Scalar>
void besselIScaledSequence(Scalar x, std::span<Scalar> out) {
  if (out.empty()) return;
  internal::check_argument(static_cast<int>(out.size()) - 1, x);
  const int nmax = static_cast<int>(out.size()) - 1;
  if (x <= internal::kSeriesLimitI<Scalar>) {
    const Scalar scale = exp(-x);
    for (int n = 0; n <= nmax; ++n) out[n] = internal::ascending_series(n, x, +1) * scale;
    return;
  }
  bool ok = true;
  for (int n = 0; n <= nmax && ok; ++n) {
    if (auto v = internal::asymptotic_i_scaled(n, x)) out[n] = *v;
    else ok = false;
  }
  if (ok) return;
  // n = 0 always converges for x > 50.
  internal::miller_i(x, *internal::asymptotic_i_scaled(0, x), out);
}

/// e^{-x} I_n(x), x >= 0.
template <typename Scalar>
Scalar besselIScaled(int n, Scalar x) {
  internal::check_argument(n, x);
  if (x <= internal::kSeriesLimitI<Scalar>) return internal::ascending_series(n, x, +1) * exp(-x);
  if (auto v = internal::asymptotic_i_scaled(n, x)) return *v;
  std::vector<Scalar> seq(static_cast<std::size_t>(n) + 1);
  besselIScaledSequence(x, std::span<Scalar>(seq));
  return seq.back();
}

/// I_n(x), x >= 0. Throws RangeError when the value overflows Scalar.
template <typename Scalar>
Scalar besselI(int n, Scalar x) {
  internal::check_argument(n, x);
  if (x <= internal::kSeriesLimitI<Scalar>) return internal::ascending_series(n, x, +1);
  const Scalar scaled = besselIScaled(n, x);
  const Scalar value = scaled * exp(x);
  if (!isfinite(value))
    throw RangeError("modified Bessel function overflows", static_cast<double>(x));
  return value;
}

/// Fills out[n] = I_n(x). Throws RangeError on overflow.
template <typename Scalar>
void besselISequence(Scalar x, std::span<Scalar> out) {
  if (out.empty()) return;
  internal::check_argument(static_cast<int>(out.size()) - 1, x);
  if (x <= internal::kSeriesLimitI<Scalar>) {
    for (std::size_t n = 0; n < out.size(); ++n)
      out[n] = internal::ascending_series(static_cast<int>(n), x, +1);
    return;
  }
  besselIScaledSequence(x, out);
  const Scalar scale = exp(x);
  for (auto& v : out) {
    v *= scale;
    if (!isfinite(v)) throw RangeError("modified Bessel function overflows", static_cast<double>(x));
  }
}

}  // namespace cylresp
