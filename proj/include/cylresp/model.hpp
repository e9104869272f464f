#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "cylresp/errors.hpp"

namespace cylresp {

/// Lame constants, density and cylinder dimensions (SI).
template <typename Scalar = double>
struct MaterialGeometry {
  Scalar lambda{};  // Pa
  Scalar mu{};      // Pa
  Scalar rho{};     // kg/m^3
  Scalar L{};       // m
  Scalar R{};       // m

  template <typename Other>
  MaterialGeometry<Other> cast() const {
    return {Other(lambda), Other(mu), Other(rho), Other(L), Other(R)};
  }

  void validate() const {
    if (!(lambda > 0)) throw DomainError("lambda must be positive");
    if (!(mu > 0)) throw DomainError("mu must be positive");
    if (!(rho > 0)) throw DomainError("density must be positive");
    if (!(L > 0)) throw DomainError("length must be positive");
    if (!(R > 0)) throw DomainError("radius must be positive");
  }
};

enum class Bvp { One = 1, Two = 2 };

inline const char* to_string(Bvp b) { return b == Bvp::One ? "bvp1" : "bvp2"; }

/// Which boundary-value problem, wave numbers, frequency and surface stress amplitudes.
/// BVP1 loads the curved surface with (A sin mθ, B cos mθ, C sin mθ), BVP2 with
/// (A cos mθ, B sin mθ, C cos mθ); the axial factors are sin, sin, cos(kπz/L).
struct ExcitationSpec {
  Bvp bvp = Bvp::Two;
  int m = 0;
  int k = 1;
  double omega = 0.0;  // rad/s
  double ampA = 0.0;   // Pa
  double ampB = 0.0;
  double ampC = 0.0;

  static ExcitationSpec at_hz(Bvp bvp, int m, int k, double f_hz, double a, double b, double c) {
    return {bvp, m, k, 2.0 * std::numbers::pi * f_hz, a, b, c};
  }

  double frequency_hz() const { return omega / (2.0 * std::numbers::pi); }

  /// Throws on a malformed spec. Amplitudes are not checked here; see is_forced().
  void validate() const {
    if (m < 0) throw DomainError("circumferential wave number m must be >= 0");
    if (k < 0) throw DomainError("longitudinal wave number k must be >= 0");
    if (!std::isfinite(omega) || !(omega > 0)) throw DomainError("omega must be positive and finite");
    if (!std::isfinite(ampA) || !std::isfinite(ampB) || !std::isfinite(ampC))
      throw DomainError("amplitudes must be finite");
  }

  /// True when the amplitudes actually drive the chosen problem. With m = 0 the
  /// BVP1 load reduces to the B term and the BVP2 load to the A and C terms;
  /// with k = 0 only the C term survives.
  bool is_forced() const {
    if (k == 0) return ampC != 0.0 && (m > 0 || bvp == Bvp::Two);
    if (m == 0) return bvp == Bvp::One ? ampB != 0.0 : (ampA != 0.0 || ampC != 0.0);
    return ampA != 0.0 || ampB != 0.0 || ampC != 0.0;
  }

  double max_amplitude() const {
    return std::max({std::abs(ampA), std::abs(ampB), std::abs(ampC)});
  }
};

struct LameConstants {
  double lambda;
  double mu;
};

/// E in Pa, nu in (-1, 0.5).
inline LameConstants lame_from_young_poisson(double E, double nu) {
  if (!(E > 0) || !std::isfinite(E)) throw DomainError("Young's modulus must be positive");
  if (nu == 0.5) throw DomainError("nu = 0.5 (incompressible) has no finite lambda");
  if (!(nu > -1.0 && nu < 0.5)) throw DomainError("Poisson ratio must lie in (-1, 0.5)");
  return {E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)), E / (2.0 * (1.0 + nu))};
}

struct YoungPoisson {
  double E;
  double nu;
};

inline YoungPoisson young_poisson_from_lame(double lambda, double mu) {
  if (!(mu > 0)) throw DomainError("mu must be positive");
  if (!(lambda + mu != 0)) throw DomainError("lambda + mu must be non-zero");
  return {mu * (3.0 * lambda + 2.0 * mu) / (lambda + mu), lambda / (2.0 * (lambda + mu))};
}

/// Parameters of the reference cylinder used throughout the tests and the shipped config.
inline MaterialGeometry<double> reference_cylinder() {
  const auto lm = lame_from_young_poisson(190e9, 0.30);
  return {lm.lambda, lm.mu, 8000.0, 0.15, 0.05};
}

/// Natural frequencies of the simply supported cylinder, keyed by (m, mode), in kHz.
class NaturalFrequencyTable {
 public:
  using Key = std::pair<int, int>;

  void insert(int m, int mode, double khz, std::size_t line);

  std::optional<double> khz(int m, int mode) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<Key, double>& entries() const { return entries_; }

  /// All frequencies for one m in mode order.
  std::map<int, double> for_m(int m) const;

  /// Nearest tabulated frequency (kHz) for circumferential number m, with its mode.
  std::optional<std::pair<int, double>> nearest(int m, double khz) const;

 private:
  std::map<Key, double> entries_;
};

/// Reads a `m,mode,freq_khz` CSV. Throws ParseError (with line number) on a
/// malformed row or missing header and ValidationError on duplicate keys or a
/// non-increasing mode sequence.
NaturalFrequencyTable load_natural_frequencies(std::istream& in);

/// The table compiled into the library.
const NaturalFrequencyTable& bundled_natural_frequencies();

}  // namespace cylresp
