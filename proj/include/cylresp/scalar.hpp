#pragma once

// Math functions are called unqualified throughout the library so that
// multiprecision scalar types are picked up through ADL; the built-in floating
// types resolve to the std overloads pulled in here.

#include <cmath>
#include <numbers>
#include <type_traits>

namespace cylresp {

using std::abs;
using std::acos;
using std::atan2;
using std::cos;
using std::exp;
using std::floor;
using std::hypot;
using std::isfinite;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;

template <typename Scalar>
inline Scalar pi() {
  if constexpr (std::is_floating_point_v<Scalar>) return std::numbers::pi_v<Scalar>;
  else return acos(Scalar(-1));
}

// sin(pi x) and cos(pi x), exact at integer and half-integer x so that the
// axial factors vanish identically at the ends of the cylinder.
template <typename Scalar>
inline Scalar sin_pi(Scalar x) {
  Scalar t = x - Scalar(2) * floor(x / Scalar(2));  // [0, 2)
  if (t == Scalar(0) || t == Scalar(1)) return Scalar(0);
  if (t == Scalar(0.5)) return Scalar(1);
  if (t == Scalar(1.5)) return Scalar(-1);
  return sin(pi<Scalar>() * t);
}

template <typename Scalar>
inline Scalar cos_pi(Scalar x) {
  Scalar t = x - Scalar(2) * floor(x / Scalar(2));
  if (t == Scalar(0.5) || t == Scalar(1.5)) return Scalar(0);
  if (t == Scalar(0)) return Scalar(1);
  if (t == Scalar(1)) return Scalar(-1);
  return cos(pi<Scalar>() * t);
}

}  // namespace cylresp
