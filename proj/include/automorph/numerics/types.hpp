#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

#include "automorph/errors.hpp"

namespace automorph::numerics {

// Working precision. Everything downstream is written against these two
// aliases so a wider floating type can be dropped in here.
using Real = double;
using Complex = std::complex<Real>;

inline constexpr Real kPi = std::numbers::pi_v<Real>;
inline constexpr Real kTwoPi = 2 * std::numbers::pi_v<Real>;
inline constexpr Real kEps = 2.220446049250313e-16;

struct QuadratureResult {
  Complex value{};
  Real abs_error_estimate = 0;
  std::size_t evaluations = 0;
};

// Value plus an underflow marker for functions that decay like e^{-x}.
struct Flagged {
  Complex value{};
  bool underflow = false;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline Complex require_finite(Complex z, const char* where) {
  if (!is_finite(z)) throw DomainError(std::string(where) + ": non-finite result");
  return z;
}

// Nearest integer when z is within tol of a real integer, otherwise false.
inline bool near_integer(Complex z, Real tol, long* nearest = nullptr) {
  const Real r = std::round(z.real());
  if (std::abs(z.real() - r) <= tol && std::abs(z.imag()) <= tol) {
    if (nearest) *nearest = static_cast<long>(r);
    return true;
  }
  return false;
}

// sin(pi z) and cos(pi z) with the real part reduced exactly, so that zeros at
// the integers come out as exact zeros of the real factor.
inline Complex sin_pi(Complex z) {
  const Real x = z.real(), y = z.imag();
  Real r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  Real s, c;
  if (r == 0.0 || r == 1.0) {
    s = 0.0;
    c = r == 0.0 ? 1.0 : -1.0;
  } else if (r == 0.5) {
    s = 1.0;
    c = 0.0;
  } else if (r == 1.5) {
    s = -1.0;
    c = 0.0;
  } else {
    s = std::sin(kPi * r);
    c = std::cos(kPi * r);
  }
  return {s * std::cosh(kPi * y), c * std::sinh(kPi * y)};
}

inline Complex cos_pi(Complex z) {
  const Real x = z.real(), y = z.imag();
  Real r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  Real s, c;
  if (r == 0.5 || r == 1.5) {
    c = 0.0;
    s = r == 0.5 ? 1.0 : -1.0;
  } else if (r == 0.0) {
    c = 1.0;
    s = 0.0;
  } else if (r == 1.0) {
    c = -1.0;
    s = 0.0;
  } else {
    s = std::sin(kPi * r);
    c = std::cos(kPi * r);
  }
  return {c * std::cosh(kPi * y), -s * std::sinh(kPi * y)};
}

// e(z) = exp(2 pi i z).
inline Complex e_of(Complex z) { return std::exp(Complex(0, kTwoPi) * z); }

// base^exponent for base > 0, rounded once from extended precision so the
// phase exponent*log(base) does not lose digits when it is large.
inline std::complex<long double> real_power_extended(Real base, Complex exponent) {
  using LD = long double;
  const LD lb = std::log(static_cast<LD>(base));
  const LD re = static_cast<LD>(exponent.real()) * lb, im = static_cast<LD>(exponent.imag()) * lb;
  const LD mag = std::exp(re);
  return {mag * std::cos(im), mag * std::sin(im)};
}

inline Complex real_power(Real base, Complex exponent) {
  const auto p = real_power_extended(base, exponent);
  return {static_cast<Real>(p.real()), static_cast<Real>(p.imag())};
}

}  // namespace automorph::numerics
