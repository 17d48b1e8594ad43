#pragma once

#include <cmath>

#include "automorph/numerics/gamma.hpp"

namespace automorph::numerics {

namespace detail {

// gamma(s, x) = x^s e^{-x} sum_{n>=0} x^n / (s (s+1) ... (s+n)).
inline Complex lower_incomplete_gamma_series(Complex s, Real x) {
  Complex term = 1.0 / s;
  Complex sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (s + Real(n));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && Real(n) > x) break;
  }
  return std::exp(s * std::log(x) - x) * sum;
}

// Legendre continued fraction for Gamma(s, x), modified Lentz iteration.
inline Complex upper_incomplete_gamma_cf(Complex s, Real x) {
  constexpr Real tiny = 1e-300;
  Complex b = x + 1.0 - s;
  Complex c = 1.0 / tiny;
  Complex d = 1.0 / b;
  Complex h = d;
  for (int i = 1; i < 100000; ++i) {
    const Complex an = -Real(i) * (Real(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const Complex delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return std::exp(s * std::log(x) - x) * h;
  }
  throw ConvergenceError("upper_incomplete_gamma: continued fraction did not converge", h.real(),
                         h.imag(), std::abs(h));
}

}  // namespace detail

// Lower incomplete gamma by its power series; any x > 0.
inline Complex lower_incomplete_gamma(Complex s, Real x) {
  if (!(x > 0)) throw DomainError("lower_incomplete_gamma: x must be positive");
  detail::check_gamma_pole(s, "lower_incomplete_gamma");
  return detail::lower_incomplete_gamma_series(s, x);
}

// Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt for x > 0. Entire in s.
// Continued fraction for x >= |s| + 1, Gamma(s) - gamma(s, x) below that.
// When e^{-x} underflows the value is returned as 0 with the flag set.
inline Flagged upper_incomplete_gamma(Complex s, Real x) {
  if (!(x > 0)) throw DomainError("upper_incomplete_gamma: x must be positive");
  if (-x + s.real() * std::log(x) < -745.0) return {0.0, true};
  if (x >= std::abs(s) + 1.0) return {detail::upper_incomplete_gamma_cf(s, x), false};
  long n = 0;
  if (near_integer(s, 1e-6, &n) && n <= 0) {
    // Gamma(s) - gamma(s, x) cancels a pole here; the continued fraction is
    // entire in s and still converges (slowly) for x >= 1.
    if (x >= 1.0) return {detail::upper_incomplete_gamma_cf(s, x), false};
    throw DomainError("upper_incomplete_gamma: s at a non-positive integer needs x >= 1");
  }
  return {complex_gamma(s) - detail::lower_incomplete_gamma_series(s, x), false};
}

}  // namespace automorph::numerics
