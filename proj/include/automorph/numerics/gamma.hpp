#pragma once

#include <array>
#include <cmath>
#include <string>

#include "automorph/numerics/types.hpp"

namespace automorph::numerics {

namespace detail {

// Lanczos approximation, g = 607/128 with 15 terms (Godfrey's coefficient set).
// Relative error near 1e-15 on Re z >= 1/2.
inline constexpr Real kLanczosG = 607.0 / 128.0;
inline constexpr std::array<Real, 15> kLanczosCoeff = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

// log Gamma(z) for Re z >= 1/2. The imaginary part is not branch-corrected,
// so only exp() of the result is meaningful.
inline Complex lanczos_log_gamma(Complex z) {
  z -= 1.0;
  Complex sum = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) sum += kLanczosCoeff[i] / (z + Real(i));
  const Complex t = z + kLanczosG + 0.5;
  constexpr Real half_log_two_pi = 0.91893853320467274178;
  return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

inline void check_gamma_pole(Complex s, const char* where) {
  long n = 0;
  if (near_integer(s, 0.0, &n) && n <= 0)
    throw PoleError(std::string(where) + ": pole at s = " + std::to_string(n));
}

}  // namespace detail

// Gamma(s) for complex s off the non-positive integers.
inline Complex complex_gamma(Complex s) {
  detail::check_gamma_pole(s, "complex_gamma");
  if (s.real() < 0.5) {
    // Reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s).
    const Complex sn = sin_pi(s);
    return kPi / (sn * std::exp(detail::lanczos_log_gamma(1.0 - s)));
  }
  return std::exp(detail::lanczos_log_gamma(s));
}

// 1/Gamma(s), entire; exact zeros at the non-positive integers.
inline Complex reciprocal_gamma(Complex s) {
  long n = 0;
  if (near_integer(s, 0.0, &n) && n <= 0) return 0.0;
  if (s.real() < 0.5) return sin_pi(s) * std::exp(detail::lanczos_log_gamma(1.0 - s)) / kPi;
  return std::exp(-detail::lanczos_log_gamma(s));
}

// log|Gamma(s)| for real-part decisions (magnitude estimates, truncation).
inline Real log_abs_gamma(Complex s) {
  if (s.real() < 0.5) {
    return std::log(kPi) - std::log(std::abs(sin_pi(s))) -
           detail::lanczos_log_gamma(1.0 - s).real();
  }
  return detail::lanczos_log_gamma(s).real();
}

}  // namespace automorph::numerics
