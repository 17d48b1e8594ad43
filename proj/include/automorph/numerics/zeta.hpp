#pragma once

#include <array>
#include <cmath>

#include "automorph/numerics/gamma.hpp"

namespace automorph::numerics {

namespace detail {

// B_{2k} / (2k)! for k = 1..30. The first fifteen from exact rationals, the rest
// from B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}, where zeta(2k) = 1 to
// working precision once 2k > 52.
inline const std::array<Real, 31>& bernoulli_over_factorial() {
  static const std::array<Real, 31> table = [] {
    std::array<Real, 31> t{};
    constexpr std::array<std::array<Real, 2>, 15> exact = {{{1.0, 6.0},
                                                            {-1.0, 30.0},
                                                            {1.0, 42.0},
                                                            {-1.0, 30.0},
                                                            {5.0, 66.0},
                                                            {-691.0, 2730.0},
                                                            {7.0, 6.0},
                                                            {-3617.0, 510.0},
                                                            {43867.0, 798.0},
                                                            {-174611.0, 330.0},
                                                            {854513.0, 138.0},
                                                            {-236364091.0, 2730.0},
                                                            {8553103.0, 6.0},
                                                            {-23749461029.0, 870.0},
                                                            {8615841276005.0, 14322.0}}};
    Real factorial = 1.0;
    for (int k = 1; k <= 30; ++k) {
      factorial *= Real(2 * k - 1) * Real(2 * k);
      if (k <= 15) {
        t[k] = exact[k - 1][0] / exact[k - 1][1] / factorial;
      } else {
        Real zeta2k = 0.0;
        for (int n = 1; n <= 4; ++n) zeta2k += std::pow(Real(n), -2.0 * k);
        t[k] = (k % 2 == 1 ? 2.0 : -2.0) * zeta2k / std::pow(kTwoPi, 2.0 * k);
      }
    }
    return t;
  }();
  return table;
}

// Euler-Maclaurin with head length n_head and `order` Bernoulli corrections.
inline Complex zeta_euler_maclaurin(Complex s, int n_head, int order) {
  Complex sum = 0.0;
  for (int n = n_head - 1; n >= 1; --n) sum += std::exp(-s * std::log(Real(n)));
  const Real N = n_head;
  const Complex N_to_minus_s = std::exp(-s * std::log(N));
  sum += N * N_to_minus_s / (s - 1.0) + 0.5 * N_to_minus_s;
  const auto& b = bernoulli_over_factorial();
  // Rising product s (s+1) ... (s+2k-2) times N^{-s-2k+1}.
  Complex factor = s * N_to_minus_s / N;
  for (int k = 1; k <= order; ++k) {
    sum += b[k] * factor;
    factor *= (s + Real(2 * k - 1)) * (s + Real(2 * k)) / (N * N);
  }
  return sum;
}

inline int zeta_head_length(Complex s) { return 24 + static_cast<int>(std::ceil(std::abs(s))); }

}  // namespace detail

// Riemann zeta. Euler-Maclaurin on Re s >= 0, functional equation below.
inline Complex riemann_zeta(Complex s, int order = 14) {
  if (s == Complex(1.0, 0.0)) throw PoleError("riemann_zeta: pole at s = 1");
  if (s.real() < 0.0) {
    long n = 0;
    // Trivial zeros at the negative even integers.
    if (near_integer(s, 0.0, &n) && n < 0 && n % 2 == 0) return 0.0;
    const Complex one_minus = 1.0 - s;
    return std::exp(s * std::log(2.0) + (s - 1.0) * std::log(kPi)) * sin_pi(0.5 * s) *
           complex_gamma(one_minus) * detail::zeta_euler_maclaurin(one_minus, detail::zeta_head_length(one_minus), order);
  }
  return detail::zeta_euler_maclaurin(s, detail::zeta_head_length(s), order);
}

// Completed zeta xi(s) = pi^{-s/2} Gamma(s/2) zeta(s); poles at s = 0 and 1.
inline Complex completed_zeta(Complex s) {
  if (s == Complex(0.0, 0.0) || s == Complex(1.0, 0.0))
    throw PoleError("completed_zeta: pole at s = 0 or 1");
  if (s.real() < 0.5) s = 1.0 - s;  // xi(s) = xi(1-s)
  return std::exp(-0.5 * s * std::log(kPi)) * complex_gamma(0.5 * s) * riemann_zeta(s);
}

}  // namespace automorph::numerics
