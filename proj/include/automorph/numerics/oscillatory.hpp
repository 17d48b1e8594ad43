#pragma once

#include <cmath>
#include <vector>

#include "automorph/numerics/quadrature.hpp"

namespace automorph::numerics {

namespace detail {

// int over the half-period cell [j/2, (j+1)/2] of e(sign x) x^{s-1}.
inline Complex oscillatory_cell(Real sign, Complex s, int j, std::size_t& evals) {
  auto f = [&](Real x) -> Complex {
    return std::exp((s - 1.0) * std::log(x)) * std::exp(Complex(0.0, sign * kTwoPi * x));
  };
  if (j == 0) {
    auto g = [&](Real u, Real) -> Complex { return f(u); };
    const auto r = tanh_sinh_offsets(g, 0.5, 1e-15);
    evals += r.evaluations;
    return r.value;
  }
  const auto r = gauss_kronrod_adaptive(f, 0.5 * j, 0.5 * (j + 1), 1e-15);
  evals += r.evaluations;
  return r.value;
}

// Repeatedly average neighbouring partial sums: an Euler-type transform of the
// (nearly) alternating half-period series.
inline Complex repeated_average(std::vector<Complex> partial) {
  while (partial.size() > 1) {
    for (std::size_t i = 0; i + 1 < partial.size(); ++i) partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    partial.pop_back();
  }
  return partial.front();
}

}  // namespace detail

// int_0^inf e(c x) x^{s-1} dx for 0 < Re s < 1, where e(x) = exp(2 pi i x). The
// integral converges only conditionally: it is integrated over whole half
// periods of the oscillation, and the sequence of partial values is
// extrapolated by repeated averaging over M consecutive cells.
inline QuadratureResult integrate_oscillatory_mellin(Real phase_freq, Complex s, Real tol) {
  if (phase_freq == 0.0 || !std::isfinite(phase_freq))
    throw DomainError("integrate_oscillatory_mellin: frequency must be finite and nonzero");
  if (!(s.real() > 0.0 && s.real() < 1.0))
    throw DomainError("integrate_oscillatory_mellin: requires 0 < Re s < 1");
  if (!(tol > 0)) throw DomainError("integrate_oscillatory_mellin: tol must be positive");
  const Real sign = phase_freq > 0 ? 1.0 : -1.0;
  // x -> x / |c| reduces to unit frequency.
  const Complex scale = std::exp(-s * std::log(std::abs(phase_freq)));

  std::size_t evals = 0;
  std::vector<Complex> partial;  // partial[j] = integral over [0, j/2]
  partial.push_back(0.0);
  auto extend_to = [&](std::size_t cells) {
    while (partial.size() <= cells) {
      const int j = static_cast<int>(partial.size()) - 1;
      partial.push_back(partial.back() + detail::oscillatory_cell(sign, s, j, evals));
    }
  };
  auto extrapolate = [&](std::size_t start, std::size_t m) {
    extend_to(start + m);
    return detail::repeated_average(
        std::vector<Complex>(partial.begin() + start, partial.begin() + start + m + 1));
  };

  std::size_t start = 16, m = 12;
  Complex previous = extrapolate(start, m);
  Real error = 0.0;
  for (int round = 0; round < 12; ++round) {
    start += 8;
    m += 4;
    const Complex current = extrapolate(start, m);
    error = std::abs(current - previous);
    previous = current;
    if (error <= 0.1 * tol * std::max<Real>(1.0, std::abs(current))) {
      return {scale * current, std::abs(scale) * error, evals};
    }
  }
  throw ConvergenceError("integrate_oscillatory_mellin: extrapolation did not settle",
                         (scale * previous).real(), (scale * previous).imag(), error);
}

}  // namespace automorph::numerics
