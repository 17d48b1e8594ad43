#pragma once

#include <algorithm>
#include <cmath>

#include "automorph/numerics/types.hpp"

namespace automorph::numerics {

namespace detail {

// Integrand of K_nu(y) = 1/2 int_R exp(-y cosh t + nu t) dt along Im t = theta,
// as a log-magnitude/phase exponent.
struct BesselKLine {
  Complex nu;
  Real y, theta, cos_theta, sin_theta;

  Complex exponent(Real u) const {
    const Real eu = std::exp(u), emu = 1.0 / eu;
    const Real ch = 0.5 * (eu + emu), sh = 0.5 * (eu - emu);
    return Complex(-y * ch * cos_theta, -y * sh * sin_theta) + nu * Complex(u, theta);
  }
  Real log_magnitude(Real u) const {
    return -y * std::cosh(u) * cos_theta + nu.real() * u - nu.imag() * theta;
  }
};

// Distance from `start` in direction `dir` past which the log-magnitude has
// dropped below `floor` for good (it is concave in u).
inline Real bessel_k_cutoff(const BesselKLine& line, Real start, Real dir, Real floor) {
  Real step = 0.5;
  Real u = start;
  while (line.log_magnitude(u + dir * step) > floor) {
    u += dir * step;
    step *= 2.0;
    if (step > 1e4) break;
  }
  Real lo = u, hi = u + dir * step;
  for (int i = 0; i < 60; ++i) {
    const Real mid = 0.5 * (lo + hi);
    (line.log_magnitude(mid) > floor ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace detail

// Modified Bessel function K_nu(y), complex order, real y > 0, from the
// integral representation 1/2 int_R exp(-y cosh t + nu t) dt. The line of
// integration is moved to Im t = theta through (or next to) the saddle point so
// imaginary orders do not cancel catastrophically; the trapezoidal rule on that
// line converges exponentially, with the range cut where the integrand drops
// below 1e-18 of its peak.
inline Flagged bessel_k(Complex nu, Real y) {
  if (!(y > 0) || !std::isfinite(y)) throw DomainError("bessel_k: y must be positive and finite");
  if (nu.imag() < 0 || (nu.imag() == 0 && nu.real() < 0)) nu = -nu;  // K_nu = K_{-nu}
  const Real b = nu.imag();
  const Real delta = std::min(0.5, 2.0 / std::max(b, 1e-300));
  Real theta = b < y ? std::asin(b / y) : 0.5 * kPi;
  theta = std::min(theta, 0.5 * kPi - delta);
  detail::BesselKLine line{nu, y, theta, std::cos(theta), std::sin(theta)};

  // Peak of the magnitude on the line: y sinh u cos(theta) = Re nu.
  const Real peak_u = std::asinh(nu.real() / (y * line.cos_theta));
  const Real peak = line.log_magnitude(peak_u);
  if (peak < -745.0 + 50.0) return {0.0, true};
  const Real floor = peak - std::log(1e18);
  const Real lo = detail::bessel_k_cutoff(line, peak_u, -1.0, floor);
  const Real hi = detail::bessel_k_cutoff(line, peak_u, +1.0, floor);

  // Initial step resolves the fastest phase rotation at the ends.
  const Real freq = std::max({std::abs(-y * std::cosh(lo) * line.sin_theta + b),
                              std::abs(-y * std::cosh(hi) * line.sin_theta + b), 1.0});
  Real h = std::min(0.25, 1.0 / freq);
  int n = std::max(2, static_cast<int>(std::ceil((hi - lo) / h)));
  h = (hi - lo) / n;

  Complex sum = 0.0;
  Real abs_sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const Complex v = std::exp(line.exponent(lo + i * h) - peak);
    const Real w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w * v;
    abs_sum += w * std::abs(v);
  }
  Complex estimate = h * sum;
  for (int level = 0; level < 16; ++level) {
    Complex extra = 0.0;
    for (int i = 0; i < n; ++i) {
      const Complex v = std::exp(line.exponent(lo + (i + 0.5) * h) - peak);
      extra += v;
      abs_sum += std::abs(v);
    }
    sum += extra;
    n *= 2;
    h *= 0.5;
    const Complex next = h * sum;
    const Real diff = std::abs(next - estimate);
    estimate = next;
    if (diff <= std::max(1e-9 * std::abs(estimate), 64.0 * kEps * h * abs_sum)) break;
  }
  const Complex value = 0.5 * estimate * std::exp(Complex(peak, 0.0));
  if (value == Complex(0.0, 0.0)) return {0.0, true};
  return {value, false};
}

// Convenience: value only.
inline Complex bessel_k_value(Complex nu, Real y) { return bessel_k(nu, y).value; }

}  // namespace automorph::numerics
