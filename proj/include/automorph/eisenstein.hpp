#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "automorph/coefficients/series.hpp"
#include "automorph/numerics.hpp"
#include "automorph/report.hpp"

namespace automorph::eisenstein {

using numerics::Complex;
using numerics::kPi;
using numerics::kTwoPi;
using numerics::Real;

struct UpperHalfPoint {
  Real x = 0.0;
  Real y = 1.0;
};

inline UpperHalfPoint make_point(Real x, Real y) {
  if (!(y > 0) || !std::isfinite(x) || !std::isfinite(y)) throw DomainError("point must lie in the upper half plane");
  return {x, y};
}

// Integer matrix [[a, b], [c, d]] acting by (a z + b) / (c z + d).
struct Matrix2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  Matrix2 operator*(const Matrix2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  std::int64_t det() const { return a * d - b * c; }
  std::int64_t trace() const { return a + d; }
};

// gamma z, with the imaginary part computed as y / |cz + d|^2.
inline UpperHalfPoint apply(const Matrix2& g, UpperHalfPoint z) {
  const Complex w(z.x, z.y);
  const Complex den = Real(g.c) * w + Real(g.d);
  const Complex image = (Real(g.a) * w + Real(g.b)) / den;
  return {image.real(), z.y / std::norm(den)};
}

struct ReductionResult {
  UpperHalfPoint reduced;
  Matrix2 matrix;  // reduced = matrix * input
};

// Standard reduction into |x| <= 1/2, x^2 + y^2 >= 1 by translations and
// z -> -1/z. The reduced point is recomputed from the accumulated matrix.
inline ReductionResult reduce_to_fundamental_domain(UpperHalfPoint z) {
  if (!(z.y > 0)) throw DomainError("reduce_to_fundamental_domain: y must be positive");
  Matrix2 g;
  UpperHalfPoint w = z;
  for (int iter = 0; iter < 10000; ++iter) {
    const Real shift = std::round(w.x);
    if (std::abs(shift) > 0 && std::abs(w.x) > 0.5) {
      const auto n = static_cast<std::int64_t>(shift);
      g = Matrix2{1, -n, 0, 1} * g;
      w = apply(g, z);
      continue;
    }
    if (w.x * w.x + w.y * w.y < 1.0) {
      g = Matrix2{0, -1, 1, 0} * g;
      w = apply(g, z);
      continue;
    }
    return {w, g};
  }
  throw ConvergenceError("reduce_to_fundamental_domain: no convergence", z.x, z.y, 0.0);
}

// The expansion below reproduces the direct lattice sum exactly; the
// calibration test pins this ratio.
inline constexpr int kExpansionScaleNum = 1;
inline constexpr int kExpansionScaleDen = 1;

namespace detail {

// Shell sums S_r = sum over max(|m|, |n|) = r of y^s |m z + n|^{-2s}.
inline Complex lattice_shell(Complex s, UpperHalfPoint z, int r) {
  Complex total = 0.0;
  auto term = [&](int m, int n) {
    const Real re = m * z.x + n, im = m * z.y;
    const Real q = re * re + im * im;
    return std::exp(-s * std::log(q));
  };
  // Rows m = +-r (all n), then columns n = +-r with |m| < r.
  for (int n = -r; n <= r; ++n) total += term(r, n) + term(-r, n);
  for (int m = -r + 1; m <= r - 1; ++m) total += term(m, r) + term(m, -r);
  return total * std::exp(s * std::log(z.y));
}

}  // namespace detail

// pi^{-s} Gamma(s) zeta(2s) sum over Gamma_inf \ Gamma of (Im gamma z)^s, as
// 1/2 pi^{-s} Gamma(s) times the full lattice sum over (m, n) != 0 of
// y^s / |m z + n|^{2s}, truncated to the boxes max(|m|,|n|) <= R, 2R, 4R.
// The box truncation error expands in powers R'^{2-2s-2j}, R' = R + 1/2, which
// two Richardson steps remove; the last step's change is the error estimate.
inline EvalReport eval_direct_sum(Complex s, UpperHalfPoint z, int R = 64) {
  if (s.real() <= 1.0) throw DomainError("eval_direct_sum: needs Re s > 1");
  if (!(z.y > 0)) throw DomainError("eval_direct_sum: y must be positive");
  if (R < 4) throw DomainError("eval_direct_sum: truncation too small");
  std::array<Complex, 3> partial{};
  Complex running = 0.0;
  int level = 0;
  for (int r = 1; r <= 4 * R; ++r) {
    running += detail::lattice_shell(s, z, r);
    if (r == R || r == 2 * R || r == 4 * R) partial[level++] = running;
  }
  // partial_i = E + C0 x_i + C1 w_i with x_i = R_i'^a, w_i = R_i'^{a-2}.
  const Complex a = 2.0 - 2.0 * s;
  std::array<Complex, 3> x{}, w{};
  for (int i = 0; i < 3; ++i) {
    const Real rp = (R << i) + 0.5;
    x[i] = std::exp(a * std::log(rp));
    w[i] = std::exp((a - 2.0) * std::log(rp));
  }
  // Two-level value (C1 ignored) from the two largest boxes, then the full solve.
  const Complex e2 = (x[2] * partial[1] - x[1] * partial[2]) / (x[2] - x[1]);
  const Complex d01 = partial[1] - partial[0], d12 = partial[2] - partial[1];
  const Complex x01 = x[1] - x[0], x12 = x[2] - x[1], w01 = w[1] - w[0], w12 = w[2] - w[1];
  const Complex c1 = (d12 * x01 - d01 * x12) / (w12 * x01 - w01 * x12);
  const Complex c0 = (d01 - c1 * w01) / x01;
  const Complex e = partial[2] - c0 * x[2] - c1 * w[2];
  const Complex prefactor = 0.5 * std::exp(-s * std::log(kPi)) * numerics::complex_gamma(s);
  EvalReport rep;
  rep.value = prefactor * e;
  rep.error = std::abs(prefactor) * (std::abs(e - e2) + 64.0 * numerics::kEps * std::abs(e));
  rep.terms = static_cast<std::size_t>(8 * R + 1) * (8 * R + 1) - 1;
  rep.method = "lattice sum with Richardson extrapolation";
  return rep;
}

// sigma_{1-2s}(n) = sum_{d | n} d^{1-2s}.
inline Complex divisor_sigma(long n, Complex exponent) {
  Complex total = 0.0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    total += numerics::real_power(Real(d), exponent);
    if (d * d != n) total += numerics::real_power(Real(n / d), exponent);
  }
  return total;
}

namespace detail {

// f(c) for f analytic near c from the mean over a circle; used where the
// formula has a removable singularity.
template <class F>
Complex circle_mean(F&& f, Complex c, Real radius, int points = 16) {
  Complex sum = 0.0;
  for (int j = 0; j < points; ++j) sum += f(c + std::polar(radius, kTwoPi * (j + 0.5) / points));
  return sum / Real(points);
}

inline Complex constant_term_raw(Complex s, Real y) {
  return numerics::completed_zeta(2.0 * s) * numerics::real_power(y, s) +
         numerics::completed_zeta(2.0 * s - 1.0) * numerics::real_power(y, 1.0 - s);
}

}  // namespace detail

inline void check_eisenstein_pole(Complex s, const char* where) {
  if (std::abs(s - 1.0) < 1e-12 || std::abs(s) < 1e-12)
    throw PoleError(std::string(where) + ": the Eisenstein series has a pole at s = " + (std::abs(s) < 1e-12 ? "0" : "1"));
}

// xi(2s) y^s + xi(2s-1) y^{1-s}. At s = 1/2 both terms have poles that cancel.
inline Complex constant_term(Complex s, Real y) {
  check_eisenstein_pole(s, "constant_term");
  if (std::abs(s - 0.5) < 1e-3) {
    return detail::circle_mean([&](Complex t) { return detail::constant_term_raw(t, y); }, s, 0.05, 32);
  }
  return detail::constant_term_raw(s, y);
}

// Fourier coefficients of E_s: E_s(x + iy) = constant_term(s, y)
//   + sum_{n != 0} A_n sqrt(y) K_{s-1/2}(2 pi |n| y) e(n x),
// A_n = 2 |n|^{s-1/2} sigma_{1-2s}(|n|). Returns A_1..A_count.
inline std::vector<Complex> fourier_weights(Complex s, std::size_t count) {
  std::vector<Complex> w(count);
  for (std::size_t n = 1; n <= count; ++n)
    w[n - 1] = 2.0 * numerics::real_power(Real(n), s - 0.5) * divisor_sigma(static_cast<long>(n), 1.0 - 2.0 * s);
  return w;
}

struct ExpansionDetail {
  Complex value{};
  Real error = 0.0;
  std::size_t terms = 0;
};

// E_s(x + iy) from its Fourier expansion at an arbitrary point (no reduction).
// Terms are added until the Bessel factor has passed its turning point and
// the term falls below tol times the running scale.
inline ExpansionDetail eval_expansion(Complex s, UpperHalfPoint z, Real tol) {
  const Complex nu = s - 0.5;
  ExpansionDetail out;
  out.value = constant_term(s, z.y) * (Real(kExpansionScaleNum) / kExpansionScaleDen);
  Real scale = std::abs(out.value);
  const Real turning = std::abs(nu.imag()) + std::abs(nu.real());
  Real last = 0.0;
  for (long n = 1; n < 100000; ++n) {
    const Real arg = kTwoPi * n * z.y;
    const auto k = numerics::bessel_k(nu, arg);
    const Complex weight = 2.0 * numerics::real_power(Real(n), s - 0.5) * divisor_sigma(n, 1.0 - 2.0 * s);
    const Complex term = weight * std::sqrt(z.y) * k.value * 2.0 * std::cos(kTwoPi * n * z.x) *
                         (Real(kExpansionScaleNum) / kExpansionScaleDen);
    out.value += term;
    out.terms = static_cast<std::size_t>(n);
    scale = std::max(scale, std::abs(term));
    last = std::abs(weight) * std::sqrt(z.y) * std::abs(k.value) * 2.0;
    if (arg > turning + 1.0 && (k.underflow || last < tol * std::max(scale, 1e-300))) break;
  }
  // The remaining terms shrink at least geometrically with ratio e^{-2 pi y}.
  out.error = last * std::exp(-kTwoPi * z.y) / (1.0 - std::exp(-kTwoPi * z.y)) + 32.0 * numerics::kEps * scale;
  return out;
}

// The completed Eisenstein series E_s(z), any s except 0 and 1. z is first
// reduced into the standard fundamental domain.
inline EvalReport eval_completed_eisenstein(Complex s, UpperHalfPoint z, Real tol = 1e-14) {
  check_eisenstein_pole(s, "eval_completed_eisenstein");
  if (!(tol > 0)) throw DomainError("eval_completed_eisenstein: tol must be positive");
  const auto red = reduce_to_fundamental_domain(z);
  const auto e = eval_expansion(s, red.reduced, tol);
  EvalReport rep;
  rep.value = e.value;
  rep.error = e.error;
  rep.terms = e.terms;
  rep.method = "Fourier-Bessel expansion at the reduced point";
  return rep;
}

// Residue of E_s at s = 1 (the constant 1/2 from xi(2s-1)).
inline Real residue_at_one() { return 0.5; }

namespace detail {

// Coefficient list c_0..c_N (c_0 the constant term) with the common scale
// folded in; empty entries are zero.
inline std::vector<Complex> with_constant(const CoefficientSeries& f, std::size_t N) {
  std::vector<Complex> c(N + 1, 0.0);
  if (f.constant_term) c[0] = *f.constant_term;
  for (std::size_t n = 1; n <= N; ++n) c[n] = f.scaled(n);
  return c;
}

// Number of q-expansion terms after which |c_n| e^{-2 pi n y_min} stays below
// rel times the largest term (coefficient growth is polynomial).
inline std::size_t expansion_length(const std::vector<Complex>& c, Real y_min, Real rel) {
  Real peak = 0.0;
  std::size_t last = 0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const Real t = std::abs(c[n]) * std::exp(-kTwoPi * n * y_min);
    peak = std::max(peak, t);
    if (t > rel * peak) last = n;
  }
  return last;
}

// int over x in the slice of the fundamental domain at height y of e(L x).
inline Real slice_integral(long L, Real y) {
  if (y >= 1.0) return L == 0 ? 1.0 : 0.0;
  const Real x0 = std::sqrt((1.0 - y) * (1.0 + y));
  if (L == 0) return 1.0 - 2.0 * x0;
  return -std::sin(kTwoPi * L * x0) / (kPi * L);
}

}  // namespace detail

struct RSIntegralReport {
  Complex value{};
  Real error = 0.0;
  Real cusp_height = 0.0;  // Y
  std::size_t evaluations = 0;
  std::size_t f_terms = 0, g_terms = 0;
};

// I(s) = int over the fundamental domain of y^{k-2} F(z) conj(G(z)) E_s(z) dx dy.
// At each height the x-integral is done exactly, mode by mode, over the slice
// {|x| <= 1/2, x^2 + y^2 >= 1}; the y-integral runs over [sqrt3/2, 1] (tanh-sinh,
// square-root endpoint at y = 1) and [1, Y]. Above Y the integrand is bounded
// by its leading term.
inline RSIntegralReport rankin_selberg_integral(const CoefficientSeries& F, const CoefficientSeries& G, Complex s,
                                                Real tol = 1e-10) {
  const auto* hf = std::get_if<Holomorphic>(&F.spectral);
  const auto* hg = std::get_if<Holomorphic>(&G.spectral);
  if (!hf || !hg) throw DomainError("rankin_selberg_integral: both forms must be holomorphic");
  if (hf->weight != hg->weight) throw DomainError("rankin_selberg_integral: weights differ");
  if (F.constant_term && *F.constant_term != Complex(0.0))
    throw DomainError("rankin_selberg_integral: F must be cuspidal");
  if (F.normalization != Normalization::arithmetic || G.normalization != Normalization::arithmetic)
    throw DomainError("rankin_selberg_integral: q-expansion (arithmetic) coefficients required");
  check_eisenstein_pole(s, "rankin_selberg_integral");
  if (!(tol > 0)) throw DomainError("rankin_selberg_integral: tol must be positive");
  const int k = hf->weight;
  const Real y_min = std::sqrt(3.0) / 2.0;

  const auto fc = detail::with_constant(F, F.count());
  const auto gc = detail::with_constant(G, G.count());
  RSIntegralReport rep;
  rep.f_terms = detail::expansion_length(fc, y_min, 1e-20);
  rep.g_terms = detail::expansion_length(gc, y_min, 1e-20);
  if (rep.f_terms + 1 >= fc.size() && fc.size() > 1 && std::abs(fc.back()) > 0)
    throw DomainError("rankin_selberg_integral: F has too few coefficients for the truncation");
  if (rep.g_terms + 1 >= gc.size() && gc.size() > 1 && std::abs(gc.back()) > 0)
    throw DomainError("rankin_selberg_integral: G has too few coefficients for the truncation");
  const long NF = static_cast<long>(rep.f_terms), NG = static_cast<long>(rep.g_terms);
  bool all_zero = true;
  for (long n = 1; n <= NF; ++n) all_zero = all_zero && fc[n] == Complex(0.0);
  if (all_zero) return rep;

  // E_s modes needed: |j| up to the largest |n - m| plus the slice spread.
  const long J = NF + NG + 24;
  const auto weights = fourier_weights(s, static_cast<std::size_t>(J));
  const Complex nu = s - 0.5;
  std::vector<Complex> gbar(NG + 1);
  for (long m = 0; m <= NG; ++m) gbar[m] = std::conj(gc[m]);

  auto integrand = [&](Real y) -> Complex {
    // c_j(y) for |j| <= J.
    std::vector<Complex> cj(J + 1);
    cj[0] = constant_term(s, y);
    for (long j = 1; j <= J; ++j) {
      const auto kv = numerics::bessel_k(nu, kTwoPi * j * y);
      cj[j] = kv.underflow ? Complex(0.0) : weights[j - 1] * std::sqrt(y) * kv.value;
    }
    const Real ykm2 = std::pow(y, k - 2);
    Complex total = 0.0;
    for (long n = 1; n <= NF; ++n) {
      if (fc[n] == Complex(0.0)) continue;
      for (long m = 0; m <= NG; ++m) {
        if (gbar[m] == Complex(0.0)) continue;
        const Real decay = std::exp(-kTwoPi * Real(n + m) * y);
        if (decay == 0.0) continue;
        // sum_j c_j int_slice e((n - m + j) x) dx
        Complex x_part = 0.0;
        if (y >= 1.0) {
          const long j = m - n;
          if (std::labs(j) <= J) x_part = cj[std::labs(j)];
        } else {
          for (long j = -J; j <= J; ++j) x_part += cj[std::labs(j)] * detail::slice_integral(n - m + j, y);
        }
        total += fc[n] * gbar[m] * decay * x_part;
      }
    }
    return ykm2 * total;
  };

  // Cusp height: leading term y^{k-2} |a_1 b_0| e^{-2 pi y} |c_1| or
  // y^{k-2} |a_1 b_1| e^{-4 pi y} |c_0| bounded below tol relative to the bulk.
  const Real sigma = std::max(s.real(), 1.0 - s.real());
  const Real growth = k - 2 + sigma + 1.0;
  auto tail_bound = [&](Real Y) {
    // int_Y^inf y^{growth} e^{-4 pi y} dy <= Y^{growth} e^{-4 pi Y} / (4 pi - growth / Y)
    const Real rate = 2.0 * kTwoPi - growth / Y;
    if (rate <= 0) return std::numeric_limits<Real>::infinity();
    Real coef = 0.0;
    for (long n = 1; n <= NF; ++n)
      for (long m = 0; m <= NG; ++m)
        if (n + m >= 1) coef = std::max(coef, std::abs(fc[n] * gbar[m]));
    const Real c0 = std::abs(constant_term(s, Y)) / std::pow(Y, sigma) + std::abs(weights[0]) + 1.0;
    return coef * c0 * std::pow(Y, growth) * std::exp(-2.0 * kTwoPi * Y) / rate * Real((NF + 1) * (NG + 1));
  };

  const auto lower = numerics::integrate_adaptive(integrand, y_min, 1.0, tol * 1e-2, numerics::Singularities{false, true});
  auto upper = numerics::gauss_kronrod_adaptive(integrand, 1.0, 2.0, tol * 1e-2);
  Real Y = 2.0;
  Complex bulk = lower.value + upper.value;
  std::size_t evals = lower.evaluations + upper.evaluations;
  Real err = lower.abs_error_estimate + upper.abs_error_estimate;
  while (tail_bound(Y) > 1e-2 * tol * std::abs(bulk) && Y < 200.0) {
    const auto piece = numerics::gauss_kronrod_adaptive(integrand, Y, Y + 1.0, tol * 1e-2 * std::abs(bulk));
    bulk += piece.value;
    err += piece.abs_error_estimate;
    evals += piece.evaluations;
    Y += 1.0;
  }
  rep.value = bulk;
  rep.cusp_height = Y;
  rep.error = err + tail_bound(Y);
  rep.evaluations = evals;
  return rep;
}

}  // namespace automorph::eisenstein
