#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "automorph/coefficients/series.hpp"
#include "automorph/numerics/types.hpp"
#include "automorph/numerics/zeta.hpp"

namespace automorph::extsquare {

using numerics::Complex;
using numerics::Real;

using Alpha = std::array<Complex, 4>;
using automorph::gl4_duality_signs;

struct SatakeParams {
  Alpha alpha{Complex(1.0), Complex(1.0), Complex(1.0), Complex(1.0)};
  bool unimodular = true;  // prod(alpha) = 1
};

// Validates nonzero entries and sets the unimodular flag when the product is
// within tol of 1.
inline SatakeParams make_satake(const Alpha& alpha, Real tol = 1e-12) {
  Complex prod = 1.0;
  for (const Complex& a : alpha) {
    if (a == Complex(0.0) || !numerics::is_finite(a)) throw DomainError("Satake parameters must be finite and nonzero");
    prod *= a;
  }
  return {alpha, std::abs(prod - 1.0) <= tol};
}

struct Partition4 {
  std::array<int, 4> parts{};

  int size() const { return parts[0] + parts[1] + parts[2] + parts[3]; }
  int length() const {
    int n = 0;
    for (int p : parts) n += p > 0;
    return n;
  }
};

inline Partition4 make_partition(const std::array<int, 4>& parts) {
  for (int j = 0; j < 4; ++j) {
    if (parts[j] < 0) throw DomainError("partition parts must be nonnegative");
    if (j > 0 && parts[j] > parts[j - 1]) throw DomainError("partition parts must be weakly decreasing");
  }
  return {parts};
}

// Coefficients of prod_j (1 - b_j x)^{-1} up to x^order, by successive
// convolution with geometric series. For b = alpha these are the complete
// homogeneous symmetric polynomials h_0..h_order.
inline std::vector<Complex> geometric_product_series(const std::vector<Complex>& b, int order) {
  if (order < 0) throw DomainError("series order must be nonnegative");
  std::vector<Complex> c(order + 1, 0.0);
  c[0] = 1.0;
  for (const Complex& beta : b) {
    // Multiplying by 1/(1 - beta x) is the running recurrence c_k += beta c_{k-1}.
    for (int k = 1; k <= order; ++k) c[k] += beta * c[k - 1];
  }
  return c;
}

inline std::vector<Complex> complete_homogeneous(const Alpha& alpha, int order) {
  return geometric_product_series({alpha.begin(), alpha.end()}, order);
}

namespace detail {

// Determinant by cofactor expansion along the first row; n <= 4.
inline Complex small_det(const std::vector<std::vector<Complex>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1.0;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Complex det = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col] == Complex(0.0)) continue;
    std::vector<std::vector<Complex>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Complex> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    const Complex term = m[0][col] * small_det(minor);
    det += (col % 2 == 0) ? term : -term;
  }
  return det;
}

}  // namespace detail

// s_lambda from precomputed h_0..h_m with m >= lambda_1 + 3:
// det(h_{lambda_i - i + j}).
inline Complex schur_from_h(const Partition4& lam, const std::vector<Complex>& h) {
  const int ell = lam.length();
  if (ell > 0 && static_cast<int>(h.size()) <= lam.parts[0] + ell - 1)
    throw DomainError("schur_from_h: not enough complete homogeneous terms");
  std::vector<std::vector<Complex>> m(ell, std::vector<Complex>(ell, 0.0));
  for (int i = 0; i < ell; ++i) {
    for (int j = 0; j < ell; ++j) {
      const int idx = lam.parts[i] - i + j;
      m[i][j] = idx < 0 ? Complex(0.0) : h[idx];
    }
  }
  return detail::small_det(m);
}

// Schur polynomial s_lambda(alpha) by the Jacobi-Trudi determinant.
inline Complex schur_poly(const Partition4& lam, const Alpha& alpha) {
  return schur_from_h(lam, complete_homogeneous(alpha, lam.parts[0] + 3));
}

inline void check_pole(Complex one_minus, const char* where) {
  if (std::abs(one_minus) <= 1e-14) throw PoleError(std::string(where) + ": factor 1 - beta x vanishes");
}

// prod_j (1 - alpha_j x)^{-1}.
inline Complex local_standard_factor(const Alpha& alpha, Complex x) {
  Complex denom = 1.0;
  for (const Complex& a : alpha) {
    const Complex f = 1.0 - a * x;
    check_pole(f, "local_standard_factor");
    denom *= f;
  }
  return 1.0 / denom;
}

// The six pairwise products alpha_j alpha_k, j < k, in lexicographic order.
inline std::array<Complex, 6> extsq_parameters(const Alpha& alpha) {
  std::array<Complex, 6> out{};
  std::size_t idx = 0;
  for (int j = 0; j < 4; ++j)
    for (int k = j + 1; k < 4; ++k) out[idx++] = alpha[j] * alpha[k];
  return out;
}

// prod_{j<k} (1 - alpha_j alpha_k x)^{-1}.
inline Complex local_extsq_factor(const Alpha& alpha, Complex x) {
  Complex denom = 1.0;
  for (const Complex& b : extsq_parameters(alpha)) {
    const Complex f = 1.0 - b * x;
    check_pole(f, "local_extsq_factor");
    denom *= f;
  }
  return 1.0 / denom;
}

// Radius on which power series in x are compared: x_radius times the radius of
// convergence of the exterior-square factor (and never beyond x_radius).
inline Real comparison_radius(const Alpha& alpha, Real x_radius) {
  if (!(x_radius > 0 && x_radius < 1)) throw DomainError("x_radius must lie in (0, 1)");
  Real bmax = 1.0;
  for (const Complex& b : extsq_parameters(alpha)) bmax = std::max(bmax, std::abs(b));
  return x_radius / bmax;
}

struct SeriesComparison {
  std::vector<Complex> lhs;
  std::vector<Complex> rhs;
  Real radius = 1.0;
  Real residual = 0.0;  // max_k |lhs_k - rhs_k| radius^k
  int worst_k = 0;
};

inline SeriesComparison compare_series(std::vector<Complex> lhs, std::vector<Complex> rhs, Real radius) {
  SeriesComparison c{std::move(lhs), std::move(rhs), radius, 0.0, 0};
  Real rk = 1.0;
  for (std::size_t k = 0; k < c.lhs.size(); ++k, rk *= radius) {
    const Real d = std::abs(c.lhs[k] - c.rhs[k]) * rk;
    if (d > c.residual) {
      c.residual = d;
      c.worst_k = static_cast<int>(k);
    }
  }
  return c;
}

// The local identity sum_k s_{(k,k,0,0)}(alpha) x^k = (1 - x^2) prod_{j<k}
// (1 - alpha_j alpha_k x)^{-1}, compared coefficientwise for k <= K on the
// disc of comparison_radius.
inline SeriesComparison js_verify(const SatakeParams& p, Real x_radius, int K) {
  if (!p.unimodular) throw DomainError("js_verify: Satake parameters must have product 1");
  if (K < 2) throw DomainError("js_verify: K must be at least 2");
  const Real radius = comparison_radius(p.alpha, x_radius);
  const auto h = complete_homogeneous(p.alpha, K + 3);
  std::vector<Complex> lhs(K + 1);
  for (int k = 0; k <= K; ++k) lhs[k] = schur_from_h(Partition4{{k, k, 0, 0}}, h);
  const auto b = extsq_parameters(p.alpha);
  auto prod = geometric_product_series({b.begin(), b.end()}, K);
  std::vector<Complex> rhs(K + 1);
  for (int k = 0; k <= K; ++k) rhs[k] = prod[k] - (k >= 2 ? prod[k - 2] : Complex(0.0));
  return compare_series(std::move(lhs), std::move(rhs), radius);
}

// Littlewood's identity in four variables: prod_{j<k} (1 - alpha_j alpha_k x)^{-1}
// = sum over a >= b >= 0 of s_{(a,a,b,b)}(alpha) x^{a+b}, compared for degrees
// up to K. Needs no unimodularity.
inline SeriesComparison littlewood_verify(const Alpha& alpha, Real x_radius, int K) {
  if (K < 1) throw DomainError("littlewood_verify: K must be positive");
  const Real radius = comparison_radius(alpha, x_radius);
  const auto h = complete_homogeneous(alpha, K + 3);
  std::vector<Complex> lhs(K + 1, 0.0);
  for (int a = 0; a <= K; ++a)
    for (int b = 0; b <= a && a + b <= K; ++b) lhs[a + b] += schur_from_h(Partition4{{a, a, b, b}}, h);
  const auto pairs = extsq_parameters(alpha);
  auto rhs = geometric_product_series({pairs.begin(), pairs.end()}, K);
  return compare_series(std::move(lhs), std::move(rhs), radius);
}

// Deterministic uniform double in [0, 1) from a 64-bit engine.
inline Real uniform01(std::mt19937_64& rng) { return static_cast<Real>(rng() >> 11) * 0x1.0p-53; }

// Unimodular alpha with |alpha_j| in [lo, hi]: log-magnitudes and phases are
// drawn uniformly, alpha_4 = 1 / (alpha_1 alpha_2 alpha_3), and draws whose
// alpha_4 leaves the band are rejected.
inline SatakeParams random_unimodular(std::mt19937_64& rng, Real lo = 1.0 / 3.0, Real hi = 3.0) {
  if (!(lo > 0 && lo <= 1 && hi >= 1)) throw DomainError("random_unimodular: need 0 < lo <= 1 <= hi");
  const Real llo = std::log(lo), lhi = std::log(hi);
  for (;;) {
    Alpha a{};
    Real log_mag = 0.0, phase = 0.0;
    for (int j = 0; j < 3; ++j) {
      const Real lm = llo + (lhi - llo) * uniform01(rng);
      const Real ph = numerics::kTwoPi * uniform01(rng);
      a[j] = std::polar(std::exp(lm), ph);
      log_mag += lm;
      phase += ph;
    }
    if (-log_mag < llo || -log_mag > lhi) continue;
    a[3] = 1.0 / (a[0] * a[1] * a[2]);
    return {a, true};
  }
}

struct BatchReport {
  std::uint64_t seed = 0;
  int trials = 0;
  int K = 0;
  Real x_radius = 0.5;
  Real max_js_residual = 0.0;
  Real max_littlewood_residual = 0.0;
  int worst_trial = -1;
  SatakeParams worst_alpha;
};

// js_verify and littlewood_verify over seeded random unimodular alpha.
inline BatchReport js_verify_batch(std::uint64_t seed, int trials, int K, Real x_radius = 0.5) {
  if (trials < 1) throw DomainError("js_verify_batch: trials must be positive");
  BatchReport r{seed, trials, K, x_radius, 0.0, 0.0, -1, {}};
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const SatakeParams p = random_unimodular(rng);
    const Real js = js_verify(p, x_radius, K).residual;
    const Real lw = littlewood_verify(p.alpha, x_radius, K).residual;
    if (js > r.max_js_residual || r.worst_trial < 0) {
      r.max_js_residual = std::max(r.max_js_residual, js);
      r.worst_trial = t;
      r.worst_alpha = p;
    }
    r.max_littlewood_residual = std::max(r.max_littlewood_residual, lw);
  }
  return r;
}

// Hecke eigenvalue at p^k attached to Satake parameters: s_{(k,k,0,0)}(alpha).
inline std::vector<Complex> prime_power_eigenvalues(const Alpha& alpha, int kmax) {
  const auto h = complete_homogeneous(alpha, kmax + 3);
  std::vector<Complex> out(kmax + 1);
  for (int k = 0; k <= kmax; ++k) out[k] = schur_from_h(Partition4{{k, k, 0, 0}}, h);
  return out;
}

// GL(4) series a_{1,n,1}, n <= count, from Satake parameters at each prime:
// n^{mu1+mu2} a_{1,n,1} is multiplicative with value s_{(k,k,0,0)}(alpha_p) at
// p^k. alpha_at(p) returning nullopt makes the series vanish on multiples of p.
inline CoefficientSeries extsq_coefficients(const std::function<std::optional<Alpha>(long)>& alpha_at,
                                            const GL4& spectral, std::size_t count) {
  if (count < 1) throw DomainError("extsq_coefficients: count must be positive");
  std::vector<Complex> lambda(count + 1, 0.0);
  lambda[1] = 1.0;
  // Multiplicative assembly: for each n, split off its smallest prime power.
  std::vector<long> spf(count + 1, 0);
  for (std::size_t i = 2; i <= count; ++i)
    if (spf[i] == 0)
      for (std::size_t m = i; m <= count; m += i)
        if (spf[m] == 0) spf[m] = static_cast<long>(i);
  std::vector<std::vector<Complex>> local(count + 1);
  for (std::size_t n = 2; n <= count; ++n) {
    const long p = spf[n];
    std::size_t rest = n;
    int k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    if (local[p].empty()) {
      int kmax = 0;
      for (std::size_t q = p; q <= count; q *= p) ++kmax;
      const auto a = alpha_at(p);
      local[p] = a ? prime_power_eigenvalues(*a, kmax) : std::vector<Complex>(kmax + 1, 0.0);
      local[p][0] = 1.0;
    }
    lambda[n] = local[p][k] * lambda[rest];
  }
  CoefficientSeries s;
  s.spectral = spectral;
  s.normalization = Normalization::unitary;
  s.values.resize(count);
  const Complex shift = spectral.mu[0] + spectral.mu[1];
  for (std::size_t n = 1; n <= count; ++n) s.values[n - 1] = lambda[n] * numerics::real_power(Real(n), -shift);
  return s;
}

struct ExtsqSeriesResult {
  Complex value{};
  Real tail_estimate = 0.0;  // heuristic, from the size of the last terms
  bool in_region = true;     // Re(s - mu1 - mu2) > 1
  std::size_t terms = 0;
};

// zeta(2s) sum_{n<=N} a_{1,n,1} n^{mu1+mu2-s}.
inline ExtsqSeriesResult extsq_series(const CoefficientSeries& series, const std::array<Complex, 4>& mu, Complex s,
                                      std::size_t N) {
  if (!std::holds_alternative<GL4>(series.spectral)) throw DomainError("extsq_series: GL(4) series required");
  N = std::min(N, series.count());
  if (N < 1) throw DomainError("extsq_series: no coefficients");
  const Complex shift = mu[0] + mu[1] - s;
  const Real sigma = -shift.real();
  ExtsqSeriesResult r;
  r.in_region = sigma > 1.0;
  r.terms = N;
  Complex sum = 0.0;
  Real last = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    const Complex term = series.scaled(n) * numerics::real_power(Real(n), shift);
    sum += term;
    if (2 * n > N) last = std::max(last, std::abs(term));
  }
  // Terms of size ~ last * (n/N)^{-sigma} beyond N.
  r.tail_estimate = r.in_region ? last * Real(N) / (sigma - 1.0) : std::numeric_limits<Real>::infinity();
  const Complex z2 = numerics::riemann_zeta(2.0 * s);
  r.value = z2 * sum;
  r.tail_estimate *= std::abs(z2);
  return r;
}

// zeta(2s) prod_{p <= P} (1 - p^{-2s}) L_p(s), for a series whose Satake
// parameters are given at the primes up to P and which vanishes elsewhere.
inline Complex extsq_partial_euler_product(const std::function<std::optional<Alpha>(long)>& alpha_at, Complex s,
                                           long P) {
  Complex prod = numerics::riemann_zeta(2.0 * s);
  for (long p = 2; p <= P; ++p) {
    bool prime = true;
    for (long d = 2; d * d <= p; ++d)
      if (p % d == 0) {
        prime = false;
        break;
      }
    if (!prime) continue;
    const auto a = alpha_at(p);
    if (!a) continue;
    const Complex x = numerics::real_power(Real(p), -s);
    prod *= (1.0 - x * x) * local_extsq_factor(*a, x);
  }
  return prod;
}

}  // namespace automorph::extsquare
