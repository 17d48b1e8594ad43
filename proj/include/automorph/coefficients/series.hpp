#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "automorph/coefficients/int128.hpp"
#include "automorph/coefficients/spectral.hpp"
#include "automorph/numerics/gamma.hpp"
#include "automorph/numerics/zeta.hpp"

namespace automorph {

// arithmetic: Hecke relations carry the weight factor (tau(n) for Delta).
// unitary: Ramanujan scale, a_p a_p = a_{p^2} + a_1.
enum class Normalization { arithmetic, unitary };

inline const char* to_string(Normalization n) { return n == Normalization::arithmetic ? "arithmetic" : "unitary"; }

struct CoefficientSeries {
  SpectralData spectral = Holomorphic{};
  Normalization normalization = Normalization::arithmetic;
  bool hecke_normalized = true;  // a_1 = 1 and Hecke-multiplicative
  std::vector<Complex> values;   // values[n - 1] = a_n
  std::vector<int128> exact;     // same indexing, empty unless integer-valued
  Complex scale{1.0, 0.0};       // common factor kept apart from values
  std::optional<Complex> constant_term;
  bool constant_term_pole = false;
  std::optional<Real> hecke_residual;  // set when a Hecke check was run on load
  std::vector<std::string> warnings;

  std::size_t count() const { return values.size(); }
  bool is_exact() const { return !exact.empty(); }

  // a_n for 1 <= n <= count(), without the common scale.
  Complex at(std::size_t n) const {
    if (n == 0 || n > values.size()) throw DomainError("coefficient index out of range");
    return values[n - 1];
  }
  Complex scaled(std::size_t n) const { return scale * at(n); }
};

// A series of the given kind with every coefficient zero.
inline CoefficientSeries zero_series(SpectralData spectral, std::size_t count) {
  CoefficientSeries s;
  s.spectral = spectral;
  s.hecke_normalized = false;
  s.values.assign(count, 0.0);
  return s;
}

namespace detail {

// Coefficients of prod_{m>=1} (1 - q^m) up to q^n as (exponent, sign) pairs,
// from Euler's pentagonal number theorem.
inline std::vector<std::pair<std::size_t, int>> pentagonal_terms(std::size_t n) {
  std::vector<std::pair<std::size_t, int>> terms{{0, 1}};
  for (std::size_t k = 1;; ++k) {
    const std::size_t a = k * (3 * k - 1) / 2, b = k * (3 * k + 1) / 2;
    if (a > n) break;
    const int sign = (k % 2) ? -1 : 1;
    terms.emplace_back(a, sign);
    if (b <= n) terms.emplace_back(b, sign);
  }
  return terms;
}

}  // namespace detail

// Ramanujan tau(1..N), exact. The power series g = P^24 of the sparse
// pentagonal series P is built with the power recurrence
//   n g_n = sum_{k>=1} (25k - n) P_k g_{n-k},
// which costs O(N^{3/2}). Throws DomainError if 128 bits do not suffice.
inline CoefficientSeries delta_coefficients(std::size_t count) {
  if (count < 1) throw DomainError("delta_coefficients: count must be positive");
  const auto pent = detail::pentagonal_terms(count);
  std::vector<int128> g(count, 0);  // g[n] = coefficient of q^n in P^24
  g[0] = 1;
  for (std::size_t n = 1; n < count; ++n) {
    int128 acc = 0;
    for (std::size_t idx = 1; idx < pent.size() && pent[idx].first <= n; ++idx) {
      const auto [k, sign] = pent[idx];
      const int128 factor = int128(25) * int128(k) - int128(n);
      acc = checked_add(acc, checked_mul(checked_mul(factor, sign), g[n - k]));
    }
    if (acc % int128(n) != 0) throw DomainError("delta_coefficients: inexact recurrence step");
    g[n] = acc / int128(n);
  }
  CoefficientSeries s;
  s.spectral = Holomorphic{12, true};
  s.normalization = Normalization::arithmetic;
  s.exact = std::move(g);  // tau(n) = g_{n-1}
  s.values.reserve(count);
  for (int128 v : s.exact) s.values.emplace_back(static_cast<Real>(v), 0.0);
  s.constant_term = Complex(0.0);
  return s;
}

// sigma_e(1..N) exactly, by sieving divisors. Throws on overflow.
inline std::vector<int128> divisor_sigma_exact(int e, std::size_t count) {
  if (e < 0) throw DomainError("divisor_sigma_exact: negative exponent");
  std::vector<int128> sigma(count, 0);
  for (std::size_t d = 1; d <= count; ++d) {
    int128 p = 1;
    for (int i = 0; i < e; ++i) p = checked_mul(p, int128(d));
    for (std::size_t m = d; m <= count; m += d) sigma[m - 1] = checked_add(sigma[m - 1], p);
  }
  return sigma;
}

// Constant c_k in E_k = 1 + c_k sum sigma_{k-1}(n) q^n, i.e. -2k / B_k.
inline Real eisenstein_constant(int k) {
  // B_k = (-1)^{k/2 + 1} 2 k! zeta(k) / (2 pi)^k
  const Real log_abs_bk = std::log(2.0) + std::lgamma(k + 1.0) + std::log(numerics::riemann_zeta(Real(k)).real()) -
                          k * std::log(numerics::kTwoPi);
  const Real sign_bk = ((k / 2) % 2 == 1) ? 1.0 : -1.0;
  return -2.0 * k * sign_bk * std::exp(-log_abs_bk);
}

// q-expansion data of the weight k Eisenstein series: values are the divisor
// sums sigma_{k-1}(n), scale is c_k, and the constant term is 1.
inline CoefficientSeries eisenstein_qcoeffs(int k, std::size_t count) {
  if (k < 4 || k % 2 != 0) throw DomainError("eisenstein_qcoeffs: weight must be even and at least 4");
  CoefficientSeries s;
  s.spectral = Holomorphic{k, false};
  s.normalization = Normalization::arithmetic;
  s.scale = eisenstein_constant(k);
  s.constant_term = Complex(1.0);
  try {
    s.exact = divisor_sigma_exact(k - 1, count);
    for (int128 v : s.exact) s.values.emplace_back(static_cast<Real>(v), 0.0);
  } catch (const DomainError&) {
    s.exact.clear();
    s.values.assign(count, 0.0);
    for (std::size_t d = 1; d <= count; ++d) {
      const Real p = std::pow(Real(d), k - 1);
      for (std::size_t m = d; m <= count; m += d) s.values[m - 1] += p;
    }
  }
  return s;
}

// a_n = sum_{d | n} d^{-nu}. The constant term zeta(nu) is reported
// separately; at nu = 1 it is a pole and only flagged.
inline CoefficientSeries divisor_power_coeffs(Complex nu, std::size_t count) {
  if (count < 1) throw DomainError("divisor_power_coeffs: count must be positive");
  CoefficientSeries s;
  s.spectral = Maass{nu, 0, false};
  s.normalization = Normalization::unitary;
  // Accumulated in extended precision and rounded once.
  std::vector<std::complex<long double>> acc(count, 0.0L);
  for (std::size_t d = 1; d <= count; ++d) {
    const auto p = numerics::real_power_extended(Real(d), -nu);
    for (std::size_t m = d; m <= count; m += d) acc[m - 1] += p;
  }
  s.values.resize(count);
  for (std::size_t m = 0; m < count; ++m) s.values[m] = {static_cast<Real>(acc[m].real()), static_cast<Real>(acc[m].imag())};
  if (std::abs(nu - 1.0) == 0.0) {
    s.constant_term_pole = true;
    s.warnings.emplace_back("constant term zeta(nu) has a pole at nu = 1");
  } else {
    s.constant_term = numerics::riemann_zeta(nu);
  }
  return s;
}

// Sign relating a_{e1 n1, e2 n2, e3 n3} to a_{n1, n2, n3} for a GL(4) form of
// parity type eta: e1^{eta1} e2^{eta1+eta2} e3^{eta1+eta2+eta3}.
inline int gl4_duality_signs(const std::array<int, 4>& eta, const std::array<int, 3>& epsilon) {
  int parity = 0;
  for (int e : eta) parity += e;
  if (parity % 2 != 0) throw DomainError("gl4_duality_signs: sum(eta) must vanish mod 2");
  int sign = 1, exponent = 0;
  for (int j = 0; j < 3; ++j) {
    if (epsilon[j] != 1 && epsilon[j] != -1) throw DomainError("gl4_duality_signs: epsilon entries must be +-1");
    exponent += eta[j];
    if (epsilon[j] == -1 && exponent % 2 == 1) sign = -sign;
  }
  return sign;
}

// a_{-n} from the stored a_n using the parity of a GL(2) series.
inline Complex apply_parity(const CoefficientSeries& series, long n) {
  if (n == 0) throw DomainError("apply_parity: the zeroth coefficient of a cusp form is not stored");
  int parity = 0;
  if (const auto* m = std::get_if<Maass>(&series.spectral)) {
    parity = m->parity;
  } else if (std::holds_alternative<GL4>(series.spectral)) {
    throw DomainError("apply_parity: GL(4) series need a triple index");
  }
  const Complex a = series.at(static_cast<std::size_t>(std::labs(n)));
  return (n < 0 && parity == 1) ? -a : a;
}

// a_{n1, n2, n3} for a GL(4) series storing a_{1, n, 1}; |n1| = |n3| = 1.
inline Complex apply_parity(const CoefficientSeries& series, const std::array<long, 3>& index) {
  const auto* g = std::get_if<GL4>(&series.spectral);
  if (!g) throw DomainError("apply_parity: triple index requires a GL(4) series");
  if (index[0] == 0 || index[1] == 0 || index[2] == 0) throw DomainError("apply_parity: zero index");
  if (std::labs(index[0]) != 1 || std::labs(index[2]) != 1) {
    throw DomainError("apply_parity: only a_{1,n,1} coefficients are stored");
  }
  const std::array<int, 3> eps{index[0] < 0 ? -1 : 1, index[1] < 0 ? -1 : 1, index[2] < 0 ? -1 : 1};
  const int sign = gl4_duality_signs(g->eta, eps);
  const Complex a = series.at(static_cast<std::size_t>(std::labs(index[1])));
  return sign < 0 ? -a : a;
}

}  // namespace automorph
