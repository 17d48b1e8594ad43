#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "automorph/coefficients/series.hpp"

namespace automorph {

struct HeckeReport {
  Real max_multiplicative = 0;  // max |a_m a_n - a_{mn}|, gcd(m, n) = 1
  Real max_prime_power = 0;     // max |a_p a_{p^k} - a_{p^{k+1}} - w(p) a_{p^{k-1}}|
  Real max_relative = 0;        // both residuals divided by the size of the terms
  std::size_t relations = 0;
  bool exact = false;           // computed in integer arithmetic
  Real weight_exponent = 0;     // w(p) = p^{weight_exponent}
  Complex weight_twist{0, 0};   // and an extra factor p^{weight_twist}

  Real max_residual() const { return std::max(max_multiplicative, max_prime_power); }
};

inline std::vector<std::size_t> primes_up_to(std::size_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::size_t> primes;
  for (std::size_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::size_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

// Exponent of p in the prime-power Hecke relation for this series.
inline Real hecke_weight_exponent(const CoefficientSeries& series) {
  if (const auto* h = std::get_if<Holomorphic>(&series.spectral)) {
    return series.normalization == Normalization::arithmetic ? h->weight - 1 : 0;
  }
  return 0;
}

// Residuals of the Hecke relations over every coprime pair (m, n) and every
// prime power with all indices within the series. Integer series are checked
// exactly.
inline HeckeReport check_hecke_relations(const CoefficientSeries& series) {
  HeckeReport rep;
  const std::size_t N = series.count();
  rep.weight_exponent = hecke_weight_exponent(series);
  if (const auto* m = std::get_if<Maass>(&series.spectral); m && !m->cuspidal) {
    // divisor sums sum_{d|n} d^{-nu}: a_p a_{p^k} - a_{p^{k+1}} = p^{-nu} a_{p^{k-1}}
    rep.weight_twist = -m->lambda;
  }
  const bool integral_weight = rep.weight_exponent == std::floor(rep.weight_exponent) && rep.weight_twist == Complex(0);
  rep.exact = series.is_exact() && integral_weight;
  auto record = [&](Real& slot, Real residual, Real size) {
    slot = std::max(slot, residual);
    rep.max_relative = std::max(rep.max_relative, residual / std::max<Real>(size, 1.0));
    ++rep.relations;
  };

  for (std::size_t m = 2; m <= N; ++m) {
    for (std::size_t n = m + 1; m * n <= N; ++n) {
      if (std::gcd(m, n) != 1) continue;
      if (rep.exact) {
        const int128 lhs = checked_mul(series.exact[m - 1], series.exact[n - 1]);
        const int128 diff = lhs - series.exact[m * n - 1];
        record(rep.max_multiplicative, std::abs(static_cast<Real>(diff)), std::abs(static_cast<Real>(lhs)));
      } else {
        const Complex lhs = series.at(m) * series.at(n);
        record(rep.max_multiplicative, std::abs(lhs - series.at(m * n)), std::max(std::abs(lhs), std::abs(series.at(m * n))));
      }
    }
  }
  for (std::size_t p : primes_up_to(N)) {
    if (p > N / p) break;
    int128 pw_exact = 1;
    if (rep.exact) {
      for (int i = 0; i < static_cast<int>(rep.weight_exponent); ++i) pw_exact = checked_mul(pw_exact, int128(p));
    }
    const Complex pw = numerics::real_power(Real(p), Complex(rep.weight_exponent) + rep.weight_twist);
    std::size_t prev = 1, cur = p;  // p^{k-1}, p^k
    while (cur <= N / p) {
      const std::size_t next = cur * p;
      if (rep.exact) {
        const int128 lhs = checked_mul(series.exact[p - 1], series.exact[cur - 1]);
        const int128 rhs = checked_add(series.exact[next - 1], checked_mul(pw_exact, series.exact[prev - 1]));
        record(rep.max_prime_power, std::abs(static_cast<Real>(lhs - rhs)), std::abs(static_cast<Real>(lhs)));
      } else {
        const Complex lhs = series.at(p) * series.at(cur);
        const Complex rhs = series.at(next) + pw * series.at(prev);
        record(rep.max_prime_power, std::abs(lhs - rhs), std::max(std::abs(lhs), std::abs(rhs)));
      }
      prev = cur;
      cur = next;
    }
  }
  return rep;
}

}  // namespace automorph
