#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "automorph/coefficients/series.hpp"
#include "automorph/eisenstein.hpp"
#include "automorph/format.hpp"
#include "automorph/gamma_factors.hpp"
#include "automorph/numerics.hpp"
#include "automorph/report.hpp"

namespace automorph::lseries {

using numerics::Complex;
using numerics::kPi;
using numerics::kTwoPi;
using numerics::Real;

// A standard L-function (one series) or a Rankin-Selberg pair.
struct LSeriesInput {
  CoefficientSeries series;
  std::optional<CoefficientSeries> partner;

  bool is_rankin_selberg() const { return partner.has_value(); }
};

inline LSeriesInput standard(CoefficientSeries f) { return {std::move(f), std::nullopt}; }

inline LSeriesInput rankin_selberg(CoefficientSeries f, CoefficientSeries g) {
  if (!std::holds_alternative<Holomorphic>(f.spectral) || !std::holds_alternative<Holomorphic>(g.spectral))
    throw DomainError("rankin_selberg: holomorphic pairs only");
  if (std::get<Holomorphic>(f.spectral).weight != std::get<Holomorphic>(g.spectral).weight)
    throw DomainError("rankin_selberg: weights differ");
  const bool f_cusp = std::get<Holomorphic>(f.spectral).cuspidal, g_cusp = std::get<Holomorphic>(g.spectral).cuspidal;
  if (!f_cusp && !g_cusp) throw DomainError("rankin_selberg: at least one member must be cuspidal");
  if (!f_cusp) std::swap(f, g);  // the cuspidal member comes first
  return {std::move(f), std::move(g)};
}

// Coefficient in the normalization where the functional equation is s <-> 1-s:
// a_n n^{-(k-1)/2} for q-expansion coefficients of weight k, unchanged otherwise.
inline Complex unitary_coefficient(const CoefficientSeries& f, std::size_t n) {
  if (const auto* h = std::get_if<Holomorphic>(&f.spectral); h && f.normalization == Normalization::arithmetic)
    return f.scaled(n) * std::pow(Real(n), -0.5 * (h->weight - 1));
  return f.scaled(n);
}

// |c_n| <= C d_{p+1}(n) n^g, where d_j counts ordered factorizations into j factors.
struct CoefficientBound {
  Real C = 1.0;
  int p = 1;
  Real g = 0.0;
  bool rigorous = true;
};

namespace detail {

inline Real observed_ratio(const CoefficientSeries& f, Real g) {
  // max |c_n| / (d(n) n^g) over the stored terms
  const std::size_t N = f.count();
  std::vector<int> d(N + 1, 0);
  for (std::size_t a = 1; a <= N; ++a)
    for (std::size_t m = a; m <= N; m += a) ++d[m];
  Real best = 0.0;
  for (std::size_t n = 1; n <= N; ++n)
    best = std::max(best, std::abs(unitary_coefficient(f, n)) / (d[n] * std::pow(Real(n), g)));
  return best;
}

}  // namespace detail

// Bound model for the unitary coefficients of one series. Deligne's bound for
// Hecke-normalized holomorphic cusp forms and the divisor-sum bounds are
// rigorous; Maass cusp forms use the Ramanujan bound, which is flagged.
inline CoefficientBound coefficient_bound(const CoefficientSeries& f) {
  if (const auto* h = std::get_if<Holomorphic>(&f.spectral)) {
    if (!h->cuspidal) {
      // sigma_{k-1}(n) n^{-(k-1)/2} <= zeta(k-1) n^{(k-1)/2}
      const Real zk = numerics::riemann_zeta(Real(h->weight - 1)).real();
      return {std::abs(f.scale) * zk, 0, 0.5 * (h->weight - 1), true};
    }
    if (f.hecke_normalized && f.count() > 0) return {std::abs(unitary_coefficient(f, 1)), 1, 0.0, true};
    return {detail::observed_ratio(f, 0.0), 1, 0.0, false};
  }
  if (const auto* m = std::get_if<Maass>(&f.spectral)) {
    // sum_{d | n} d^{-nu} <= d(n) max(1, n^{-Re nu})
    if (!m->cuspidal && f.hecke_normalized) return {std::abs(f.scale), 1, std::max(0.0, -m->lambda.real()), true};
    if (!m->cuspidal) {
      const Real g = 0.5 * std::abs(m->lambda.real());
      return {detail::observed_ratio(f, g), 1, g, false};
    }
    return {std::max(detail::observed_ratio(f, 0.0), f.count() ? std::abs(f.scaled(1)) : 0.0), 1, 0.0, false};
  }
  throw DomainError("coefficient_bound: GL(4) series have no standard L-function here");
}

// sum_{n>N} d_{p+1}(n) n^{-sigma} <= sigma int_N^inf (1 + log t)^p t^{-sigma} dt,
// from partial summation and sum_{n<=x} d_{p+1}(n) <= x (1 + log x)^p.
inline Real divisor_tail_bound(std::size_t N, Real sigma, int p) {
  if (!(sigma > 1.0)) return std::numeric_limits<Real>::infinity();
  const Real beta = sigma - 1.0, L = std::log(Real(std::max<std::size_t>(N, 1)));
  // int_L^inf (1 + u)^p e^{-beta u} du = e^{-beta L} sum_j p!/(p-j)! (1+L)^{p-j} / beta^{j+1}
  Real sum = 0.0, falling = 1.0;
  for (int j = 0; j <= p; ++j) {
    sum += falling * std::pow(1.0 + L, p - j) / std::pow(beta, j + 1);
    falling *= (p - j);
  }
  return sigma * std::exp(-beta * L) * sum;
}

enum class TailModel { bound_only, mean_value };

// Partial Dirichlet sum with a tail bound. Standard: sum c_n n^{-s} with unitary
// c_n. Rankin-Selberg: zeta(2s) sum c_n conj(d_n) n^{-s}. The half-plane of
// absolute convergence is Re s > 1 + g for the coefficient bound above.
// TailModel::mean_value adds the tail of a coefficient sequence with constant
// mean (the mean of the upper half of the terms), flagged as heuristic.
inline EvalReport dirichlet_eval(const LSeriesInput& input, Complex s, std::size_t N,
                                 TailModel tail = TailModel::bound_only) {
  const CoefficientSeries& f = input.series;
  N = std::min(N, f.count());
  if (input.partner) N = std::min(N, input.partner->count());
  if (N < 1) throw DomainError("dirichlet_eval: no coefficients");
  CoefficientBound bound = coefficient_bound(f);
  if (input.partner) {
    const auto b2 = coefficient_bound(*input.partner);
    // d(n)^2 <= d_4(n)
    bound = {bound.C * b2.C, bound.p + b2.p + (bound.p == 1 && b2.p == 1 ? 1 : 0), bound.g + b2.g,
             bound.rigorous && b2.rigorous};
  }
  const Real sigma = s.real() - bound.g;
  if (!(sigma > 1.0))
    throw DomainError("dirichlet_eval: Re s = " + std::to_string(s.real()) +
                      " is outside the half-plane of absolute convergence Re s > " + std::to_string(1.0 + bound.g));

  EvalReport rep;
  Complex sum = 0.0, upper_mean = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    Complex c = unitary_coefficient(f, n);
    if (input.partner) c *= std::conj(unitary_coefficient(*input.partner, n));
    sum += c * numerics::real_power(Real(n), -s);
    if (2 * n > N) upper_mean += c;
  }
  upper_mean /= Real(N - N / 2);
  Real err = bound.C * divisor_tail_bound(N, sigma, bound.p);
  if (!bound.rigorous) rep.flags.emplace_back("heuristic coefficient bound");
  if (tail == TailModel::mean_value) {
    // sum_{n>N} m n^{-s} ~ m N^{1-s} / (s - 1)
    const Complex correction = upper_mean * std::exp((1.0 - s) * std::log(Real(N) + 0.5)) / (s - 1.0);
    sum += correction;
    err = std::min(err, std::abs(correction));
    rep.flags.emplace_back("mean-value tail correction (heuristic)");
  }
  Complex prefactor = 1.0;
  if (input.partner) prefactor = numerics::riemann_zeta(2.0 * s);
  rep.value = prefactor * sum;
  rep.error = std::abs(prefactor) * err + 16.0 * numerics::kEps * std::abs(rep.value);
  rep.terms = N;
  rep.method = input.partner ? "Rankin-Selberg Dirichlet series" : "Dirichlet series";
  return rep;
}

// (2 pi)^{-w} Gamma(w) as 1/2 Gamma_C(w).
inline GammaFactorExpr hecke_gamma_expr() {
  GammaFactorExpr e;
  e.atoms.push_back(constant_atom(0.5));
  e.atoms.push_back(gamma_c_atom(0.0));
  return e;
}

// Completed Hecke L-function Lambda(w) = int_0^inf F(iy) y^{w-1} dy
// = (2 pi)^{-w} Gamma(w) L(w - (k-1)/2, F), split at y = A:
//   sum a_n (2 pi n)^{-w} Gamma(w, 2 pi n A) + (-i)^k sum a_n (2 pi n)^{w-k} Gamma(k-w, 2 pi n / A).
// Entire in w. Terms stop once both incomplete gammas are past their peak and
// below tol times the running sum.
inline EvalReport completed_hecke_l(const CoefficientSeries& F, Complex w, Real split = 1.0, Real tol = 1e-16) {
  const auto* h = std::get_if<Holomorphic>(&F.spectral);
  if (!h) throw DomainError("completed_hecke_l: holomorphic form required");
  if (!h->cuspidal || (F.constant_term && *F.constant_term != Complex(0.0)))
    throw DomainError("completed_hecke_l: cusp form required");
  if (!(split > 0)) throw DomainError("completed_hecke_l: split point must be positive");
  const int k = h->weight;
  const Complex phase = (k % 4 == 0) ? Complex(1.0) : (k % 4 == 2) ? Complex(-1.0) : Complex(0.0);  // (-i)^k
  const Real rate = kTwoPi * std::min(split, 1.0 / split);
  const Real past_peak = std::abs(w) + k + 2.0;
  EvalReport rep;
  Complex sum = 0.0;
  Real last = 0.0;
  const Real hk = 0.5 * (k - 1);
  bool converged = false;
  for (std::size_t n = 1; n <= F.count(); ++n) {
    const Complex a = F.normalization == Normalization::arithmetic ? F.scaled(n)
                                                                   : F.scaled(n) * std::pow(Real(n), hk);
    const Real x = kTwoPi * Real(n);
    const auto g1 = numerics::upper_incomplete_gamma(w, x * split);
    const auto g2 = numerics::upper_incomplete_gamma(Real(k) - w, x / split);
    const Complex t = a * (numerics::real_power(x, -w) * g1.value + phase * numerics::real_power(x, w - Real(k)) * g2.value);
    sum += t;
    rep.terms = n;
    // Size of the next terms: Deligne |a_n| <= d(n) n^{(k-1)/2}, incomplete
    // gammas decay like e^{-rate n}.
    last = std::abs(t);
    if (n * rate > past_peak && (last <= tol * std::abs(sum) || (g1.underflow && g2.underflow))) {
      converged = true;
      break;
    }
  }
  if (!converged && F.count() > 0 && std::abs(sum) > 0)
    rep.flags.emplace_back("coefficient data exhausted before the incomplete-gamma sums converged");
  const Real q = std::exp(-rate);
  rep.value = sum;
  rep.error = last * 2.0 * q / (1.0 - q) + 64.0 * numerics::kEps * std::abs(sum);
  rep.method = "incomplete gamma split at y = " + format_double(split);
  return rep;
}

// Constant term A y^{1/2 + lambda/2} + B y^{1/2 - lambda/2} of a non-cuspidal
// Maass form (an Eisenstein series).
struct MaassConstantTerm {
  Complex A{0.0, 0.0};
  Complex B{0.0, 0.0};
};

// The completed Eisenstein series E_t as a Maass form: E_t(z) = constant term
// + sum_{n != 0} rho(|n|) sqrt(y) K_{t-1/2}(2 pi |n| y) e(n x) with
// rho(n) = 2 n^{t-1/2} sigma_{1-2t}(n), lambda = 2t - 1.
inline std::pair<CoefficientSeries, MaassConstantTerm> eisenstein_as_maass(Complex t, std::size_t count) {
  CoefficientSeries s;
  s.spectral = Maass{2.0 * t - 1.0, 0, false};
  s.normalization = Normalization::unitary;
  s.hecke_normalized = false;
  s.values = eisenstein::fourier_weights(t, count);
  return {s, {numerics::completed_zeta(2.0 * t), numerics::completed_zeta(2.0 * t - 1.0)}};
}

// Gamma factor relating the completed Maass L-function to L(s) = sum rho(n) n^{-s}:
// 1/4 Gamma_R(s + eta + lambda/2) Gamma_R(s + eta - lambda/2).
inline GammaFactorExpr maass_gamma_expr(const Maass& m) {
  GammaFactorExpr e;
  e.atoms.push_back(constant_atom(0.25));
  e.atoms.push_back(gamma_r_atom(Real(m.parity) + m.lambda / 2.0));
  e.atoms.push_back(gamma_r_atom(Real(m.parity) - m.lambda / 2.0));
  return e;
}

namespace detail {

// int_1^inf K_nu(A y) y^{p-1} dy by Gauss-Kronrod up to the height where the
// Bessel factor is negligible; returns value and error.
inline numerics::QuadratureResult bessel_tail_integral(Complex nu, Real A, Complex p, Real tol) {
  const Real turning = std::abs(nu) / A;
  const Real y_max = std::max(1.0, turning) + (60.0 + std::max(0.0, p.real()) * 4.0) / A;
  auto f = [&](Real y) { return numerics::bessel_k(nu, A * y).value * numerics::real_power(y, p - 1.0); };
  // The tolerance is relative to the size of the integrand, which can be tiny.
  Real scale = 0.0;
  for (int j = 0; j <= 32; ++j) scale = std::max(scale, std::abs(f(1.0 + (y_max - 1.0) * j / 32.0)));
  if (scale == 0.0) return {};
  auto g = [&](Real y) { return f(y) / scale; };
  auto r = numerics::gauss_kronrod_adaptive(g, 1.0, y_max, tol);
  r.value *= scale;
  r.abs_error_estimate *= scale;
  r.evaluations += 33;
  return r;
}

}  // namespace detail

// Completed Maass L-function Lambda(s) = maass_gamma_expr(s) * L(s), from the
// split of the Mellin transform of the restriction to the imaginary axis at y = 1.
// Even forms: sum rho(n) [J(s, 2 pi n) + J(1-s, 2 pi n)], J(w, A) = int_1^inf
// K_{lambda/2}(A y) y^{w-1} dy. Odd forms use the x-derivative at x = 0:
// sum n rho(n) [J(s+1, 2 pi n) - J(2-s, 2 pi n)]. A
// non-cuspidal even form adds the rational continuation of the constant term.
inline EvalReport completed_maass_l(const CoefficientSeries& series, Complex s, Real tol = 1e-13,
                                    const std::optional<MaassConstantTerm>& constant = std::nullopt) {
  const auto* m = std::get_if<Maass>(&series.spectral);
  if (!m) throw DomainError("completed_maass_l: Maass series required");
  if (!m->cuspidal && !constant) throw DomainError("completed_maass_l: non-cuspidal form needs its constant term");
  if (!m->cuspidal && m->parity == 1) throw DomainError("completed_maass_l: odd non-cuspidal forms are not supported");
  if (std::abs(m->lambda.real()) >= 1.0) throw DomainError("completed_maass_l: |Re lambda| must be below 1");
  const Complex nu = m->lambda / 2.0;
  const bool odd = m->parity == 1;
  EvalReport rep;
  Complex sum = 0.0;
  Real rho_max = 0.0, last_k = 0.0;
  bool converged = false;
  for (std::size_t n = 1; n <= series.count(); ++n) {
    const Complex rho = series.scaled(n);
    rho_max = std::max(rho_max, std::abs(rho));
    const Real A = kTwoPi * Real(n);
    const auto kA = numerics::bessel_k(nu, A);
    last_k = std::abs(kA.value);
    if (rho != Complex(0.0)) {
      const Complex p1 = odd ? s + 1.0 : s, p2 = odd ? 2.0 - s : 1.0 - s;
      const auto j1 = detail::bessel_tail_integral(nu, A, p1, std::max(tol * 1e-2, 8.0 * numerics::kEps));
      const auto j2 = detail::bessel_tail_integral(nu, A, p2, std::max(tol * 1e-2, 8.0 * numerics::kEps));
      sum += odd ? Real(n) * rho * (j1.value - j2.value) : rho * (j1.value + j2.value);
    }
    rep.terms = n;
    // Remaining terms: |rho| <= d(n) rho_max, J <= |K(A)| / (A - |Re p| - 1) past the turning point.
    if (A > std::abs(nu) + 10.0) {
      const Real next = rho_max * 2.0 * std::sqrt(Real(n + 1)) * last_k * std::exp(-kTwoPi) / (A - std::abs(s) - 2.0);
      if (next <= tol * std::max(std::abs(sum), 1e-300) || kA.underflow) {
        converged = true;
        break;
      }
    }
  }
  if (!converged) rep.flags.emplace_back("truncation insufficient: coefficient data exhausted before tol was met");
  if (constant) {
    // 1/2 int_1^inf (c(y) - c(1/y)) y^{1/2-s} dy/y, continued rationally.
    const Complex a = 0.5 + nu, b = 0.5 - nu, u = s - 0.5;
    auto piece = [&](Complex e) { return 1.0 / (u - e) - 1.0 / (u + e); };
    sum += 0.5 * (constant->A * piece(a) + constant->B * piece(b));
  }
  rep.value = sum;
  rep.error = tol * std::abs(sum) + (converged ? 0.0 : std::abs(sum));
  rep.method = "Bessel tail integrals split at y = 1";
  return rep;
}

// Lambda(s) for the same series by the Dirichlet route: gamma factor times L(s).
inline EvalReport maass_dirichlet_completed(const CoefficientSeries& series, Complex s, std::size_t N) {
  const auto* m = std::get_if<Maass>(&series.spectral);
  if (!m) throw DomainError("maass_dirichlet_completed: Maass series required");
  EvalReport rep = dirichlet_eval(standard(series), s, N);
  const Complex g = maass_gamma_expr(*m).evaluate(s);
  rep.value *= g;
  rep.error *= std::abs(g);
  rep.method = "gamma factor times Dirichlet series";
  return rep;
}

// Gamma prefactor of I(s) = prefactor(s) L(s, F x conj G):
// 2^{1-k} (2 pi)^{1-k-2s} Gamma(s) Gamma(s+k-1) = 2^{-1-k} Gamma_C(s) Gamma_C(s+k-1).
inline GammaFactorExpr rankin_selberg_prefactor(int k) {
  GammaFactorExpr e;
  e.atoms.push_back(constant_atom(std::ldexp(1.0, -1 - k)));
  e.atoms.push_back(gamma_c_atom(0.0));
  e.atoms.push_back(gamma_c_atom(Real(k - 1)));
  return e;
}

// L(s, F x conj G) for every s off {0, 1}, from the fundamental-domain
// integral divided by its gamma prefactor.
inline EvalReport rankin_selberg_l(const LSeriesInput& pair, Complex s, Real tol = 1e-10) {
  if (!pair.partner) throw DomainError("rankin_selberg_l: a pair is required");
  const int k = std::get<Holomorphic>(pair.series.spectral).weight;
  if (std::abs(s - 1.0) < 1e-8) throw PoleError("rankin_selberg_l: pole at s = 1");
  EvalReport rep;
  if (std::abs(s - 1.0) < 1e-2) rep.flags.emplace_back("near the pole at s = 1");
  Complex prefactor;
  try {
    prefactor = rankin_selberg_prefactor(k).evaluate(s);
  } catch (const PoleError& e) {
    throw DomainError(std::string("rankin_selberg_l: gamma prefactor singular: ") + e.what());
  }
  if (prefactor == Complex(0.0)) throw DomainError("rankin_selberg_l: gamma prefactor vanishes");
  const auto I = eisenstein::rankin_selberg_integral(pair.series, *pair.partner, s, tol);
  rep.value = I.value / prefactor;
  rep.error = I.error / std::abs(prefactor);
  rep.terms = I.evaluations;
  rep.method = "fundamental-domain integral over gamma prefactor";
  return rep;
}

enum class FEKind { hecke, maass, rankin_selberg, prop1, completed };

inline const char* to_string(FEKind k) {
  switch (k) {
    case FEKind::hecke: return "hecke";
    case FEKind::maass: return "maass";
    case FEKind::rankin_selberg: return "rankin_selberg";
    case FEKind::prop1: return "prop1";
    case FEKind::completed: return "completed";
  }
  return "?";
}

struct FEReport {
  FEKind kind = FEKind::hecke;
  Complex s{};
  Complex lhs{}, rhs{};
  Real abs_residual = 0.0, rel_residual = 0.0;
  Real error = 0.0;  // propagated evaluation error of both sides
  GammaFactorExpr gamma_expr_used;
};

inline FEReport make_fe_report(FEKind kind, Complex s, Complex lhs, Complex rhs, Real error, GammaFactorExpr expr) {
  FEReport r{kind, s, lhs, rhs, 0.0, 0.0, error, std::move(expr)};
  r.abs_residual = std::abs(lhs - rhs);
  r.rel_residual = r.abs_residual / std::max({std::abs(lhs), std::abs(rhs), Real(1e-300)});
  return r;
}

struct FEInputs {
  std::optional<CoefficientSeries> f;
  std::optional<CoefficientSeries> g;            // Rankin-Selberg partner
  std::optional<MaassConstantTerm> constant;     // non-cuspidal Maass input
  Real lhs_split = 1.0, rhs_split = 1.0;         // Hecke split points
  Real tol = 1e-10;
};

// Both sides of a functional equation at s:
//   hecke:           Lambda(w)            vs (-i)^k Lambda(k - w)
//   maass:           Lambda(s)            vs (-1)^eta Lambda(1 - s)
//   rankin_selberg:  I(s)                 vs I(1 - s)
//   prop1:           L(1 - s, F x conj G) vs Phi(s) L(s, F x conj G)
//   completed:       L_inf(s) L(s)        vs L_inf(1 - s) L(1 - s)
inline FEReport fe_residual(FEKind kind, const FEInputs& in, Complex s) {
  if (!in.f) throw DomainError("fe_residual: a series is required");
  switch (kind) {
    case FEKind::hecke: {
      const int k = std::get<Holomorphic>(in.f->spectral).weight;
      const auto a = completed_hecke_l(*in.f, s, in.lhs_split);
      const auto b = completed_hecke_l(*in.f, Real(k) - s, in.rhs_split);
      const Complex phase = (k % 4 == 0) ? Complex(1.0) : Complex(-1.0);
      return make_fe_report(kind, s, a.value, phase * b.value, a.error + b.error, hecke_gamma_expr());
    }
    case FEKind::maass: {
      const auto& m = std::get<Maass>(in.f->spectral);
      const auto a = completed_maass_l(*in.f, s, in.tol, in.constant);
      const auto b = completed_maass_l(*in.f, 1.0 - s, in.tol, in.constant);
      const Real sign = m.parity ? -1.0 : 1.0;
      return make_fe_report(kind, s, a.value, sign * b.value, a.error + b.error, maass_gamma_expr(m));
    }
    default: break;
  }
  if (!in.g) throw DomainError("fe_residual: a Rankin-Selberg partner is required");
  const LSeriesInput pair = rankin_selberg(*in.f, *in.g);
  const int k = std::get<Holomorphic>(pair.series.spectral).weight;
  switch (kind) {
    case FEKind::rankin_selberg: {
      const auto a = eisenstein::rankin_selberg_integral(pair.series, *pair.partner, s, in.tol);
      const auto b = eisenstein::rankin_selberg_integral(pair.series, *pair.partner, 1.0 - s, in.tol);
      return make_fe_report(kind, s, a.value, b.value, a.error + b.error, rankin_selberg_prefactor(k));
    }
    case FEKind::prop1: {
      const auto expr = prop1_expr(pair.series.spectral, pair.partner->spectral);
      const auto a = rankin_selberg_l(pair, 1.0 - s, in.tol);
      const auto b = rankin_selberg_l(pair, s, in.tol);
      const Complex phi = expr.evaluate(s);
      return make_fe_report(kind, s, a.value, phi * b.value, a.error + std::abs(phi) * b.error, expr);
    }
    case FEKind::completed: {
      const auto expr = linfty_product(pair.series.spectral, pair.partner->spectral);
      const auto a = rankin_selberg_l(pair, s, in.tol);
      const auto b = rankin_selberg_l(pair, 1.0 - s, in.tol);
      const Complex ga = expr.evaluate(s), gb = expr.evaluate(1.0 - s);
      return make_fe_report(kind, s, ga * a.value, gb * b.value, std::abs(ga) * a.error + std::abs(gb) * b.error, expr);
    }
    default: break;
  }
  throw DomainError("fe_residual: unknown kind");
}

}  // namespace automorph::lseries
