#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "automorph/format.hpp"
#include "automorph/gamma_factors.hpp"
#include "automorph/numerics.hpp"

namespace automorph {

using numerics::QuadratureResult;

struct IdentityReport {
  std::string identity_id;
  std::vector<std::pair<std::string, Complex>> parameters;
  Complex lhs{0, 0};
  Complex rhs{0, 0};
  Real abs_residual = 0;
  QuadratureResult quadrature{};

  Real rel_residual() const { return abs_residual / std::max({std::abs(lhs), std::abs(rhs), Real(1e-300)}); }
};

inline IdentityReport make_report(std::string id, std::vector<std::pair<std::string, Complex>> params, Complex lhs, Complex rhs,
                                  QuadratureResult q) {
  return {std::move(id), std::move(params), lhs, rhs, std::abs(lhs - rhs), q};
}

inline constexpr Real kOracleTol = 1e-12;

namespace detail {

inline void require_strip(Complex s, const char* where) {
  if (!(s.real() > 0 && s.real() < 1)) throw DomainError(std::string(where) + ": needs 0 < Re s < 1");
}

inline QuadratureResult add(QuadratureResult a, const QuadratureResult& b, Complex b_factor = 1.0) {
  a.value += b_factor * b.value;
  a.abs_error_estimate += std::abs(b_factor) * b.abs_error_estimate;
  a.evaluations += b.evaluations;
  return a;
}

// int_0^infinity f(y) dy for f decaying at least like e^{-rate y}, as
// tanh-sinh on (0, 1] plus Gauss-Kronrod on [1, Y]. `bound(Y)` must dominate
// the tail beyond Y; Y is pushed out until it is negligible.
template <class F, class B>
QuadratureResult bessel_mellin_quadrature(F&& f, B&& bound, Real tol) {
  // Imaginary orders make the integrand exponentially small; tolerances are
  // taken relative to its sampled size.
  Real scale = 0.0;
  for (Real y = 1.0 / 64; y <= 16.0; y *= 2.0) scale = std::max(scale, std::abs(f(y)));
  if (!(scale > 0.0) || !std::isfinite(scale)) scale = 1.0;
  auto g = [&](Real y) { return f(y) / scale; };
  QuadratureResult head = numerics::integrate_adaptive(g, 0.0, 1.0, tol, {true, false});
  Real y_max = 16;
  while (bound(y_max) / scale > 1e-3 * tol * std::max<Real>(1, std::abs(head.value)) && y_max < 800) y_max *= 1.5;
  const QuadratureResult body = numerics::gauss_kronrod_adaptive(g, 1.0, y_max, tol);
  QuadratureResult total = add(head, body);
  total.value *= scale;
  total.abs_error_estimate = total.abs_error_estimate * scale + bound(y_max);
  total.evaluations += 11;
  return total;
}

}  // namespace detail

// int_0^infinity e(sign x) x^{s-1} dx = (2 pi)^{-s} Gamma(s) e(sign s / 4).
inline IdentityReport verify_exponential_mellin(int sign, Complex s, Real tol = kOracleTol) {
  if (sign != 1 && sign != -1) throw DomainError("verify_exponential_mellin: sign must be +1 or -1");
  detail::require_strip(s, "verify_exponential_mellin");
  const QuadratureResult q = numerics::integrate_oscillatory_mellin(Real(sign), s, tol);
  const Complex rhs = std::exp(-s * std::log(kTwoPi)) * numerics::complex_gamma(s) * numerics::e_of(Real(sign) * s / 4.0);
  return make_report("exponential-mellin", {{"sign", Real(sign)}, {"s", s}}, q.value, rhs, q);
}

// int_R e(x) (sgn x)^eta |x|^{s-1} dx against G_eta(s).
inline IdentityReport verify_g_eta(int eta, Complex s, Real tol = kOracleTol) {
  if (eta != 0 && eta != 1) throw DomainError("verify_g_eta: eta must be 0 or 1");
  detail::require_strip(s, "verify_g_eta");
  const QuadratureResult plus = numerics::integrate_oscillatory_mellin(1.0, s, tol);
  const QuadratureResult minus = numerics::integrate_oscillatory_mellin(-1.0, s, tol);
  const QuadratureResult q = detail::add(plus, minus, eta ? -1.0 : 1.0);
  return make_report("g-eta", {{"eta", Real(eta)}, {"s", s}}, q.value, g_eta(eta, s), q);
}

// int_0^infinity K_nu(y) y^{s-1} dy = 2^{s-2} Gamma((s-nu)/2) Gamma((s+nu)/2).
inline IdentityReport verify_bessel_single(Complex nu, Complex s, Real tol = kOracleTol) {
  if (!(s.real() > std::abs(nu.real()))) throw DomainError("verify_bessel_single: needs Re s > |Re nu|");
  const Complex sm1 = s - 1.0;
  auto f = [&](Real y) { return numerics::bessel_k_value(nu, y) * std::exp(sm1 * std::log(y)); };
  // |K_nu| <= K_{Re nu}; beyond Y >= 2|Re s - 3/2| + 2 the log-derivative of
  // K y^{s-1} is below -1/2.
  const Complex re_nu(std::abs(nu.real()));
  auto bound = [&](Real y) {
    const Real y_eff = std::max(y, 2 * std::abs(s.real() - 1.5) + 2);
    return 2 * numerics::bessel_k_value(re_nu, y_eff).real() * std::pow(y_eff, s.real() - 1);
  };
  const QuadratureResult q = detail::bessel_mellin_quadrature(f, bound, tol);
  const Complex rhs = std::pow(Complex(2.0), s - 2.0) * numerics::complex_gamma((s - nu) / 2.0) * numerics::complex_gamma((s + nu) / 2.0);
  return make_report("bessel-single", {{"nu", nu}, {"s", s}}, q.value, rhs, q);
}

// int_0^infinity K_mu K_nu y^{s-1} dy
//   = 2^{s-3} Gamma((s+mu+nu)/2) Gamma((s+mu-nu)/2) Gamma((s-mu+nu)/2) Gamma((s-mu-nu)/2) / Gamma(s).
inline IdentityReport verify_bessel_double(Complex mu, Complex nu, Complex s, Real tol = kOracleTol) {
  if (!(s.real() > std::abs(mu.real()) + std::abs(nu.real()))) {
    throw DomainError("verify_bessel_double: needs Re s > |Re mu| + |Re nu|");
  }
  const Complex sm1 = s - 1.0;
  auto f = [&](Real y) {
    const Complex km = numerics::bessel_k_value(mu, y);
    const Complex kn = mu == nu ? km : numerics::bessel_k_value(nu, y);
    return km * kn * std::exp(sm1 * std::log(y));
  };
  const Complex re_mu(std::abs(mu.real())), re_nu(std::abs(nu.real()));
  auto bound = [&](Real y) {
    const Real y_eff = std::max(y, std::abs(s.real() - 2) + 2);
    return numerics::bessel_k_value(re_mu, y_eff).real() * numerics::bessel_k_value(re_nu, y_eff).real() *
           std::pow(y_eff, s.real() - 1);
  };
  const QuadratureResult q = detail::bessel_mellin_quadrature(f, bound, tol);
  using numerics::complex_gamma;
  const Complex rhs = std::pow(Complex(2.0), s - 3.0) * complex_gamma((s + mu + nu) / 2.0) * complex_gamma((s + mu - nu) / 2.0) *
                      complex_gamma((s - mu + nu) / 2.0) * complex_gamma((s - mu - nu) / 2.0) / complex_gamma(s);
  return make_report("bessel-double", {{"mu", mu}, {"nu", nu}, {"s", s}}, q.value, rhs, q);
}

// The one-variable kernel integral
//   int_R (sgn((y-t)(t-x)) / sgn((y-z)(z-x)))^delta |x-t|^{a-1} |y-t|^{b-1} |z-t|^{-a-b} dt
//   = (-1)^delta G_delta(a) G_delta(b) / G_0(a+b) |x-y|^{a+b-1} |x-z|^{-b} |y-z|^{-a}
// for Re a, Re b > 0 and Re(a+b) < 1.
inline IdentityReport verify_kernel_identity(Real x, Real y, Real z, Complex alpha, Complex beta, int delta,
                                             Real tol = kOracleTol) {
  if (delta != 0 && delta != 1) throw DomainError("verify_kernel_identity: delta must be 0 or 1");
  if (!(alpha.real() > 0 && beta.real() > 0 && (alpha + beta).real() < 1)) {
    throw DomainError("verify_kernel_identity: needs Re alpha > 0, Re beta > 0, Re(alpha + beta) < 1");
  }
  if (x == y || y == z || x == z) throw DomainError("verify_kernel_identity: points must be distinct");
  const Real base_sign = ((y - z) * (z - x) > 0) ? 1.0 : -1.0;
  const Complex ea = alpha - 1.0, eb = beta - 1.0, ec = -(alpha + beta);
  // Integrand from the three distances |t-x|, |t-y|, |t-z| and the sign.
  auto kernel = [&](Real dx, Real dy, Real dz, Real sgn) -> Complex {
    Complex v = std::exp(ea * std::log(dx) + eb * std::log(dy) + ec * std::log(dz));
    if (delta == 1 && sgn * base_sign < 0) v = -v;
    return v;
  };
  // Distances of t to each point when t is given by its offsets from the
  // interval ends [lo, hi]; offsets to the endpoints stay exact.
  std::array<Real, 3> pts{x, y, z};
  std::sort(pts.begin(), pts.end());
  auto distances = [&](Real t, Real lo, Real off_lo, Real hi, Real off_hi) {
    auto dist = [&](Real p) {
      if (p == lo) return off_lo;
      if (p == hi) return off_hi;
      return std::abs(t - p);
    };
    return std::array<Real, 3>{dist(x), dist(y), dist(z)};
  };
  // Constant on each piece; evaluated away from the endpoints, where t may
  // round onto x or y.
  auto sign_at = [&](Real t) { return ((y - t) * (t - x) > 0) ? 1.0 : -1.0; };

  QuadratureResult total{0.0, 0.0, 0};
  for (int i = 0; i < 2; ++i) {
    const Real lo = pts[i], hi = pts[i + 1];
    const Real sgn = sign_at(0.5 * (lo + hi));
    auto g = [&](Real u_left, Real u_right) {
      const Real t = u_left <= u_right ? lo + u_left : hi - u_right;
      const auto d = distances(t, lo, u_left, hi, u_right);
      return kernel(d[0], d[1], d[2], sgn);
    };
    total = detail::add(total, numerics::tanh_sinh_offsets(g, hi - lo, tol));
  }
  // Outer pieces: [p3, p3 + D] and [p1 - D, p1] singular at one end, then the
  // tails t = p3 + D / w and t = p1 - D / w with w in (0, 1], which are
  // smooth because the integrand decays like t^{-2}.
  const Real span = pts[2] - pts[0];
  for (int side : {1, -1}) {
    const Real anchor = side > 0 ? pts[2] : pts[0];
    const Real sgn = sign_at(anchor + side * span);
    auto g = [&](Real u_left, Real u_right) {
      const Real off = u_left <= u_right ? u_left : span - u_right;  // distance from the anchor
      const Real t = anchor + side * off;
      const auto d = distances(t, anchor, off, anchor, off);
      return kernel(d[0], d[1], d[2], sgn);
    };
    total = detail::add(total, numerics::tanh_sinh_offsets(g, span, tol));
    auto tail = [&](Real w) -> Complex {
      if (w == 0) return 0.0;
      const Real t = anchor + side * span / w;
      const Complex v = kernel(std::abs(t - x), std::abs(t - y), std::abs(t - z), sgn);
      return v * span / (w * w);
    };
    total = detail::add(total, numerics::gauss_kronrod_adaptive(tail, 0.0, 1.0, tol));
  }
  const Real dxy = std::abs(x - y), dxz = std::abs(x - z), dyz = std::abs(y - z);
  const Complex rhs = (delta ? -1.0 : 1.0) * g_eta(delta, alpha) * g_eta(delta, beta) / g_eta(0, alpha + beta) *
                      std::exp((alpha + beta - 1.0) * std::log(dxy) - beta * std::log(dxz) - alpha * std::log(dyz));
  return make_report("kernel",
                     {{"x", x}, {"y", y}, {"z", z}, {"alpha", alpha}, {"beta", beta}, {"delta", Real(delta)}},
                     total.value, rhs, total);
}

// Fixture grid: one identity per line,
//   <identity-id> key=value key=value ...
// with complex values written as a, bi or a+bi. '#' starts a comment.
struct FixturePoint {
  std::string identity_id;
  std::map<std::string, Complex> params;
  std::size_t line = 0;

  Complex get(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw ParseError("fixture line " + std::to_string(line) + ": missing '" + key + "'");
    return it->second;
  }
  Real get_real(const std::string& key) const { return get(key).real(); }
  int get_int(const std::string& key) const { return static_cast<int>(std::lround(get(key).real())); }
};

inline std::vector<FixturePoint> load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    if (!std::filesystem::exists(path)) throw NotFoundError("fixture not found: " + path.string());
    throw IoError("cannot read fixture " + path.string());
  }
  std::vector<FixturePoint> points;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    FixturePoint p;
    p.line = lineno;
    if (!(words >> p.identity_id)) continue;
    for (std::string kv; words >> kv;) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw ParseError("fixture line " + std::to_string(lineno) + ": expected key=value");
      p.params[kv.substr(0, eq)] = parse_complex(kv.substr(eq + 1));
    }
    points.push_back(std::move(p));
  }
  return points;
}

// Runs one fixture point through the matching verifier.
inline IdentityReport run_fixture_point(const FixturePoint& p, Real tol = kOracleTol) {
  const std::string& id = p.identity_id;
  if (id == "exponential-mellin") return verify_exponential_mellin(p.get_int("sign"), p.get("s"), tol);
  if (id == "g-eta") return verify_g_eta(p.get_int("eta"), p.get("s"), tol);
  if (id == "bessel-single") return verify_bessel_single(p.get("nu"), p.get("s"), tol);
  if (id == "bessel-double") return verify_bessel_double(p.get("mu"), p.get("nu"), p.get("s"), tol);
  if (id == "kernel") {
    return verify_kernel_identity(p.get_real("x"), p.get_real("y"), p.get_real("z"), p.get("alpha"), p.get("beta"),
                                  p.get_int("delta"), tol);
  }
  throw ParseError("fixture line " + std::to_string(p.line) + ": unknown identity '" + id + "'");
}

}  // namespace automorph
