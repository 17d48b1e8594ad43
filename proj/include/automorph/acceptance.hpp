#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "automorph/coefficients.hpp"
#include "automorph/eisenstein.hpp"
#include "automorph/extsquare.hpp"
#include "automorph/format.hpp"
#include "automorph/gamma_factors.hpp"
#include "automorph/lseries.hpp"
#include "automorph/mellin_oracle.hpp"

namespace automorph::acceptance {

enum class Suite { fast, full };
enum class Status { pass, fail, skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::skipped: return "SKIPPED";
  }
  return "?";
}

// One row of the summary. A criterion with several parts reports the part
// closest to its threshold (largest measured / threshold).
struct CriterionResult {
  int id = 0;
  std::string name;
  Real measured = 0.0;
  Real threshold = 0.0;
  Real runtime_limit = 0.0;  // seconds
  Status status = Status::skipped;
  std::string detail;
};

struct Options {
  Suite suite = Suite::fast;
  std::uint64_t seed = 42;
  std::filesystem::path fixture_dir;
  std::filesystem::path maass_file;  // empty: no Maass data
};

// Tracks the part of a criterion that is closest to its threshold.
struct Worst {
  Real measured = 0.0, threshold = 1.0;
  std::string part;

  void offer(Real m, Real t, const std::string& label) {
    if (m / t > measured / threshold || part.empty()) {
      measured = m;
      threshold = t;
      part = label;
    }
  }
};

namespace detail {

inline Real rel(Complex a, Complex b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), Real(1e-300)});
}

inline Real uniform(std::mt19937_64& rng, Real lo, Real hi) { return lo + (hi - lo) * extsquare::uniform01(rng); }

inline CriterionResult finish(int id, std::string name, const Worst& w, Real runtime_limit, double seconds,
                              std::string detail) {
  CriterionResult r{id, std::move(name), w.measured, w.threshold, runtime_limit, Status::fail, std::move(detail)};
  const bool within = w.measured <= w.threshold;
  const bool in_time = seconds <= runtime_limit;
  r.status = within && in_time ? Status::pass : Status::fail;
  if (!in_time) r.detail += "; runtime " + format_double(seconds) + " s over the limit";
  return r;
}

inline const std::vector<eisenstein::UpperHalfPoint>& sample_points() {
  static const std::vector<eisenstein::UpperHalfPoint> pts = {
      {0.0, 1.0},    {0.5, 0.8660254037844386}, {0.1, 1.2}, {-0.3, 1.5}, {0.25, 2.0},
      {-0.45, 0.95}, {0.4, 3.0},               {0.0, 0.6}, {0.7, 0.4}, {-1.3, 0.25}};
  return pts;
}

}  // namespace detail

// 1. Lambda(w) = Lambda(12 - w) for Delta on a 5 x 5 grid. The two sides use
// different split points of the Mellin integral.
inline CriterionResult hecke_fe(const Options&) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto delta = delta_coefficients(200);
  Real worst = 0.0, scale = 0.0;
  for (Real re : {4.0, 5.0, 6.0, 7.0, 8.0}) {
    for (Real im : {-10.0, -5.0, 0.0, 5.0, 10.0}) {
      const Complex w(re, im);
      const Complex a = lseries::completed_hecke_l(delta, w, 1.0).value;
      const Complex b = lseries::completed_hecke_l(delta, 12.0 - w, 1.25).value;
      worst = std::max(worst, std::abs(a - b));
      scale = std::max({scale, std::abs(a), std::abs(b)});
    }
  }
  Worst w;
  w.offer(worst / scale, 1e-9, "max |Lambda(w) - Lambda(12-w)| / max |Lambda|");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return detail::finish(1, "hecke-functional-equation", w, 5.0, secs, w.part + " over 25 points");
}

// 2. Archimedean integral identities on the fixture grid.
inline CriterionResult mellin_oracle(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto points = load_fixture(opt.fixture_dir / "mellin_grid.txt");
  const std::vector<std::pair<std::string, Real>> groups = {{"exponential-mellin", 1e-8}, {"g-eta", 1e-8},
                                                            {"bessel-single", 1e-8}, {"bessel-double", 1e-6},
                                                            {"kernel", 1e-6}};
  Worst w;
  std::string detail;
  bool enough = true;
  for (const auto& [id, threshold] : groups) {
    Real worst = 0.0;
    int n = 0;
    for (const auto& p : points) {
      if (p.identity_id != id) continue;
      worst = std::max(worst, run_fixture_point(p).rel_residual());
      ++n;
    }
    if (n < 5) enough = false;
    w.offer(worst, threshold, id);
    detail += (detail.empty() ? "" : "; ") + id + " " + format_double(worst) + " (" + std::to_string(n) + " points)";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto r = detail::finish(2, "mellin-oracle", w, 60.0, secs, detail);
  if (!enough) {
    r.status = Status::fail;
    r.detail += "; a group has fewer than 5 fixture points";
  }
  return r;
}

// 3. Eisenstein series: Fourier expansion against the lattice sum, and E_s = E_{1-s}.
inline CriterionResult eisenstein_checks(const Options&) {
  const auto t0 = std::chrono::steady_clock::now();
  Real expansion = 0.0, fe = 0.0;
  for (Real sigma : {2.0, 2.5, 3.0}) {
    for (const auto& z : detail::sample_points()) {
      const Complex s(sigma, 1.3);
      expansion = std::max(expansion, detail::rel(eisenstein::eval_direct_sum(s, z).value,
                                                  eisenstein::eval_completed_eisenstein(s, z).value));
    }
  }
  for (Real t : {0.5, 2.0, 4.0, 7.0, 10.0}) {
    for (std::size_t i = 0; i < 5; ++i) {
      const auto& z = detail::sample_points()[i * 2];
      const Complex s(0.5, t);
      fe = std::max(fe, detail::rel(eisenstein::eval_completed_eisenstein(s, z).value,
                                    eisenstein::eval_completed_eisenstein(1.0 - s, z).value));
    }
  }
  Worst w;
  w.offer(expansion, 1e-8, "expansion vs lattice sum");
  w.offer(fe, 1e-9, "critical-line functional equation");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return detail::finish(3, "eisenstein", w, 30.0, secs,
                        "expansion " + format_double(expansion) + " (30 points); E_s vs E_{1-s} " + format_double(fe) +
                            " (25 points)");
}

// 4. Rankin-Selberg integral of Delta against E_s: closed form right of the
// strip and I(s) = I(1-s) inside it.
inline CriterionResult rankin_selberg_checks(const Options& opt) {
  if (opt.suite != Suite::full) return {4, "rankin-selberg", 0.0, 1e-6, 900.0, Status::skipped, "full suite only"};
  const auto t0 = std::chrono::steady_clock::now();
  const auto delta = delta_coefficients(20000);
  const auto pair = lseries::rankin_selberg(delta, delta);
  Real closed = 0.0, fe = 0.0;
  for (Complex s : {Complex(2.5, 0.5), Complex(2.75, -1.0), Complex(3.0, 0.0)}) {
    const Complex I = eisenstein::rankin_selberg_integral(delta, delta, s).value;
    const auto L = lseries::dirichlet_eval(pair, s, delta.count());
    closed = std::max(closed, detail::rel(I, lseries::rankin_selberg_prefactor(12).evaluate(s) * L.value));
  }
  for (Complex s : {Complex(0.7, 0.5), Complex(0.3, 2.0), Complex(0.5, 4.0), Complex(0.1, -1.5), Complex(0.95, 0.0)}) {
    fe = std::max(fe, detail::rel(eisenstein::rankin_selberg_integral(delta, delta, s).value,
                                  eisenstein::rankin_selberg_integral(delta, delta, 1.0 - s).value));
  }
  Worst w;
  w.offer(closed, 1e-6, "integral vs closed form");
  w.offer(fe, 1e-6, "I(s) vs I(1-s)");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return detail::finish(4, "rankin-selberg", w, 900.0, secs,
                        "closed form " + format_double(closed) + " (3 points); I(s) vs I(1-s) " + format_double(fe) +
                            " (5 points)");
}

// 5. Exterior-square local identity and the Littlewood cross-check.
inline CriterionResult exterior_square(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto batch = extsquare::js_verify_batch(opt.seed, 100, 12);
  Worst w;
  w.offer(batch.max_js_residual, 1e-10, "Jacquet-Shalika");
  w.offer(batch.max_littlewood_residual, 1e-9, "Littlewood");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return detail::finish(5, "exterior-square", w, 10.0, secs,
                        "Jacquet-Shalika " + format_double(batch.max_js_residual) + ", Littlewood " +
                            format_double(batch.max_littlewood_residual) + " (100 trials, K = 12, seed " +
                            std::to_string(opt.seed) + ")");
}

// 6. Gamma-factor identities at seeded random points off the real axis.
inline CriterionResult gamma_identities(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(opt.seed);
  auto off_axis = [&](Real lo, Real hi, Real ih) {
    for (;;) {
      const Complex s(detail::uniform(rng, lo, hi), detail::uniform(rng, -ih, ih));
      if (std::abs(s.imag()) >= 0.05) return s;
    }
  };
  auto random_mu = [&]() {
    std::array<Complex, 4> mu;
    Complex sum = 0;
    for (int j = 0; j < 3; ++j) sum += (mu[j] = Complex(detail::uniform(rng, -0.4, 0.4), detail::uniform(rng, -3, 3)));
    mu[3] = -sum;
    return mu;
  };
  auto random_eta = [&]() {
    std::array<int, 4> eta{};
    for (int j = 0; j < 3; ++j) eta[j] = static_cast<int>(rng() >> 63);
    eta[3] = (eta[0] + eta[1] + eta[2]) % 2;
    return eta;
  };
  Real reflection = 0.0, consistency = 0.0, phi = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Complex s = off_axis(-4, 4, 6);
    for (int d : {0, 1})
      reflection = std::max(reflection, std::abs(g_eta(d, s) * g_eta(d, 1.0 - s) - Real(d ? -1 : 1)));
  }
  for (int i = 0; i < 100; ++i) {
    const auto mu = random_mu();
    const auto eta = random_eta();
    const Complex s = off_axis(-1, 2, 4);
    consistency = std::max(consistency, prop2_consistency(s, mu, eta).rel_residual);
    phi = std::max(phi, std::abs(prop2_ratio(s, mu, eta) * prop2_ratio(1.0 - s, mu, eta) - 1.0));
  }
  for (int i = 0; i < 100; ++i) {
    const Complex s = off_axis(-2, 3, 5);
    const Complex l1(0, detail::uniform(rng, 0, 12)), l2(0, detail::uniform(rng, 0, 12));
    for (int d1 : {0, 1})
      for (int d2 : {0, 1})
        phi = std::max(phi, std::abs(prop1_ratio(s, l1, l2, d1, d2) * prop1_ratio(1.0 - s, l1, l2, d1, d2) - 1.0));
    // holomorphic weights 12 and 16 sit at lambda = -11 and -15
    phi = std::max(phi, std::abs(prop1_ratio(s, -11.0, -15.0, 0, 0) * prop1_ratio(1.0 - s, -11.0, -15.0, 0, 0) - 1.0));
  }
  Worst w;
  w.offer(reflection, 1e-11, "G_d(s) G_d(1-s) = (-1)^d");
  w.offer(consistency, 1e-9, "exterior-square consistency");
  w.offer(phi, 1e-10, "Phi(s) Phi(1-s) = 1");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return detail::finish(6, "gamma-identities", w, 5.0, secs,
                        "reflection " + format_double(reflection) + " (1000 points); consistency " +
                            format_double(consistency) + " (100 points); Phi(s) Phi(1-s) " + format_double(phi));
}

// 7. Integer Hecke relations for tau and the divisor-sum shadow
// n^{-nu} sigma_nu(n) = sigma_{-nu}(n).
inline CriterionResult coefficient_exactness(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto hecke = check_hecke_relations(delta_coefficients(10000));
  std::mt19937_64 rng(opt.seed);
  Real shadow = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Complex nu(detail::uniform(rng, -2, 2), detail::uniform(rng, -10, 10));
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 5000);
    const auto series = divisor_power_coeffs(nu, n);
    std::complex<long double> sigma = 0.0L;
    for (std::size_t d = 1; d <= n; ++d)
      if (n % d == 0) sigma += numerics::real_power_extended(Real(d), nu);
    const auto lhs = numerics::real_power_extended(Real(n), -nu) * sigma;
    shadow = std::max(shadow, detail::rel(Complex(Real(lhs.real()), Real(lhs.imag())), series.at(n)));
  }
  Worst w;
  // exact integer relations are reported as a residual of 0 and threshold 0.5
  w.offer(hecke.exact ? hecke.max_residual() : 1.0, 0.5, "tau Hecke relations");
  w.offer(shadow, 1e-14, "divisor shadow");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto r = detail::finish(7, "coefficient-exactness", w, 10.0, secs,
                          "tau relations " + std::string(hecke.exact ? "exact" : "inexact") + " with max residual " +
                              format_double(hecke.max_residual()) + " (" + std::to_string(hecke.relations) +
                              " relations, n <= 10000); divisor shadow " + format_double(shadow) + " (500 points)");
  if (!hecke.exact || hecke.max_residual() != 0.0) r.status = Status::fail;
  return r;
}

// 8. Functional equation of an even Maass cusp form from a coefficient file.
inline CriterionResult maass_fe(const Options& opt) {
  CriterionResult skipped{8, "maass-functional-equation", 0.0, 1e-12, 60.0, Status::skipped, ""};
  if (opt.maass_file.empty() || !std::filesystem::exists(opt.maass_file)) {
    skipped.detail = "no Maass coefficient file";
    return skipped;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto series = load_maass_coefficients(opt.maass_file);
  const auto& m = std::get<Maass>(series.spectral);
  if (series.count() < 2000 || m.parity != 0) {
    skipped.detail = "Maass file needs an even form with at least 2000 coefficients";
    return skipped;
  }
  Real structural = 0.0;
  for (Complex s : {Complex(0.5, 0.0), Complex(0.25, 1.5), Complex(0.8, -3.0), Complex(-0.5, 2.0), Complex(1.5, 6.0)}) {
    structural = std::max(structural, detail::rel(lseries::completed_maass_l(series, s).value,
                                                  lseries::completed_maass_l(series, 1.0 - s).value));
  }
  Real routes = 0.0;
  for (Complex s : {Complex(3.0, 0.0), Complex(3.0, 2.0), Complex(3.0, -5.0)}) {
    routes = std::max(routes, detail::rel(lseries::completed_maass_l(series, s).value,
                                          lseries::maass_dirichlet_completed(series, s, series.count()).value));
  }
  Worst w;
  w.offer(structural, 1e-12, "Lambda(s) vs Lambda(1-s)");
  w.offer(routes, 1e-4, "Bessel route vs Dirichlet route at Re s = 3");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return detail::finish(8, "maass-functional-equation", w, 60.0, secs,
                        "structural " + format_double(structural) + " (5 points); routes " + format_double(routes) +
                            " (3 points)");
}

// Runs every criterion; an exception inside one marks it failed with the message.
inline std::vector<CriterionResult> run_all(const Options& opt) {
  const std::vector<std::pair<std::string, std::function<CriterionResult(const Options&)>>> criteria = {
      {"hecke-functional-equation", hecke_fe},  {"mellin-oracle", mellin_oracle},
      {"eisenstein", eisenstein_checks},        {"rankin-selberg", rankin_selberg_checks},
      {"exterior-square", exterior_square},     {"gamma-identities", gamma_identities},
      {"coefficient-exactness", coefficient_exactness}, {"maass-functional-equation", maass_fe}};
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      out.push_back(criteria[i].second(opt));
    } catch (const std::exception& e) {
      out.push_back({int(i + 1), criteria[i].first, 0.0, 0.0, 0.0, Status::fail, std::string("error: ") + e.what()});
    }
  }
  return out;
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (r.status == Status::fail) return false;
  return true;
}

// "criterion 1 hecke-functional-equation PASS measured=... threshold=... | detail"
inline std::string format_line(const CriterionResult& r) {
  return "criterion " + std::to_string(r.id) + " " + r.name + " " + to_string(r.status) +
         " measured=" + format_double(r.measured) + " threshold=" + format_double(r.threshold) + " | " + r.detail;
}

}  // namespace automorph::acceptance
