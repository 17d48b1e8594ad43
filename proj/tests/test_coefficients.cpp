#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "automorph/coefficients.hpp"
#include "oracles.hpp"

using namespace automorph;

namespace {

std::filesystem::path scratch_dir(const std::string& leaf) {
  auto dir = std::filesystem::temp_directory_path() / ("automorph-test-" + std::to_string(::getpid())) / leaf;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Coefficients sum_{d | n} (d / (n/d))^{it}: Hecke eigenvalues with unit
// weight factor, a convenient stand-in for Maass data.
std::vector<Complex> unitary_eisenstein(Real t, std::size_t count) {
  std::vector<Complex> a(count, 0.0);
  for (std::size_t n = 1; n <= count; ++n)
    for (std::size_t d = 1; d <= n; ++d)
      if (n % d == 0) a[n - 1] += std::exp(Complex(0, t) * std::log(Real(d) * d / Real(n)));
  return a;
}

std::string maass_file_text(const std::string& parity, const std::string& norm, const std::vector<Complex>& a) {
  std::ostringstream out;
  out << "# synthetic test data\n# R 9.5\n# parity " << parity << "\n# normalization " << norm << "\n";
  out.precision(17);
  for (std::size_t n = 1; n <= a.size(); ++n) out << n << ' ' << a[n - 1].real() << ' ' << a[n - 1].imag() << '\n';
  return out.str();
}

}  // namespace

TEST(Delta, SmallValues) {
  const auto tau = delta_coefficients(10);
  EXPECT_EQ(tau.exact[0], 1);
  EXPECT_EQ(tau.exact[1], -24);
  EXPECT_EQ(tau.exact[4], 4830);
  EXPECT_EQ(tau.exact[9], -115920);
  EXPECT_TRUE(std::holds_alternative<Holomorphic>(tau.spectral));
  EXPECT_EQ(std::get<Holomorphic>(tau.spectral).weight, 12);
}

TEST(Delta, MatchesProductExpansion) {
  const int N = 300;
  const auto tau = delta_coefficients(N);
  const auto brute = oracle::tau_by_multiplication(N);
  for (int n = 1; n <= N; ++n) ASSERT_EQ(tau.exact[n - 1], brute[n]) << "n=" << n;
}

TEST(Delta, HeckeRelationsExactToTenThousand) {
  const auto tau = delta_coefficients(10000);
  const HeckeReport rep = check_hecke_relations(tau);
  EXPECT_TRUE(rep.exact);
  EXPECT_EQ(rep.max_multiplicative, 0.0);
  EXPECT_EQ(rep.max_prime_power, 0.0);
  EXPECT_GT(rep.relations, 10000u);
  EXPECT_EQ(tau.exact[1] * tau.exact[2], tau.exact[5]);
  EXPECT_EQ(tau.exact[5], -6048);
  EXPECT_EQ(tau.exact[1] * tau.exact[1], tau.exact[3] + 2048);
}

TEST(Delta, LargeCountFitsIn128Bits) {
  const auto tau = delta_coefficients(50000);
  // tau(p) satisfies the Ramanujan bound |tau(p)| <= 2 p^{11/2}.
  for (std::size_t p : primes_up_to(50000)) {
    ASSERT_LE(std::abs(static_cast<Real>(tau.exact[p - 1])), 2 * std::pow(Real(p), 5.5)) << p;
  }
}

TEST(Delta, RejectsEmpty) { EXPECT_THROW(delta_coefficients(0), DomainError); }

TEST(Eisenstein, DivisorSums) {
  const auto e4 = eisenstein_qcoeffs(4, 10);
  EXPECT_EQ(e4.exact[0], 1);
  EXPECT_EQ(e4.exact[3], 73);
  EXPECT_EQ(e4.exact[5], 252);
  EXPECT_NEAR(e4.scale.real(), 240.0, 1e-11);
  EXPECT_NEAR(eisenstein_qcoeffs(6, 1).scale.real(), -504.0, 1e-10);
  EXPECT_NEAR(eisenstein_qcoeffs(12, 1).scale.real(), 65520.0 / 691.0, 1e-10);
  EXPECT_EQ(*e4.constant_term, Complex(1.0));
  EXPECT_FALSE(std::get<Holomorphic>(e4.spectral).cuspidal);
  for (std::size_t n = 1; n <= 10; ++n) {
    long want = 0;
    for (long d : oracle::divisors(n)) want += d * d * d;
    EXPECT_EQ(e4.exact[n - 1], want);
  }
}

TEST(Eisenstein, OddWeightRejected) {
  EXPECT_THROW(eisenstein_qcoeffs(5, 10), DomainError);
  EXPECT_THROW(eisenstein_qcoeffs(2, 10), DomainError);
}

TEST(Eisenstein, SigmaMultiplicativeExact) {
  const auto s = eisenstein_qcoeffs(12, 2000);
  ASSERT_TRUE(s.is_exact());
  for (std::size_t m = 2; m <= 2000; ++m)
    for (std::size_t n = m + 1; m * n <= 2000; ++n)
      if (std::gcd(m, n) == 1) ASSERT_EQ(s.exact[m - 1] * s.exact[n - 1], s.exact[m * n - 1]);
  const auto rep = check_hecke_relations(s);
  EXPECT_TRUE(rep.exact);
  EXPECT_EQ(rep.max_residual(), 0.0);
}

TEST(DivisorPower, Examples) {
  const auto a = divisor_power_coeffs(1.0, 6);
  EXPECT_NEAR(a.at(1).real(), 1.0, 0);
  EXPECT_NEAR(a.at(6).real(), 2.0, 1e-15);
  EXPECT_TRUE(a.constant_term_pole);
  EXPECT_FALSE(a.constant_term.has_value());
  const Complex nu(0.3, 1.7);
  const auto b = divisor_power_coeffs(nu, 20);
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19}) {
    EXPECT_LT(std::abs(b.at(p) - (1.0 + std::pow(Real(p), -nu))), 1e-15);
  }
  EXPECT_LT(std::abs(*b.constant_term - numerics::riemann_zeta(nu)), 1e-14);
}

TEST(DivisorPower, ReflectionShadow) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(1, 10000);
  std::uniform_real_distribution<Real> comp(-3, 3);
  Real worst = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Complex nu(comp(rng), comp(rng));
    if (std::abs(nu) > 3) nu *= 3 / std::abs(nu);
    const std::size_t n = pick(rng);
    const auto plus = divisor_power_coeffs(-nu, n);   // sigma_nu
    const auto minus = divisor_power_coeffs(nu, n);   // sigma_{-nu}
    const Complex lhs = numerics::real_power(Real(n), -nu) * plus.at(n);
    worst = std::max(worst, std::abs(lhs - minus.at(n)) / std::abs(minus.at(n)));
  }
  EXPECT_LT(worst, 1e-14);
}

TEST(DivisorPower, HeckeTwist) {
  const auto a = divisor_power_coeffs(Complex(0.4, 2.0), 500);
  EXPECT_LT(check_hecke_relations(a).max_relative, 1e-13);
}

TEST(Parity, Gl2) {
  auto s = zero_series(make_maass(Complex(0, 5), 0), 5);
  s.values[2] = Complex(2, 1);
  EXPECT_EQ(apply_parity(s, -3), Complex(2, 1));
  EXPECT_EQ(apply_parity(s, 3), Complex(2, 1));
  std::get<Maass>(s.spectral).parity = 1;
  EXPECT_EQ(apply_parity(s, -3), Complex(-2, -1));
  EXPECT_THROW(apply_parity(s, 0), DomainError);
  EXPECT_THROW(apply_parity(s, 6), DomainError);
}

TEST(Parity, Involution) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<Real> u(-5, 5);
  for (int parity : {0, 1}) {
    auto s = zero_series(make_maass(Complex(0, 5), parity), 50);
    for (auto& v : s.values) v = Complex(u(rng), u(rng));
    for (long n = 1; n <= 50; ++n) {
      auto reflected = s;
      for (long m = 1; m <= 50; ++m) reflected.values[m - 1] = apply_parity(s, -m);
      EXPECT_EQ(apply_parity(reflected, -n), s.at(n));
    }
  }
}

TEST(Parity, Gl4Signs) {
  auto s = zero_series(make_gl4({}, {1, 0, 0, 1}), 4);
  const Complex c(0.7, -0.2);
  s.values[1] = c;
  EXPECT_EQ(apply_parity(s, std::array<long, 3>{-1, 2, 1}), -c);
  EXPECT_EQ(apply_parity(s, std::array<long, 3>{1, 2, 1}), c);
  // eps2 carries eta1 + eta2 = 1, eps3 carries eta1 + eta2 + eta3 = 1.
  EXPECT_EQ(apply_parity(s, std::array<long, 3>{1, -2, 1}), -c);
  EXPECT_EQ(apply_parity(s, std::array<long, 3>{-1, -2, -1}), -c);
  EXPECT_THROW(apply_parity(s, std::array<long, 3>{2, 2, 1}), DomainError);
  EXPECT_THROW(apply_parity(s, 2), DomainError);
}

TEST(Parity, DualitySignTable) {
  EXPECT_EQ(gl4_duality_signs({1, 1, 0, 0}, {-1, 1, 1}), -1);
  EXPECT_EQ(gl4_duality_signs({1, 1, 0, 0}, {1, 1, 1}), 1);
  EXPECT_THROW(gl4_duality_signs({1, 0, 0, 0}, {1, 1, 1}), DomainError);
  const std::array<std::array<int, 4>, 8> etas{{{0, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1},
                                                {0, 1, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}, {1, 1, 1, 1}}};
  for (const auto& eta : etas) {
    for (int mask = 0; mask < 8; ++mask) {
      const std::array<int, 3> eps{mask & 1 ? -1 : 1, mask & 2 ? -1 : 1, mask & 4 ? -1 : 1};
      const int once = gl4_duality_signs(eta, eps);
      EXPECT_EQ(once * once, 1);
      int want = 1;
      if (eps[0] < 0 && eta[0] % 2) want = -want;
      if (eps[1] < 0 && (eta[0] + eta[1]) % 2) want = -want;
      if (eps[2] < 0 && (eta[0] + eta[1] + eta[2]) % 2) want = -want;
      EXPECT_EQ(once, want);
    }
  }
}

TEST(Spectral, Validation) {
  EXPECT_THROW(make_holomorphic(11), DomainError);
  EXPECT_THROW(make_holomorphic(2), DomainError);
  EXPECT_NO_THROW(make_holomorphic(12));
  EXPECT_THROW(make_maass(Complex(0, 1), 2), DomainError);
  EXPECT_THROW(make_gl4({Complex(1), 0, 0, 0}, {0, 0, 0, 0}), DomainError);
  EXPECT_THROW(make_gl4({}, {1, 0, 0, 0}), DomainError);
  EXPECT_NO_THROW(make_gl4({Complex(0.5, 1), Complex(-0.5, -1), Complex(0.1), Complex(-0.1)}, {1, 1, 1, 1}));
}

TEST(HeckeCheck, ZeroSeries) {
  const auto z = zero_series(Holomorphic{12, true}, 100);
  EXPECT_EQ(check_hecke_relations(z).max_residual(), 0.0);
}

TEST(HeckeCheck, DetectsCorruption) {
  auto tau = delta_coefficients(200);
  tau.exact[5] += 1;
  tau.values[5] += 1.0;
  const auto rep = check_hecke_relations(tau);
  EXPECT_GE(rep.max_multiplicative, 1.0);
  tau = delta_coefficients(200);
  tau.exact[7] += 1;
  tau.values[7] += 1.0;
  EXPECT_GE(check_hecke_relations(tau).max_prime_power, 1.0);
}

TEST(HeckeCheck, UnitaryDelta) {
  auto tau = delta_coefficients(400);
  tau.normalization = Normalization::unitary;
  tau.exact.clear();
  for (std::size_t n = 1; n <= tau.count(); ++n) tau.values[n - 1] /= std::pow(Real(n), 5.5);
  const auto rep = check_hecke_relations(tau);
  EXPECT_EQ(rep.weight_exponent, 0.0);
  EXPECT_LT(rep.max_residual(), 1e-13);
}

TEST(MaassLoader, ParsesAndChecks) {
  const auto a = unitary_eisenstein(9.5, 200);
  std::istringstream in(maass_file_text("even", "hecke", a));
  const auto s = parse_maass_coefficients(in);
  ASSERT_EQ(s.count(), 200u);
  const auto& m = std::get<Maass>(s.spectral);
  EXPECT_EQ(m.lambda, Complex(0, 19.0));
  EXPECT_EQ(m.parity, 0);
  EXPECT_TRUE(s.hecke_normalized);
  ASSERT_TRUE(s.hecke_residual.has_value());
  EXPECT_LT(*s.hecke_residual, 1e-12);
  EXPECT_TRUE(s.warnings.empty());
}

TEST(MaassLoader, RealOnlyRows) {
  std::istringstream in("# R 13.779751351891\n# parity even\n# normalization hecke\n1 1\n2 1.549304\n3 0.246899\n");
  const auto s = parse_maass_coefficients(in);
  EXPECT_EQ(s.at(2), Complex(1.549304, 0));
  EXPECT_NEAR(std::get<Maass>(s.spectral).lambda.imag(), 2 * 13.779751351891, 1e-12);
}

TEST(MaassLoader, Errors) {
  std::istringstream empty("# R 9.5\n# parity even\n# normalization hecke\n");
  EXPECT_THROW(parse_maass_coefficients(empty), ParseError);
  std::istringstream gap("# R 9.5\n# parity even\n1 1\n3 0.5\n");
  EXPECT_THROW(parse_maass_coefficients(gap), ParseError);
  std::istringstream no_r("# parity even\n1 1\n");
  EXPECT_THROW(parse_maass_coefficients(no_r), ParseError);
  std::istringstream bad("# R 9.5\n# parity sideways\n1 1\n");
  EXPECT_THROW(parse_maass_coefficients(bad), ParseError);
  std::istringstream junk("# R 9.5\n# parity odd\n1 1x\n");
  EXPECT_THROW(parse_maass_coefficients(junk), ParseError);
  std::istringstream count("# R 9.5\n# parity odd\n# count 3\n1 1\n2 0.5\n");
  EXPECT_THROW(parse_maass_coefficients(count), ParseError);
  EXPECT_THROW(load_maass_coefficients("/nonexistent/automorph/maass.txt"), NotFoundError);
}

TEST(MaassLoader, NormalizationWarning) {
  auto a = unitary_eisenstein(9.5, 50);
  for (auto& v : a) v *= 1.7;
  std::istringstream in(maass_file_text("odd", "hecke", a));
  const auto s = parse_maass_coefficients(in);
  ASSERT_FALSE(s.warnings.empty());
  EXPECT_NE(s.warnings[0].find("normalization"), std::string::npos);
  // Relations are checked after dividing out a_1, so they still hold.
  EXPECT_LT(*s.hecke_residual, 1e-12);
}

TEST(MaassLoader, HeckeWarning) {
  auto a = unitary_eisenstein(9.5, 50);
  a[5] += 0.01;
  std::istringstream in(maass_file_text("even", "hecke", a));
  const auto s = parse_maass_coefficients(in);
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_NE(s.warnings[0].find("hecke"), std::string::npos);
}

TEST(Cache, RoundTripExact) {
  const auto dir = scratch_dir("exact");
  const auto tau = delta_coefficients(10000);
  cache_store(tau, dir, "delta");
  const auto back = cache_load(dir, "delta");
  ASSERT_EQ(back.count(), tau.count());
  EXPECT_EQ(back.exact, tau.exact);
  EXPECT_EQ(back.values, tau.values);
  EXPECT_EQ(back.normalization, tau.normalization);
  EXPECT_EQ(std::get<Holomorphic>(back.spectral).weight, 12);
}

TEST(Cache, RoundTripComplex) {
  const auto dir = scratch_dir("complex");
  auto a = divisor_power_coeffs(Complex(0.1, 1.0 / 3.0), 500);
  a.scale = Complex(1.0 / 7.0, -1e-300);
  cache_store(a, dir, "div");
  const auto back = cache_load(dir, "div");
  EXPECT_EQ(back.values, a.values);
  EXPECT_EQ(back.scale, a.scale);
  EXPECT_EQ(*back.constant_term, *a.constant_term);
  EXPECT_EQ(std::get<Maass>(back.spectral).lambda, Complex(0.1, 1.0 / 3.0));
  EXPECT_FALSE(std::get<Maass>(back.spectral).cuspidal);

  auto g = zero_series(make_gl4({Complex(0.25, 1), Complex(-0.25, -1), 0, 0}, {1, 0, 1, 0}), 3);
  g.values = {1.0, Complex(0.5, 0.25), -3.0};
  cache_store(g, dir, "gl4");
  const auto gb = cache_load(dir, "gl4");
  EXPECT_EQ(gb.values, g.values);
  EXPECT_EQ(std::get<GL4>(gb.spectral).eta, (std::array<int, 4>{1, 0, 1, 0}));
  EXPECT_EQ(std::get<GL4>(gb.spectral).mu[0], Complex(0.25, 1));
}

TEST(Cache, PoleFlagSurvives) {
  const auto dir = scratch_dir("pole");
  cache_store(divisor_power_coeffs(1.0, 10), dir, "p");
  EXPECT_TRUE(cache_load(dir, "p").constant_term_pole);
}

TEST(Cache, CorruptionDetected) {
  const auto dir = scratch_dir("corrupt");
  const auto path = cache_store(delta_coefficients(20), dir, "delta");
  std::string text;
  {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    text = s.str();
  }
  const auto pos = text.find("4830");
  ASSERT_NE(pos, std::string::npos);
  text[pos] = '5';
  std::ofstream(path) << text;
  EXPECT_THROW(cache_load(dir, "delta"), ChecksumError);
}

TEST(Cache, VersionAndMissing) {
  const auto dir = scratch_dir("version");
  const auto path = cache_store(delta_coefficients(5), dir, "delta");
  std::string text;
  {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    text = s.str();
  }
  text.replace(text.find("v1"), 2, "v9");
  std::ofstream(path) << text;
  EXPECT_THROW(cache_load(dir, "delta"), VersionError);
  EXPECT_THROW(cache_load(dir, "absent"), NotFoundError);
}
