#include <gtest/gtest.h>

#include <random>

#include "automorph/gamma_factors.hpp"

using namespace automorph;

namespace {

Real rel(Complex a, Complex b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), Real(1e-300)}); }

// Direct transcription of the cos / sin closed forms.
Complex g_closed(int eta, Complex s) {
  const Complex base = 2.0 * numerics::complex_gamma(s) * std::exp(-s * std::log(kTwoPi));
  return eta ? Complex(0, 1) * base * std::sin(kPi * s / 2.0) : base * std::cos(kPi * s / 2.0);
}

std::array<Complex, 4> random_mu(std::mt19937_64& rng) {
  std::uniform_real_distribution<Real> u(-0.4, 0.4), v(-3, 3);
  std::array<Complex, 4> mu;
  Complex sum = 0;
  for (int j = 0; j < 3; ++j) sum += (mu[j] = Complex(u(rng), v(rng)));
  mu[3] = -sum;
  return mu;
}

std::array<int, 4> random_eta(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::array<int, 4> eta{bit(rng), bit(rng), bit(rng), 0};
  eta[3] = (eta[0] + eta[1] + eta[2]) % 2;
  return eta;
}

}  // namespace

TEST(GEta, Values) {
  EXPECT_EQ(g_eta(0, 1.0), Complex(0.0));
  EXPECT_LT(std::abs(g_eta(0, 0.5) - 1.0), 1e-15);
  EXPECT_LT(std::abs(g_eta(1, 0.5) - Complex(0, 1)), 1e-15);
  EXPECT_EQ(g_eta(1, 2.0), Complex(0.0));
  EXPECT_THROW(g_eta(0, 0.0), PoleError);
  EXPECT_THROW(g_eta(0, -2.0), PoleError);
  EXPECT_THROW(g_eta(1, -1.0), PoleError);
  // Removable: Gamma has a pole at -1 but cos(-pi/2) = 0.
  EXPECT_NO_THROW(g_eta(0, -1.0));
  // Limit of the closed form: residue of Gamma at -1 times the slope of cos.
  EXPECT_LT(rel(g_eta(0, -1.0), -2.0 * kPi * kPi), 1e-14);
}

TEST(GEta, MatchesClosedForm) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<Real> re(-4, 4), im(-8, 8);
  for (int i = 0; i < 300; ++i) {
    const Complex s(re(rng), im(rng));
    for (int eta : {0, 1}) EXPECT_LT(rel(g_eta(eta, s), g_closed(eta, s)), 1e-12) << s;
  }
}

TEST(GEta, Reflection) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<Real> re(-4, 4), im(-6, 6);
  Real worst = 0;
  int n = 0;
  while (n < 1000) {
    const Complex s(re(rng), im(rng));
    if (std::abs(s.imag()) < 0.05) continue;  // stay off poles and zeros
    ++n;
    for (int d : {0, 1}) {
      const Complex prod = g_eta(d, s) * g_eta(d, 1.0 - s);
      worst = std::max(worst, std::abs(prod - Real(d ? -1 : 1)));
    }
  }
  EXPECT_LT(worst, 1e-11);
}

TEST(ArtinFactors, Values) {
  EXPECT_LT(std::abs(gamma_r(1.0) - 1.0), 1e-15);
  EXPECT_LT(std::abs(gamma_c(1.0) - 1.0 / kPi), 1e-15);
  const Complex s(0.7, 0.3);
  EXPECT_LT(rel(gamma_c(s), gamma_r(s) * gamma_r(s + 1.0)), 1e-12);
  EXPECT_THROW(gamma_r(-2.0), PoleError);
  EXPECT_NO_THROW(gamma_r(-1.0));
  EXPECT_THROW(gamma_c(-1.0), PoleError);
}

TEST(Expr, FourthRootSigns) {
  GammaFactorExpr e;
  e.quarter_turns = 3;
  EXPECT_EQ(e.sign(), Complex(0, -1));
  EXPECT_EQ(e.inverse().sign(), Complex(0, 1));
  EXPECT_EQ((e * e).sign(), Complex(-1, 0));
}

TEST(Expr, PoleAttribution) {
  GammaFactorExpr e;
  e.atoms.push_back(gamma_c_atom(0.5));
  e.atoms.push_back(g_atom(0, -0.25));
  try {
    e.evaluate(0.25);
    FAIL();
  } catch (const PoleError& err) {
    EXPECT_NE(std::string(err.what()).find("G_0(s + (-0.25,0))"), std::string::npos) << err.what();
  }
}

TEST(Expr, ReflectAndInvert) {
  GammaFactorExpr e;
  e.atoms = {gamma_r_atom(Complex(0.3, 1)), g_atom(1, 0.2)};
  const Complex s(0.37, 2.1);
  EXPECT_LT(rel(e.reflected().evaluate(s), e.evaluate(1.0 - s)), 1e-15);
  EXPECT_LT(std::abs(e.inverse().evaluate(s) * e.evaluate(s) - 1.0), 1e-14);
}

TEST(Linfty, ModularCase) {
  const auto e = linfty_product(Holomorphic{12, true}, Holomorphic{12, true});
  const Complex s(0.3, 2);
  EXPECT_LT(rel(e.evaluate(s), gamma_c(s + 11.0) * gamma_c(s)), 1e-15);
  EXPECT_EQ(e.describe(), "Gamma_C(s + (11,0)) * Gamma_C(s)");
  const auto f = linfty_product(Holomorphic{12, true}, Holomorphic{16, true});
  EXPECT_LT(rel(f.evaluate(s), gamma_c(s + 13.0) * gamma_c(s + 2.0)), 1e-15);
}

TEST(Linfty, MaassCase) {
  const auto e = linfty_product(Maass{0.0, 0}, Maass{0.0, 0});
  const Complex s(0.6, -1.1);
  EXPECT_LT(rel(e.evaluate(s), std::pow(gamma_r(s), 4)), 1e-14);
  const auto odd = linfty_product(Maass{Complex(0, 2), 1}, Maass{Complex(0, 3), 0});
  Complex want = 1;
  for (Real e1 : {1.0, -1.0})
    for (Real e2 : {1.0, -1.0}) want *= gamma_r(s + e1 * Complex(0, 1) + e2 * Complex(0, 1.5) + 1.0);
  EXPECT_LT(rel(odd.evaluate(s), want), 1e-14);
  EXPECT_THROW(linfty_product(GL4{}, Maass{}), DomainError);
}

TEST(Linfty, MixedCase) {
  const auto e = linfty_product(Maass{Complex(0, 0.4), 0}, Holomorphic{12, true});
  const Complex s(0.5, 0.9);
  EXPECT_LT(rel(e.evaluate(s), gamma_c(s + Complex(5.5, 0.2)) * gamma_c(s + Complex(5.5, -0.2))), 1e-15);
  const auto swapped = linfty_product(Holomorphic{12, true}, Maass{Complex(0, 0.4), 0});
  EXPECT_LT(rel(e.evaluate(s), swapped.evaluate(s)), 1e-15);
}

TEST(Prop1, Values) {
  EXPECT_LT(std::abs(prop1_ratio(0.5, 0.0, 0.0, 0, 0) - 1.0), 1e-14);
  const Complex s(0.3, 0.1), l1(0.2), l2(0, 0.5);
  for (int d : {0, 1}) {
    const Complex prod = prop1_ratio(s, l1, l2, d, d) * prop1_ratio(1.0 - s, l1, l2, d, d);
    EXPECT_LT(std::abs(prod - 1.0), 1e-10);
    Complex direct = 1;
    for (Real e1 : {1.0, -1.0})
      for (Real e2 : {1.0, -1.0}) direct *= g_eta(2 * d, s + e1 * l1 / 2.0 + e2 * l2 / 2.0);
    EXPECT_LT(rel(prop1_ratio(s, l1, l2, d, d), direct), 1e-15);
  }
}

TEST(Prop1, ReflectionRandom) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<Real> re(-2, 3), im(-5, 5), lam(0, 12);
  Real worst = 0;
  for (int i = 0; i < 500; ++i) {
    const Complex s(re(rng), im(rng)), l1(0, lam(rng)), l2(0, lam(rng));
    for (int d1 : {0, 1})
      for (int d2 : {0, 1}) worst = std::max(worst, std::abs(prop1_ratio(s, l1, l2, d1, d2) * prop1_ratio(1.0 - s, l1, l2, d1, d2) - 1.0));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Prop1, UnitModulusOnCriticalLine) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<Real> t(-20, 20), lam(0, 15);
  Real worst = 0;
  for (int i = 0; i < 500; ++i) {
    const Complex s(0.5, t(rng));
    for (int d : {0, 1}) worst = std::max(worst, std::abs(std::abs(prop1_ratio(s, Complex(0, lam(rng)), Complex(0, lam(rng)), d, d)) - 1.0));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Prop1, CompletedSignIsConstant) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<Real> re(-1.5, 2.5), im(-6, 6);
  const std::vector<std::pair<SpectralData, SpectralData>> cases{
      {Maass{Complex(0, 9.53), 0}, Maass{Complex(0, 13.78), 0}},
      {Maass{Complex(0, 9.53), 1}, Maass{Complex(0, 13.78), 0}},
      {Maass{Complex(0, 9.53), 1}, Maass{Complex(0, 13.78), 1}},
      {Maass{Complex(0, 9.53), 0}, Holomorphic{12, true}},
      {Maass{Complex(0, 9.53), 1}, Holomorphic{12, true}},
      {Holomorphic{12, true}, Holomorphic{12, true}},
      {Holomorphic{12, true}, Holomorphic{18, true}},
  };
  for (const auto& [a, b] : cases) {
    const Complex first = completed_rs_sign(a, b, Complex(0.3, 1.7));
    EXPECT_LT(std::abs(std::abs(first) - 1.0), 1e-9);
    for (int i = 0; i < 50; ++i) {
      const Complex s(re(rng), im(rng));
      EXPECT_LT(std::abs(completed_rs_sign(a, b, s) - first), 1e-9) << s;
    }
  }
}

TEST(Prop1, HolomorphicAsPrincipalSeries) {
  const auto p = principal_series(Holomorphic{12, true});
  EXPECT_EQ(p.lambda, Complex(-11.0));
  EXPECT_EQ(p.delta, 0);
  // Phi(s) for (Delta, Delta) equals L_inf(s) / L_inf(1 - s) with the Gamma_C factors.
  const Complex s(0.6, 0.4);
  const Complex via_linf = gamma_c(s + 11.0) * gamma_c(s) / (gamma_c(12.0 - s) * gamma_c(1.0 - s));
  EXPECT_LT(rel(prop1_expr(Holomorphic{12, true}, Holomorphic{12, true}).evaluate(s), via_linf), 1e-12);
}

TEST(Prop2, Values) {
  const std::array<Complex, 4> zero{};
  EXPECT_LT(std::abs(prop2_ratio(0.5, zero, {0, 0, 0, 0}) - 1.0), 1e-14);
  EXPECT_LT(std::abs(lemma1_gamma_product(0.5, zero, {0, 0, 0, 0}) - 2.0), 1e-14);
  const std::array<Complex, 4> mu{Complex(0.1, 1), Complex(-0.2, 0.5), Complex(0.05, -2), Complex(0.05, 0.5)};
  const Complex s(0.8, 0.3);
  const Complex flipped = lemma1_gamma_product(s, mu, {0, 1, 1, 0});
  EXPECT_LT(rel(flipped, -2.0 * g_eta(1, s - mu[0] - mu[1]) * g_eta(1, s - mu[0] - mu[2])), 1e-15);
  EXPECT_THROW(prop2_ratio(s, {Complex(1), 0, 0, 0}, {0, 0, 0, 0}), DomainError);
  EXPECT_THROW(prop2_ratio(s, zero, {1, 0, 0, 0}), DomainError);
  EXPECT_THROW(lemma1_gamma_product(s, zero, {1, 1, 1, 0}), DomainError);
}

TEST(Prop2, ProductOverPairs) {
  const std::array<Complex, 4> mu{Complex(0.1, 1), Complex(-0.2, 0.5), Complex(0.05, -2), Complex(0.05, 0.5)};
  const std::array<int, 4> eta{1, 0, 1, 0};
  const Complex s(0.8, 0.3);
  Complex direct = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) direct *= g_closed((eta[i] + eta[j]) % 2, s - mu[i] - mu[j]);
  EXPECT_LT(rel(prop2_ratio(s, mu, eta), direct), 1e-12);
}

TEST(Prop2, ReflectionRandom) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<Real> re(-1, 2), im(-4, 4);
  Real worst = 0;
  for (int i = 0; i < 100; ++i) {
    const auto mu = random_mu(rng);
    const auto eta = random_eta(rng);
    const Complex s(re(rng), im(rng));
    worst = std::max(worst, std::abs(prop2_ratio(s, mu, eta) * prop2_ratio(1.0 - s, mu, eta) - 1.0));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Prop2, ConsistencyWithLemma) {
  std::mt19937_64 rng(78);
  std::uniform_real_distribution<Real> re(-1, 2), im(-4, 4);
  Real worst = 0;
  for (int i = 0; i < 100; ++i) {
    const auto mu = random_mu(rng);
    const auto eta = random_eta(rng);
    const Complex s(re(rng), im(rng));
    worst = std::max(worst, prop2_consistency(s, mu, eta).rel_residual);
  }
  EXPECT_LT(worst, 1e-9);
}
