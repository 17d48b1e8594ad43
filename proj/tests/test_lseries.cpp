#include <gtest/gtest.h>

#include "automorph/lseries.hpp"

using namespace automorph;
using namespace automorph::lseries;

namespace {

Real rel(Complex a, Complex b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), Real(1e-300)}); }

const CoefficientSeries& delta() {
  static const CoefficientSeries d = delta_coefficients(20000);
  return d;
}

// (2 pi)^{-w} Gamma(w)
Complex hecke_gamma(Complex w) { return std::exp(-w * std::log(kTwoPi)) * numerics::complex_gamma(w); }

}  // namespace

TEST(Dirichlet, DeltaMatchesIncompleteGammaRoute) {
  for (Complex s : {Complex(1.5, 0.0), Complex(2.0, 3.0), Complex(3.0, -7.0)}) {
    const auto d = dirichlet_eval(standard(delta()), s, 20000);
    EXPECT_TRUE(d.flags.empty());
    const Complex w = s + 5.5;
    const Complex via_lambda = completed_hecke_l(delta(), w).value / hecke_gamma(w);
    EXPECT_LE(std::abs(d.value - via_lambda), d.error + 1e-13 * std::abs(via_lambda)) << s;
  }
}

TEST(Dirichlet, TailBoundHolds) {
  const Complex s(1.3, 2.0);
  const auto coarse = dirichlet_eval(standard(delta()), s, 200);
  const auto fine = dirichlet_eval(standard(delta()), s, 20000);
  EXPECT_LE(std::abs(coarse.value - fine.value), coarse.error);
  EXPECT_LT(fine.error, coarse.error);
}

TEST(Dirichlet, TailBoundClosedForm) {
  // sigma int_N^inf (1 + log t) t^{-sigma} dt by quadrature
  const Real sigma = 1.7;
  const std::size_t N = 50;
  const auto q = numerics::integrate_adaptive([&](Real t) { return (1.0 + std::log(t)) * std::pow(t, -sigma); },
                                              Real(N), INFINITY, 1e-13);
  EXPECT_NEAR(divisor_tail_bound(N, sigma, 1), sigma * q.value.real(), 1e-10);
  EXPECT_TRUE(std::isinf(divisor_tail_bound(N, 1.0, 1)));
}

TEST(Dirichlet, DivisorSeriesIsZetaProduct) {
  const Complex nu(0.5, 1.0);
  const auto series = divisor_power_coeffs(nu, 20000);
  for (Complex s : {Complex(2.0, 0.0), Complex(3.0, 5.0)}) {
    const auto d = dirichlet_eval(standard(series), s, 20000);
    const Complex oracle = numerics::riemann_zeta(s) * numerics::riemann_zeta(s + nu);
    EXPECT_LE(std::abs(d.value - oracle), d.error + 1e-14);
  }
}

TEST(Dirichlet, RegionAndKindErrors) {
  EXPECT_THROW(dirichlet_eval(standard(delta()), Complex(1.0, 2.0), 1000), DomainError);
  EXPECT_THROW(dirichlet_eval(standard(eisenstein_qcoeffs(12, 1000)), 6.0, 1000), DomainError);
  EXPECT_NO_THROW(dirichlet_eval(standard(eisenstein_qcoeffs(12, 1000)), 7.0, 1000));
  CoefficientSeries gl4 = zero_series(GL4{}, 10);
  EXPECT_THROW(dirichlet_eval(standard(gl4), 3.0, 10), DomainError);
  EXPECT_THROW(rankin_selberg(eisenstein_qcoeffs(12, 10), eisenstein_qcoeffs(12, 10)), DomainError);
  EXPECT_THROW(rankin_selberg(delta(), eisenstein_qcoeffs(16, 10)), DomainError);
}

TEST(Dirichlet, MaassCuspBoundIsFlagged) {
  auto m = divisor_power_coeffs(Complex(0.0, 2.0), 100);
  m.spectral = Maass{Complex(0.0, 2.0), 0, true};
  const auto d = dirichlet_eval(standard(m), 3.0, 100);
  ASSERT_FALSE(d.flags.empty());
}

TEST(Dirichlet, RankinSelbergMatchesIntegralRoute) {
  const auto pair = rankin_selberg(delta(), delta());
  const Complex s(3.0, 1.0);
  const auto d = dirichlet_eval(pair, s, 20000);
  const auto i = rankin_selberg_l(pair, s);
  EXPECT_LT(rel(d.value, i.value), 1e-7);
  EXPECT_LE(std::abs(d.value - i.value), d.error + i.error);
}

TEST(Dirichlet, MeanValueTailNearEdge) {
  const auto pair = rankin_selberg(delta(), delta());
  const auto plain = dirichlet_eval(pair, 2.0, 20000);
  const auto corrected = dirichlet_eval(pair, 2.0, 20000, TailModel::mean_value);
  const auto reference = rankin_selberg_l(pair, 2.0);
  EXPECT_LT(rel(corrected.value, reference.value), rel(plain.value, reference.value));
  EXPECT_LT(rel(corrected.value, reference.value), 1e-6);
  EXPECT_EQ(corrected.flags.size(), 1u);
}

TEST(CompletedHecke, FunctionalEquation) {
  // Lambda decays like e^{-pi |Im w| / 2}; residuals are measured against the largest value.
  std::vector<Real> residuals;
  Real scale = 0.0;
  for (Complex w : {Complex(6.0, 0.0), Complex(4.2, 3.0), Complex(7.5, -9.0), Complex(-3.0, 1.0), Complex(6.0, 25.0)}) {
    const auto a = completed_hecke_l(delta(), w, 1.0);
    const auto b = completed_hecke_l(delta(), 12.0 - w, 1.25);
    residuals.push_back(std::abs(a.value - b.value));
    scale = std::max(scale, std::abs(a.value));
  }
  for (Real r : residuals) EXPECT_LT(r, 1e-12 * scale);
}

TEST(CompletedHecke, SplitIndependence) {
  const Complex w(5.0, 2.0);
  const Complex v = completed_hecke_l(delta(), w, 1.0).value;
  for (Real A : {0.8, 1.3, 2.0}) EXPECT_LT(rel(completed_hecke_l(delta(), w, A).value, v), 1e-13);
}

TEST(CompletedHecke, NormalizationsAgree) {
  CoefficientSeries u = delta();
  u.values.resize(200);
  u.exact.clear();
  for (std::size_t n = 1; n <= 200; ++n) u.values[n - 1] *= std::pow(Real(n), -5.5);
  u.normalization = Normalization::unitary;
  const Complex w(6.0, 1.0);
  EXPECT_LT(rel(completed_hecke_l(u, w).value, completed_hecke_l(delta(), w).value), 1e-13);
}

TEST(CompletedHecke, EntireAcrossGammaPoles) {
  // Cauchy's theorem on a circle around w = 0 and w = -1.
  const int M = 64;
  Complex integral = 0.0;
  Real scale = 0.0;
  for (int j = 0; j < M; ++j) {
    const Complex u = std::polar(1.0, kTwoPi * j / M);
    const Complex w = -0.5 + 1.5 * u;
    const Complex v = completed_hecke_l(delta(), w).value;
    integral += v * u;
    scale = std::max(scale, std::abs(v));
  }
  EXPECT_LT(std::abs(integral) / M, 1e-12 * scale);
  EXPECT_TRUE(numerics::is_finite(completed_hecke_l(delta(), 0.0).value));
}

TEST(CompletedHecke, Errors) {
  EXPECT_THROW(completed_hecke_l(eisenstein_qcoeffs(12, 100), 6.0), DomainError);
  EXPECT_THROW(completed_hecke_l(delta(), 6.0, 0.0), DomainError);
  const auto short_series = completed_hecke_l(delta_coefficients(3), 6.0);
  EXPECT_FALSE(short_series.flags.empty());
}

TEST(CompletedMaass, EisensteinClosedForm) {
  // Lambda(s, E_t) = 1/2 xi(s + 1/2 - t) xi(s - 1/2 + t)
  for (Complex t : {Complex(0.5, 4.0), Complex(0.5, 9.5), Complex(0.8, 2.0)}) {
    const auto [series, constant] = eisenstein_as_maass(t, 200);
    for (Complex s : {Complex(0.5, 1.0), Complex(0.3, -2.5), Complex(2.0, 0.5), Complex(-1.0, 3.0)}) {
      const auto r = completed_maass_l(series, s, 1e-13, constant);
      const Complex oracle =
          0.5 * numerics::completed_zeta(s + 0.5 - t) * numerics::completed_zeta(s - 0.5 + t);
      EXPECT_LT(rel(r.value, oracle), 1e-10) << "t=" << t << " s=" << s;
      EXPECT_TRUE(r.flags.empty());
    }
  }
}

TEST(CompletedMaass, MatchesDirichletRoute) {
  const Complex t(0.5, 4.0);
  const auto [series, constant] = eisenstein_as_maass(t, 20000);
  const Complex s(3.0, 1.0);
  const auto a = completed_maass_l(series, s, 1e-13, constant);
  const auto b = maass_dirichlet_completed(series, s, 20000);
  EXPECT_LT(rel(a.value, b.value), 1e-7);
}

TEST(CompletedMaass, FunctionalEquation) {
  const auto [series, constant] = eisenstein_as_maass(Complex(0.5, 6.0), 200);
  FEInputs in;
  in.f = series;
  in.constant = constant;
  in.tol = 1e-13;
  const auto r = fe_residual(FEKind::maass, in, Complex(0.25, 3.0));
  EXPECT_LT(r.rel_residual, 1e-12);
  EXPECT_NE(r.gamma_expr_used.describe(), "1");
}

TEST(CompletedMaass, TruncationFlagged) {
  const auto [series, constant] = eisenstein_as_maass(Complex(0.5, 20.0), 2);
  const auto r = completed_maass_l(series, 0.5, 1e-13, constant);
  ASSERT_FALSE(r.flags.empty());
}

TEST(CompletedMaass, Errors) {
  const auto [series, constant] = eisenstein_as_maass(Complex(0.5, 3.0), 50);
  EXPECT_THROW(completed_maass_l(series, 0.5), DomainError);
  EXPECT_THROW(completed_maass_l(delta(), 0.5), DomainError);
}

TEST(RankinSelbergL, Poles) {
  const auto pair = rankin_selberg(delta(), delta());
  EXPECT_THROW(rankin_selberg_l(pair, 1.0), PoleError);
  EXPECT_THROW(rankin_selberg_l(pair, 0.0), DomainError);
  const auto near = rankin_selberg_l(pair, 1.005);
  EXPECT_FALSE(near.flags.empty());
  EXPECT_THROW(rankin_selberg_l(standard(delta()), 2.0), DomainError);
}

TEST(RankinSelbergL, CuspidalMemberFirst) {
  const auto pair = rankin_selberg(eisenstein_qcoeffs(12, 300), delta());
  EXPECT_TRUE(std::get<Holomorphic>(pair.series.spectral).cuspidal);
}

TEST(FunctionalEquations, AllKindsOnDelta) {
  FEInputs in;
  in.f = delta();
  in.g = delta();
  const Complex s(0.3, 2.0);
  EXPECT_LT(fe_residual(FEKind::rankin_selberg, in, s).rel_residual, 1e-6);
  EXPECT_LT(fe_residual(FEKind::prop1, in, s).rel_residual, 1e-6);
  EXPECT_LT(fe_residual(FEKind::completed, in, s).rel_residual, 1e-6);
  in.lhs_split = 1.0;
  in.rhs_split = 1.25;
  const auto h = fe_residual(FEKind::hecke, in, Complex(5.0, 4.0));
  EXPECT_LT(h.rel_residual, 1e-12);
  EXPECT_EQ(std::string(to_string(h.kind)), "hecke");
}

TEST(FunctionalEquations, MissingInputs) {
  FEInputs in;
  EXPECT_THROW(fe_residual(FEKind::hecke, in, 2.0), DomainError);
  in.f = delta();
  EXPECT_THROW(fe_residual(FEKind::prop1, in, 0.3), DomainError);
}

TEST(PoleAudit, OnlyPoleInCriticalRangeIsAtOne) {
  // 1/I(s) on a real grid: a pole is a smooth sign change of 1/I through 0.
  std::vector<Real> grid, inv;
  for (Real s = 0.05; s < 1.999; s += 0.1) {
    grid.push_back(s);
    inv.push_back(1.0 / eisenstein::rankin_selberg_integral(delta(), delta(), s).value.real());
  }
  std::vector<Real> poles;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if ((inv[i] < 0) == (inv[i + 1] < 0)) continue;
    // secant root of 1/I
    Real a = grid[i], b = grid[i + 1], fa = inv[i], fb = inv[i + 1];
    for (int it = 0; it < 30 && std::abs(b - a) > 1e-9; ++it) {
      const Real c = b - fb * (b - a) / (fb - fa);
      if (std::abs(c - 1.0) < 1e-7) {
        b = c;
        break;
      }
      const Real fc = 1.0 / eisenstein::rankin_selberg_integral(delta(), delta(), c).value.real();
      a = b;
      fa = fb;
      b = c;
      fb = fc;
    }
    poles.push_back(b);
  }
  ASSERT_EQ(poles.size(), 1u);
  EXPECT_NEAR(poles[0], 1.0, 1e-4);
}
