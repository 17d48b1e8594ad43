#include <gtest/gtest.h>

#include "automorph/eisenstein.hpp"

using namespace automorph;
using namespace automorph::eisenstein;

namespace {

Real rel(Complex a, Complex b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), Real(1e-300)}); }

const CoefficientSeries& delta() {
  static const CoefficientSeries d = delta_coefficients(20000);
  return d;
}

// 2^{1-k} (2 pi)^{1-k-2s} Gamma(s) Gamma(s+k-1) zeta(2s) sum tau(n)^2 n^{1-k-s}, truncated.
Complex rs_closed_form(const CoefficientSeries& F, Complex s, int k) {
  Complex sum = 0;
  for (std::size_t n = F.count(); n >= 1; --n) {
    const Real t = F.at(n).real();
    sum += t * t * numerics::real_power(Real(n), Real(1 - k) - s);
  }
  return std::pow(2.0, 1 - k) * std::exp((Real(1 - k) - 2.0 * s) * std::log(kTwoPi)) * numerics::complex_gamma(s) *
         numerics::complex_gamma(s + Real(k - 1)) * numerics::riemann_zeta(2.0 * s) * sum;
}

const std::vector<UpperHalfPoint>& sample_points() {
  static const std::vector<UpperHalfPoint> pts = {
      {0.0, 1.0},   {0.5, 0.8660254037844386}, {0.1, 1.2}, {-0.3, 1.5}, {0.25, 2.0},
      {-0.45, 0.95}, {0.4, 3.0},              {0.0, 0.6}, {0.7, 0.4}, {-1.3, 0.25}};
  return pts;
}

}  // namespace

TEST(Reduction, FixedPointStays) {
  const auto r = reduce_to_fundamental_domain({0.0, 1.0});
  EXPECT_EQ(r.reduced.x, 0.0);
  EXPECT_EQ(r.reduced.y, 1.0);
  EXPECT_EQ(r.matrix.det(), 1);
}

TEST(Reduction, TranslationOnly) {
  const auto r = reduce_to_fundamental_domain({5.0, 1.0});
  EXPECT_NEAR(r.reduced.x, 0.0, 1e-15);
  EXPECT_EQ(r.matrix.b, -5);
  EXPECT_EQ(r.matrix.c, 0);
}

TEST(Reduction, DeepPointLandsInDomain) {
  for (const auto& z : {UpperHalfPoint{0.1, 0.1}, UpperHalfPoint{0.377, 0.003}, UpperHalfPoint{-12.4, 0.07}}) {
    const auto r = reduce_to_fundamental_domain(z);
    EXPECT_EQ(r.matrix.det(), 1);
    EXPECT_LE(std::abs(r.reduced.x), 0.5 + 1e-12);
    EXPECT_GE(r.reduced.x * r.reduced.x + r.reduced.y * r.reduced.y, 1.0 - 1e-12);
    EXPECT_GE(r.reduced.y, z.y);
  }
}

TEST(Reduction, RejectsLowerHalfPlane) { EXPECT_THROW(make_point(0.0, -1.0), DomainError); }

TEST(DirectSum, ModularInvariance) {
  const Complex s(2.5, 0.7);
  const UpperHalfPoint z{0.23, 0.71};
  const auto base = eval_direct_sum(s, z);
  const auto shifted = eval_direct_sum(s, {z.x + 1.0, z.y});
  const Complex w = -1.0 / Complex(z.x, z.y);
  const auto inverted = eval_direct_sum(s, {w.real(), w.imag()});
  EXPECT_LT(rel(base.value, shifted.value), 1e-10);
  EXPECT_LT(rel(base.value, inverted.value), 1e-10);
}

TEST(DirectSum, RejectsOutsideRegion) {
  EXPECT_THROW(eval_direct_sum(1.0, {0.0, 1.0}), DomainError);
  EXPECT_THROW(eval_direct_sum(2.0, {0.0, 1.0}, 2), DomainError);
}

TEST(Expansion, MatchesDirectSum) {
  for (Real sigma : {2.0, 2.5, 3.0}) {
    for (const auto& z : sample_points()) {
      const Complex s(sigma, 1.3);
      const auto direct = eval_direct_sum(s, z);
      const auto expansion = eval_completed_eisenstein(s, z);
      EXPECT_LT(rel(direct.value, expansion.value), 1e-8) << "s=" << sigma << " z=" << z.x << "+" << z.y << "i";
    }
  }
}

TEST(Expansion, ScaleIsExact) { EXPECT_EQ(kExpansionScaleNum, kExpansionScaleDen); }

TEST(Expansion, FunctionalEquationOnCriticalLine) {
  for (Real t : {0.5, 3.0, 7.5}) {
    for (const auto& z : sample_points()) {
      const Complex s(0.5, t);
      const auto a = eval_completed_eisenstein(s, z);
      const auto b = eval_completed_eisenstein(1.0 - s, z);
      EXPECT_LT(rel(a.value, b.value), 1e-9);
    }
  }
}

TEST(Expansion, FunctionalEquationInStrip) {
  const UpperHalfPoint z{0.2, 1.1};
  for (Complex s : {Complex(0.2, 4.0), Complex(-0.7, 1.0), Complex(1.9, -2.5)}) {
    EXPECT_LT(rel(eval_completed_eisenstein(s, z).value, eval_completed_eisenstein(1.0 - s, z).value), 1e-9);
  }
}

TEST(Expansion, RemovablePointAtOneHalf) {
  const UpperHalfPoint z{0.1, 1.3};
  const Complex at = eval_completed_eisenstein(0.5, z).value;
  const Complex near = eval_completed_eisenstein(Complex(0.5, 1e-6), z).value;
  EXPECT_LT(rel(at, near), 1e-9);
}

TEST(Expansion, InvariantUnderReduction) {
  const Complex s(0.5, 6.0);
  for (const auto& z : {UpperHalfPoint{0.31, 0.05}, UpperHalfPoint{3.7, 0.3}}) {
    const auto r = reduce_to_fundamental_domain(z);
    const auto direct = eval_expansion(s, z, 1e-15);
    EXPECT_LT(rel(direct.value, eval_completed_eisenstein(s, r.reduced).value), 1e-12);
  }
}

TEST(Expansion, Poles) {
  EXPECT_THROW(eval_completed_eisenstein(1.0, {0.0, 1.0}), PoleError);
  EXPECT_THROW(eval_completed_eisenstein(0.0, {0.0, 1.0}), PoleError);
  EXPECT_EQ(residue_at_one(), 0.5);
  // (s - 1) E_s -> 1/2 at any point.
  const Real h = 1e-6;
  const Complex near = eval_completed_eisenstein(1.0 + h, {0.2, 1.4}).value * h;
  EXPECT_NEAR(near.real(), 0.5, 1e-5);
}

TEST(DivisorSigma, SmallValues) {
  EXPECT_LT(std::abs(divisor_sigma(12, 1.0) - 28.0), 1e-12);
  EXPECT_LT(std::abs(divisor_sigma(12, 0.0) - 6.0), 1e-12);
  EXPECT_LT(std::abs(divisor_sigma(7, -1.0) - (1.0 + 1.0 / 7.0)), 1e-15);
}

TEST(RankinSelberg, ClosedFormRightOfStrip) {
  for (Complex s : {Complex(2.5, 0.5), Complex(2.75, -1.0), Complex(3.0, 0.0)}) {
    const auto I = rankin_selberg_integral(delta(), delta(), s);
    EXPECT_LT(rel(I.value, rs_closed_form(delta(), s, 12)), 1e-6) << s;
  }
}

TEST(RankinSelberg, FunctionalEquationInStrip) {
  for (Complex s : {Complex(0.7, 0.5), Complex(0.3, 2.0), Complex(0.5, 4.0), Complex(0.1, -1.5), Complex(0.95, 0.0)}) {
    const auto a = rankin_selberg_integral(delta(), delta(), s);
    const auto b = rankin_selberg_integral(delta(), delta(), 1.0 - s);
    EXPECT_LT(rel(a.value, b.value), 1e-6) << s;
  }
}

TEST(RankinSelberg, ResidueIsHalfPeterssonNorm) {
  // <Delta, Delta> = 1.035362056804320922e-6
  const Real h = 1e-3;
  const Complex plus = rankin_selberg_integral(delta(), delta(), 1.0 + h).value;
  const Complex minus = rankin_selberg_integral(delta(), delta(), 1.0 - h).value;
  const Real residue = (0.5 * h * (plus - minus)).real();
  EXPECT_LT(std::abs(residue - 0.5 * 1.035362056804320922e-6) / (0.5 * 1.035362056804320922e-6), 1e-5);
}

TEST(RankinSelberg, ZeroFormGivesZero) {
  const auto z = zero_series(Holomorphic{12, true}, 100);
  EXPECT_EQ(rankin_selberg_integral(z, delta(), Complex(0.3, 1.0)).value, Complex(0.0));
}

TEST(RankinSelberg, EisensteinPartnerIsFinite) {
  const auto e12 = eisenstein_qcoeffs(12, 200);
  const auto I = rankin_selberg_integral(delta(), e12, Complex(2.5, 0.0));
  EXPECT_TRUE(numerics::is_finite(I.value));
  // Delta is orthogonal to E_12 only in the Petersson sense; the Dirichlet side
  // sum tau(n) sigma_11(n) n^{-11-s} is nonzero.
  EXPECT_GT(std::abs(I.value), 0.0);
}

TEST(RankinSelberg, Errors) {
  const auto e12 = eisenstein_qcoeffs(12, 200);
  EXPECT_THROW(rankin_selberg_integral(e12, delta(), 2.5), DomainError);
  EXPECT_THROW(rankin_selberg_integral(delta(), eisenstein_qcoeffs(16, 200), 2.5), DomainError);
  EXPECT_THROW(rankin_selberg_integral(delta(), delta(), 1.0), PoleError);
  EXPECT_THROW(rankin_selberg_integral(delta_coefficients(5), delta(), 2.5), DomainError);
}
