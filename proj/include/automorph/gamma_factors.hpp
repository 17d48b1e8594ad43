#pragma once

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "automorph/coefficients/spectral.hpp"
#include "automorph/numerics/gamma.hpp"

namespace automorph {

using numerics::kPi;
using numerics::kTwoPi;

// Gamma_R(s) = pi^{-s/2} Gamma(s/2).
inline Complex gamma_r(Complex s) {
  numerics::detail::check_gamma_pole(s / 2.0, "gamma_r");
  return std::exp(-0.5 * s * std::log(kPi)) * numerics::complex_gamma(s / 2.0);
}

// Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s).
inline Complex gamma_c(Complex s) {
  numerics::detail::check_gamma_pole(s, "gamma_c");
  return 2.0 * std::exp(-s * std::log(kTwoPi)) * numerics::complex_gamma(s);
}

// G_eta(s) = int_R e(x) (sgn x)^eta |x|^{s-1} dx, continued meromorphically:
//   G_0(s) = 2 Gamma(s) (2 pi)^{-s} cos(pi s / 2)
//   G_1(s) = 2i Gamma(s) (2 pi)^{-s} sin(pi s / 2)
// Evaluated as i^eta Gamma_R(s + eta) / Gamma_R(1 - s + eta), which keeps the
// removable singularities removable and the zeros exact.
inline Complex g_eta(int eta, Complex s) {
  eta = ((eta % 2) + 2) % 2;
  const Complex a = s + Real(eta), b = 1.0 - s + Real(eta);
  long n = 0;
  if (numerics::near_integer(a / 2.0, 0.0, &n) && n <= 0) {
    throw PoleError("G_" + std::to_string(eta) + " has a pole at s = " + std::to_string(2 * n - eta));
  }
  const Complex ratio = std::exp(0.5 * (b - a) * std::log(kPi)) * numerics::complex_gamma(a / 2.0) *
                        numerics::reciprocal_gamma(b / 2.0);
  return eta ? Complex(0, 1) * ratio : ratio;
}

enum class AtomKind { g_eta, gamma_r, gamma_c, constant };

// One factor f(sign * s + shift)^power.
struct GammaAtom {
  AtomKind kind = AtomKind::constant;
  int eta = 0;
  Complex shift{0, 0};
  int s_sign = 1;
  int power = 1;
  Complex value{1, 0};  // for constants

  Complex argument(Complex s) const { return Real(s_sign) * s + shift; }

  std::string describe() const {
    std::ostringstream out;
    out.precision(12);
    if (kind == AtomKind::constant) {
      out << value;
    } else {
      out << (kind == AtomKind::g_eta ? "G_" + std::to_string(eta) : kind == AtomKind::gamma_r ? "Gamma_R" : "Gamma_C");
      out << '(' << (s_sign < 0 ? "-s" : "s");
      if (shift != Complex(0)) out << " + " << shift;
      out << ')';
    }
    if (power != 1) out << '^' << power;
    return out.str();
  }

  Complex evaluate(Complex s) const {
    Complex v;
    try {
      switch (kind) {
        case AtomKind::g_eta: v = g_eta(eta, argument(s)); break;
        case AtomKind::gamma_r: v = gamma_r(argument(s)); break;
        case AtomKind::gamma_c: v = gamma_c(argument(s)); break;
        case AtomKind::constant: v = value; break;
      }
    } catch (const PoleError& e) {
      throw PoleError("factor " + describe() + ": " + e.what());
    }
    if (power == 1) return v;
    if (power == -1) {
      if (v == Complex(0)) throw PoleError("factor " + describe() + ": zero in a denominator");
      return 1.0 / v;
    }
    return std::pow(v, power);
  }
};

// Product of atoms times an exact fourth root of unity i^quarter_turns.
struct GammaFactorExpr {
  std::vector<GammaAtom> atoms;
  int quarter_turns = 0;

  Complex sign() const {
    static constexpr std::array<Complex, 4> roots{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    return roots[((quarter_turns % 4) + 4) % 4];
  }

  Complex evaluate(Complex s) const {
    Complex v = sign();
    for (const auto& a : atoms) v *= a.evaluate(s);
    return v;
  }

  std::string describe() const {
    std::string out = quarter_turns % 4 == 0 ? "" : "i^" + std::to_string(((quarter_turns % 4) + 4) % 4) + " * ";
    for (std::size_t i = 0; i < atoms.size(); ++i) out += (i ? " * " : "") + atoms[i].describe();
    return out.empty() ? "1" : out;
  }

  GammaFactorExpr& operator*=(const GammaFactorExpr& other) {
    atoms.insert(atoms.end(), other.atoms.begin(), other.atoms.end());
    quarter_turns = (quarter_turns + other.quarter_turns) % 4;
    return *this;
  }

  // f(1 - s) as an expression in s.
  GammaFactorExpr reflected() const {
    GammaFactorExpr r = *this;
    for (auto& a : r.atoms) {
      if (a.kind == AtomKind::constant) continue;
      a.shift += Real(a.s_sign);
      a.s_sign = -a.s_sign;
    }
    return r;
  }

  GammaFactorExpr inverse() const {
    GammaFactorExpr r = *this;
    for (auto& a : r.atoms) a.power = -a.power;
    r.quarter_turns = (4 - quarter_turns % 4) % 4;
    return r;
  }
};

inline GammaFactorExpr operator*(GammaFactorExpr a, const GammaFactorExpr& b) { return a *= b; }

inline GammaAtom g_atom(int eta, Complex shift, int s_sign = 1) {
  return {AtomKind::g_eta, ((eta % 2) + 2) % 2, shift, s_sign, 1, {1, 0}};
}
inline GammaAtom gamma_r_atom(Complex shift) { return {AtomKind::gamma_r, 0, shift, 1, 1, {1, 0}}; }
inline GammaAtom gamma_c_atom(Complex shift) { return {AtomKind::gamma_c, 0, shift, 1, 1, {1, 0}}; }
inline GammaAtom constant_atom(Complex c) { return {AtomKind::constant, 0, 0.0, 1, 1, c}; }

// GL(2) data as a principal series parameter (lambda, delta). A holomorphic
// form of weight k sits at lambda = 1 - k, delta = k mod 2.
struct PrincipalSeries {
  Complex lambda;
  int delta;
};

inline PrincipalSeries principal_series(const SpectralData& spectral) {
  if (const auto* h = std::get_if<Holomorphic>(&spectral)) return {Complex(1.0 - h->weight), h->weight % 2};
  if (const auto* m = std::get_if<Maass>(&spectral)) return {m->lambda, m->parity};
  throw DomainError("principal_series: GL(4) data has no GL(2) parameter");
}

// Archimedean factor L_infinity(s) of the Rankin-Selberg L-function of two
// GL(2) forms.
inline GammaFactorExpr linfty_product(const SpectralData& a, const SpectralData& b) {
  if (std::holds_alternative<GL4>(a) || std::holds_alternative<GL4>(b)) {
    throw DomainError("linfty_product: both forms must be GL(2)");
  }
  GammaFactorExpr e;
  const auto* ha = std::get_if<Holomorphic>(&a);
  const auto* hb = std::get_if<Holomorphic>(&b);
  if (ha && hb) {
    e.atoms.push_back(gamma_c_atom(Real(ha->weight + hb->weight) / 2 - 1));
    e.atoms.push_back(gamma_c_atom(Real(std::abs(ha->weight - hb->weight)) / 2));
    return e;
  }
  if (ha || hb) {
    const Maass& m = ha ? std::get<Maass>(b) : std::get<Maass>(a);
    const int k = ha ? ha->weight : hb->weight;
    e.atoms.push_back(gamma_c_atom(m.lambda / 2.0 + Real(k - 1) / 2));
    e.atoms.push_back(gamma_c_atom(-m.lambda / 2.0 + Real(k - 1) / 2));
    return e;
  }
  const Maass& ma = std::get<Maass>(a);
  const Maass& mb = std::get<Maass>(b);
  const int eta = (ma.parity + mb.parity) % 2;
  for (int e1 : {1, -1})
    for (int e2 : {1, -1}) e.atoms.push_back(gamma_r_atom(Real(e1) * ma.lambda / 2.0 + Real(e2) * mb.lambda / 2.0 + Real(eta)));
  return e;
}

// prod_{e1, e2 = +-1} G_{d1+d2}(s + e1 l1/2 + e2 l2/2), the factor relating
// L(1-s) to L(s) for the Rankin-Selberg L-function.
inline GammaFactorExpr prop1_expr(Complex l1, Complex l2, int d1, int d2) {
  GammaFactorExpr e;
  for (int e1 : {1, -1})
    for (int e2 : {1, -1}) e.atoms.push_back(g_atom(d1 + d2, Real(e1) * l1 / 2.0 + Real(e2) * l2 / 2.0));
  return e;
}

inline Complex prop1_ratio(Complex s, Complex l1, Complex l2, int d1, int d2) {
  return prop1_expr(l1, l2, d1, d2).evaluate(s);
}

inline GammaFactorExpr prop1_expr(const SpectralData& a, const SpectralData& b) {
  const auto pa = principal_series(a), pb = principal_series(b);
  return prop1_expr(pa.lambda, pb.lambda, pa.delta, pb.delta);
}

inline void check_gl4_parameters(const std::array<Complex, 4>& mu, const std::array<int, 4>& eta) {
  check_gl4(mu, eta);
}

// prod_{i<j} G_{eta_i+eta_j}(s - mu_i - mu_j).
inline GammaFactorExpr prop2_expr(const std::array<Complex, 4>& mu, const std::array<int, 4>& eta) {
  check_gl4_parameters(mu, eta);
  GammaFactorExpr e;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) e.atoms.push_back(g_atom(eta[i] + eta[j], -(mu[i] + mu[j])));
  return e;
}

inline Complex prop2_ratio(Complex s, const std::array<Complex, 4>& mu, const std::array<int, 4>& eta) {
  return prop2_expr(mu, eta).evaluate(s);
}

// 2 (-1)^{eta_2} G_{eta_1+eta_2}(s - mu_1 - mu_2) G_{eta_1+eta_3}(s - mu_1 - mu_3).
inline GammaFactorExpr lemma1_expr(const std::array<Complex, 4>& mu, const std::array<int, 4>& eta) {
  check_gl4_parameters(mu, eta);
  GammaFactorExpr e;
  e.atoms.push_back(constant_atom(2.0));
  e.quarter_turns = 2 * (eta[1] % 2);
  e.atoms.push_back(g_atom(eta[0] + eta[1], -(mu[0] + mu[1])));
  e.atoms.push_back(g_atom(eta[0] + eta[2], -(mu[0] + mu[2])));
  return e;
}

inline Complex lemma1_gamma_product(Complex s, const std::array<Complex, 4>& mu, const std::array<int, 4>& eta) {
  return lemma1_expr(mu, eta).evaluate(s);
}

struct IdentityResidual {
  Complex lhs, rhs;
  Real abs_residual = 0, rel_residual = 0;
};

inline IdentityResidual make_residual(Complex lhs, Complex rhs) {
  const Real abs = std::abs(lhs - rhs);
  return {lhs, rhs, abs, abs / std::max({std::abs(lhs), std::abs(rhs), Real(1e-300)})};
}

// Consistency of the exterior-square functional equation with its Gamma
// bookkeeping:
//   lemma1(s) = (-1)^{eta2+eta3} G_{eta1+eta4}(1-s-mu2-mu3) G_{eta2+eta3}(1-s-mu1-mu4)
//               * prop2(s) * lemma1(1-s).
inline IdentityResidual prop2_consistency(Complex s, const std::array<Complex, 4>& mu, const std::array<int, 4>& eta) {
  const Complex lhs = lemma1_gamma_product(s, mu, eta);
  const Real sign = ((eta[1] + eta[2]) % 2) ? -1.0 : 1.0;
  const Complex rhs = sign * g_eta(eta[0] + eta[3], 1.0 - s - mu[1] - mu[2]) * g_eta(eta[1] + eta[2], 1.0 - s - mu[0] - mu[3]) *
                      prop2_ratio(s, mu, eta) * lemma1_gamma_product(1.0 - s, mu, eta);
  return make_residual(lhs, rhs);
}

// L_inf(s) / (L_inf(1-s) * Phi(s)); a constant (the sign of the completed
// functional equation) wherever both sides are finite.
inline Complex completed_rs_sign(const SpectralData& a, const SpectralData& b, Complex s) {
  const GammaFactorExpr linf = linfty_product(a, b);
  return linf.evaluate(s) / (linf.evaluate(1.0 - s) * prop1_expr(a, b).evaluate(s));
}

}  // namespace automorph
