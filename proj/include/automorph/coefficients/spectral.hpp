#pragma once

#include <array>
#include <cmath>
#include <string>
#include <variant>

#include "automorph/errors.hpp"
#include "automorph/numerics/types.hpp"

namespace automorph {

using numerics::Complex;
using numerics::Real;

// Holomorphic modular form of even weight for SL(2,Z).
struct Holomorphic {
  int weight = 12;
  bool cuspidal = true;
};

// Maass form (or Eisenstein series when not cuspidal) with spectral
// parameter lambda; for a cusp form of Laplace eigenvalue 1/4 + R^2,
// lambda = 2iR.
struct Maass {
  Complex lambda{0.0, 0.0};
  int parity = 0;
  bool cuspidal = true;
};

struct GL4 {
  std::array<Complex, 4> mu{};
  std::array<int, 4> eta{};
};

using SpectralData = std::variant<Holomorphic, Maass, GL4>;

inline Holomorphic make_holomorphic(int weight, bool cuspidal = true) {
  if (weight < 4 || weight % 2 != 0) throw DomainError("holomorphic weight must be even and at least 4");
  return {weight, cuspidal};
}

inline Maass make_maass(Complex lambda, int parity, bool cuspidal = true) {
  if (parity != 0 && parity != 1) throw DomainError("parity must be 0 or 1");
  return {lambda, parity, cuspidal};
}

inline Maass maass_from_r(Real r, int parity) { return make_maass(Complex(0.0, 2.0 * r), parity); }

inline void check_gl4(const std::array<Complex, 4>& mu, const std::array<int, 4>& eta, Real tol = 1e-12) {
  Complex sum = 0;
  Real scale = 1;
  for (const Complex& m : mu) {
    sum += m;
    scale = std::max(scale, std::abs(m));
  }
  if (std::abs(sum) > tol * scale) throw DomainError("GL(4) parameters must satisfy sum(mu) = 0");
  int parity = 0;
  for (int e : eta) {
    if (e != 0 && e != 1) throw DomainError("GL(4) eta entries must be 0 or 1");
    parity += e;
  }
  if (parity % 2 != 0) throw DomainError("GL(4) parameters must satisfy sum(eta) = 0 mod 2");
}

inline GL4 make_gl4(const std::array<Complex, 4>& mu, const std::array<int, 4>& eta) {
  check_gl4(mu, eta);
  return {mu, eta};
}

inline std::string kind_name(const SpectralData& s) {
  if (std::holds_alternative<Holomorphic>(s)) return "holomorphic";
  if (std::holds_alternative<Maass>(s)) return "maass";
  return "gl4";
}

}  // namespace automorph
