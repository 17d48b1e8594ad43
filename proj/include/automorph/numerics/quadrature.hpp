#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <type_traits>
#include <vector>

#include "automorph/numerics/types.hpp"

namespace automorph::numerics {

// Endpoints at which the integrand may blow up (integrably). Declared
// singular endpoints are never evaluated; tanh-sinh clusters nodes there.
struct Singularities {
  bool left = false;
  bool right = false;
};

namespace detail {

inline constexpr std::array<Real, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<Real, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<Real, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
Complex call_complex(F& f, Real x) {
  if constexpr (std::is_convertible_v<std::invoke_result_t<F&, Real>, Real>) {
    return Complex(static_cast<Real>(f(x)), 0.0);
  } else {
    return Complex(f(x));
  }
}

struct Segment {
  Real a, b;
  Complex value;
  Real error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod_15(F& f, Real a, Real b) {
  const Real center = 0.5 * (a + b), half = 0.5 * (b - a);
  const Complex fc = call_complex(f, center);
  Complex kronrod = fc * kKronrodWeights[7];
  Complex gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const Real dx = half * kKronrodNodes[j];
    const Complex f1 = call_complex(f, center - dx), f2 = call_complex(f, center + dx);
    kronrod += kKronrodWeights[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) on a finite interval. Stops when the
// summed error estimate is within max(tol, tol*|I|).
template <class F>
QuadratureResult gauss_kronrod_adaptive(F&& f, Real a, Real b, Real tol, int max_segments = 4000) {
  if (a == b) return {0.0, 0.0, 1};
  std::priority_queue<detail::Segment> heap;
  heap.push(detail::gauss_kronrod_15(f, a, b));
  std::size_t evals = 15;
  Complex total = heap.top().value;
  Real error = heap.top().error;
  int segments = 1;
  while (error > std::max(tol, tol * std::abs(total))) {
    if (segments >= max_segments) {
      throw ConvergenceError("gauss_kronrod_adaptive: subdivision limit reached", total.real(),
                             total.imag(), error);
    }
    const detail::Segment worst = heap.top();
    heap.pop();
    const Real mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw ConvergenceError("gauss_kronrod_adaptive: interval too small to split", total.real(),
                             total.imag(), error);
    }
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    evals += 30;
    heap.push(left);
    heap.push(right);
    ++segments;
    // Re-sum from the heap occasionally to keep rounding from accumulating.
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    if (segments % 64 == 0) {
      auto copy = heap;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, error, evals};
}

// Tanh-sinh on [0, L]. The integrand receives both distances (u, L - u) to the
// endpoints, computed without cancellation, so singular factors like
// u^{a-1} (L-u)^{b-1} can be evaluated exactly near either end.
template <class G>
QuadratureResult tanh_sinh_offsets(G&& g, Real length, Real tol, int max_level = 12) {
  constexpr Real t_max = 6.0;  // nodes reach ~1e-275 from the ends
  const Real half = 0.5 * length;
  std::size_t evals = 0;
  Real abs_sum = 0.0;  // sum of |w f|, for the rounding floor
  auto node = [&](Real t) -> Complex {
    const Real p = 0.5 * kPi * std::sinh(t);
    const Real e = std::exp(-2.0 * std::abs(p));
    // 1 - tanh|p| = 2e / (1 + e), computed without cancellation.
    const Real complement = 2.0 * e / (1.0 + e);
    const Real weight = 0.5 * kPi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    if (weight == 0.0 || complement == 0.0) return 0.0;
    const Real near = half * complement;        // distance to the closer endpoint
    const Real far = length - near;             // distance to the other one
    if (!(near > 0)) return 0.0;
    ++evals;
    const Complex v = weight * (p < 0 ? Complex(g(near, far)) : Complex(g(far, near)));
    abs_sum += std::abs(v);
    return v;
  };
  Real h = 1.0;
  Complex sum = node(0.0);
  for (Real t = h; t <= t_max; t += h) sum += node(t) + node(-t);
  Complex estimate = half * h * sum;
  Real error = std::numeric_limits<Real>::infinity();
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    Complex extra = 0.0;
    for (Real t = h; t <= t_max; t += 2 * h) extra += node(t) + node(-t);
    sum += extra;
    const Complex next = half * h * sum;
    error = std::abs(next - estimate);
    estimate = next;
    const Real floor = 32.0 * kEps * half * h * abs_sum;
    if (level >= 3 && error <= std::max({tol, tol * std::abs(estimate), floor})) {
      return {estimate, error, evals};
    }
  }
  throw ConvergenceError("tanh_sinh: level limit reached", estimate.real(), estimate.imag(), error);
}

namespace detail {

// a < b, a finite.
template <class F>
QuadratureResult integrate_right_open(F& f, Real a, Real b, Real tol, Singularities sing) {
  if (std::isinf(b)) {
    // x = a + u / (1 - u) on u in [0, 1); tanh-sinh hands us 1 - u exactly.
    auto mapped = [&](Real u, Real one_minus) -> Complex {
      const Real x = a + u / one_minus;
      if (!std::isfinite(x)) return 0.0;
      const Complex fx = call_complex(f, x);
      if (fx == Complex(0.0)) return 0.0;
      // A decaying integrand written as underflow * overflow far out.
      if (!is_finite(fx) && x > 1e30) return 0.0;
      return fx / one_minus / one_minus;
    };
    return tanh_sinh_offsets(mapped, 1.0, tol);
  }
  if (sing.left || sing.right) {
    auto g = [&](Real u_left, Real u_right) -> Complex {
      // Evaluate relative to the nearer endpoint.
      return call_complex(f, u_left <= u_right ? a + u_left : b - u_right);
    };
    return tanh_sinh_offsets(g, b - a, tol);
  }
  return gauss_kronrod_adaptive(f, a, b, tol);
}

// a < b, either endpoint possibly infinite.
template <class F>
QuadratureResult integrate_ordered(F& f, Real a, Real b, Real tol, Singularities sing) {
  if (!std::isinf(a)) return integrate_right_open(f, a, b, tol, sing);
  auto mirrored = [&](Real x) -> Complex { return call_complex(f, -x); };
  if (!std::isinf(b)) return integrate_right_open(mirrored, -b, INFINITY, tol, Singularities{sing.right, false});
  auto lo = integrate_right_open(mirrored, 0.0, INFINITY, 0.5 * tol, Singularities{false, false});
  auto hi = integrate_right_open(f, 0.0, b, 0.5 * tol, Singularities{false, false});
  return {lo.value + hi.value, lo.abs_error_estimate + hi.abs_error_estimate, lo.evaluations + hi.evaluations};
}

}  // namespace detail

// int_a^b f(x) dx to max(tol, tol*|I|). Infinite endpoints are mapped onto a
// finite interval. Declared singular endpoints route through tanh-sinh.
template <class F>
QuadratureResult integrate_adaptive(F&& f, Real a, Real b, Real tol, Singularities sing = {}) {
  if (!(tol > 0)) throw DomainError("integrate_adaptive: tol must be positive");
  if (a == b) return {0.0, 0.0, 1};
  if (a > b) {
    auto r = detail::integrate_ordered(f, b, a, tol, Singularities{sing.right, sing.left});
    r.value = -r.value;
    return r;
  }
  return detail::integrate_ordered(f, a, b, tol, sing);
}

}  // namespace automorph::numerics
