#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "automorph/numerics/types.hpp"

namespace automorph {

using numerics::Complex;
using numerics::Real;

// A numerical value with its error estimate and truncation diagnostics.
struct EvalReport {
  Complex value{};
  Real error = 0.0;
  std::size_t terms = 0;        // series terms or quadrature evaluations
  std::string method;           // which route produced the value
  std::vector<std::string> flags;  // heuristic bounds, region warnings
};

}  // namespace automorph
