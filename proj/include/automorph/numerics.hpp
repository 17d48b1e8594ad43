#pragma once

#include "automorph/numerics/bessel_k.hpp"
#include "automorph/numerics/gamma.hpp"
#include "automorph/numerics/incomplete_gamma.hpp"
#include "automorph/numerics/oscillatory.hpp"
#include "automorph/numerics/quadrature.hpp"
#include "automorph/numerics/types.hpp"
#include "automorph/numerics/zeta.hpp"
