#pragma once

#include "automorph/coefficients/cache.hpp"
#include "automorph/coefficients/hecke.hpp"
#include "automorph/coefficients/int128.hpp"
#include "automorph/coefficients/maass_io.hpp"
#include "automorph/coefficients/series.hpp"
#include "automorph/coefficients/spectral.hpp"
