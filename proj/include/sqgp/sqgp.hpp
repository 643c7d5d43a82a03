#pragma once

// Umbrella header: finite-horizon Laplace transforms of squared Gaussian
// processes, their Gartner-Ellis limits, the Wiener-Hopf quantities behind
// them, and the infinitely divisible decompositions of the laws involved.

#include "sqgp/ar1.hpp"
#include "sqgp/errors.hpp"
#include "sqgp/factorization.hpp"
#include "sqgp/idist.hpp"
#include "sqgp/kernels.hpp"
#include "sqgp/laplace.hpp"
#include "sqgp/limits.hpp"
#include "sqgp/matrix.hpp"
#include "sqgp/mc.hpp"
#include "sqgp/model_config.hpp"
#include "sqgp/toeplitz.hpp"
