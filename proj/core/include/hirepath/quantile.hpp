#pragma once

#include <cstdint>

#include "hirepath/glm.hpp"

namespace hirepath {

struct QuantileOptions {
  double smoothing = 1e-6;  // kink half-width for the smoothed loss
  int bootstrap = 200;      // replicates for standard errors; 0 disables
  std::uint64_t seed = 20240915;
  int max_iterations = 200;
};

// Minimizes the pinball objective sum_i rho_tau(y_i - x_i beta). Damped
// Newton on a smoothed loss with continuation down to `smoothing`, then
// exact cyclic coordinate descent on the unsmoothed objective (each 1-d
// subproblem is a weighted quantile, solved by sorting). Standard errors
// and CIs are percentile bootstrap.
FitResult fit_quantile(const DesignMatrix& design, double tau,
                       const QuantileOptions& opts = {});

// The exact pinball objective at given coefficients.
double pinball_objective(const DesignMatrix& design, double tau, const Eigen::VectorXd& beta);

}  // namespace hirepath
