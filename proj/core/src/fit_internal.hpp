#pragma once

#include <Eigen/Dense>

#include "hirepath/glm.hpp"

namespace hirepath::detail {

// Fills vcov, standard errors, Wald CIs and p-values from an observed
// information matrix; throws Collinearity when it is singular.
void finish_wald(FitResult& fit, const Eigen::MatrixXd& info);

}  // namespace hirepath::detail
