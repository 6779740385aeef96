#pragma once

#include "hirepath/glm.hpp"

namespace hirepath {

// Multinomial logit against a reference level (the smallest response value
// unless `reference` is given). Coefficients come in per-outcome blocks,
// named "<level>|<term>". Newton iterations on the full block system;
// errors as fit_glm.
FitResult fit_multinomial(const DesignMatrix& design);
FitResult fit_multinomial(const DesignMatrix& design, double reference);

// n x C matrix of predicted category probabilities, columns ordered as
// fit.outcome_levels.
Eigen::MatrixXd multinomial_probs(const FitResult& fit, const Eigen::MatrixXd& X);

}  // namespace hirepath
