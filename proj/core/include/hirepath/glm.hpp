#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hirepath/design.hpp"

namespace hirepath {

enum class Family { Logistic, Multinomial, Poisson, Quantile };

struct FitResult {
  Family family = Family::Logistic;
  std::vector<std::string> names;  // multinomial: "<outcome>|<term>"
  Eigen::VectorXd coef;
  Eigen::VectorXd std_errors;
  Eigen::VectorXd ci_lower;   // 95% Wald (quantile: bootstrap percentile)
  Eigen::VectorXd ci_upper;
  Eigen::VectorXd p_values;
  Eigen::MatrixXd vcov;
  double log_likelihood = 0.0;  // quantile: negative pinball objective
  bool converged = false;
  int n_iterations = 0;
  // multinomial bookkeeping
  std::vector<double> outcome_levels;  // first = reference
  int n_terms = 0;

  double coef_of(const std::string& name) const;
  int index_of(const std::string& name) const;  // -1 if absent
};

// Maximum likelihood via IRLS. Convergence: max |gradient| <= 1e-8.
// Throws Separation when any |beta| exceeds 30 during logistic iteration,
// Collinearity when the weighted information matrix is singular, and
// NonConvergence at the iteration cap.
FitResult fit_glm(const DesignMatrix& design, Family family);

// Weighted MLE; unit weights reduce exactly to fit_glm.
FitResult weighted_glm(const DesignMatrix& design, const Eigen::VectorXd& weights,
                       Family family);

}  // namespace hirepath
