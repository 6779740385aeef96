#pragma once

#include "hirepath/design.hpp"
#include "hirepath/glm.hpp"

namespace hirepath {

struct MatchResult {
  Eigen::VectorXd weights;        // per-observation regression weights
  Eigen::VectorXd propensity;     // estimated treatment probabilities
  int n_matched_treated = 0;
  int n_dropped = 0;              // treated units with no control in radius
  double caliper = 0.1;
};

// Radius matching on the probability-scale propensity score. Each treated
// unit matches every control within the caliper; a matched control carries
// weight sum over its treated matches of 1 / (# controls for that treated
// unit), treated units carry weight 1, unmatched treated units are dropped.
// Throws NoOverlap when nothing matches.
MatchResult psm_match(const ColumnTable& table, const std::string& treatment,
                      const std::vector<std::string>& covariates, double caliper = 0.1);

}  // namespace hirepath
