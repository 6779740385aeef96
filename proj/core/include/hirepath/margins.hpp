#pragma once

#include "hirepath/design.hpp"
#include "hirepath/glm.hpp"

namespace hirepath {

struct MarginalEffect {
  double outcome_level = 1.0;  // logistic: 1; multinomial: the category
  double effect = 0.0;         // average discrete probability change
  double std_error = 0.0;
  double ci_lower = 0.0;
  double ci_upper = 0.0;
  // multiplicative odds change per `step` units, exp(step * beta_variable)
  double odds_factor = 1.0;
};

// Average discrete effect of adding `step` to `variable`: the design is
// rebuilt from the table at x and x + step so interaction columns move
// consistently. CIs are delta-method over the fit's vcov.
std::vector<MarginalEffect> marginal_effect(const FitResult& fit, const ColumnTable& table,
                                            const std::vector<Term>& terms,
                                            const std::string& response,
                                            const std::string& variable, double step = 0.1);

}  // namespace hirepath
