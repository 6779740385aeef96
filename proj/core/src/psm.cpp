#include "hirepath/psm.hpp"

#include <algorithm>
#include <numeric>

#include "hirepath/errors.hpp"

namespace hirepath {

MatchResult psm_match(const ColumnTable& table, const std::string& treatment,
                      const std::vector<std::string>& covariates, double caliper) {
  std::vector<Term> terms;
  for (const auto& c : covariates) terms.push_back(Term::continuous(c));
  DesignMatrix design = build_design(table, terms, treatment);
  const auto n = design.X.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    if (design.y[i] != 0.0 && design.y[i] != 1.0)
      throw Error("treatment must be binary 0/1");
  if (design.y.sum() == 0.0 || design.y.sum() == static_cast<double>(n))
    throw Error("both treatment arms must be nonempty");

  FitResult prop_fit = fit_glm(design, Family::Logistic);
  Eigen::VectorXd eta = design.X * prop_fit.coef;
  Eigen::VectorXd score = (1.0 / (1.0 + (-eta.array()).exp())).matrix();

  std::vector<Eigen::Index> treated, controls;
  for (Eigen::Index i = 0; i < n; ++i)
    (design.y[i] == 1.0 ? treated : controls).push_back(i);

  // controls sorted by score for radius lookups
  std::vector<Eigen::Index> order = controls;
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return score[a] < score[b]; });
  std::vector<double> sorted_scores(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) sorted_scores[k] = score[order[k]];

  MatchResult res;
  res.caliper = caliper;
  res.weights = Eigen::VectorXd::Zero(n);
  res.propensity = score;

  for (Eigen::Index t : treated) {
    auto lo = std::lower_bound(sorted_scores.begin(), sorted_scores.end(), score[t] - caliper);
    auto hi = std::upper_bound(sorted_scores.begin(), sorted_scores.end(), score[t] + caliper);
    auto count = static_cast<std::size_t>(hi - lo);
    if (count == 0) {
      ++res.n_dropped;
      continue;
    }
    ++res.n_matched_treated;
    res.weights[t] = 1.0;
    double share = 1.0 / static_cast<double>(count);
    for (auto it = lo; it != hi; ++it)
      res.weights[order[static_cast<std::size_t>(it - sorted_scores.begin())]] += share;
  }
  if (res.n_matched_treated == 0) throw NoOverlap();
  return res;
}

}  // namespace hirepath
