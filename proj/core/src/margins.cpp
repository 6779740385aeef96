#include "hirepath/margins.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>

#include "hirepath/errors.hpp"
#include "hirepath/multinomial.hpp"

namespace hirepath {

namespace {

// mean predicted probability per outcome at coefficients `coef`
Eigen::VectorXd mean_probs(const FitResult& fit, const Eigen::VectorXd& coef,
                           const Eigen::MatrixXd& X) {
  if (fit.family == Family::Logistic) {
    Eigen::VectorXd eta = X * coef;
    Eigen::VectorXd p = (1.0 / (1.0 + (-eta.array()).exp())).matrix();
    Eigen::VectorXd out(1);
    out[0] = p.mean();
    return out;
  }
  FitResult tmp = fit;
  tmp.coef = coef;
  Eigen::MatrixXd P = multinomial_probs(tmp, X);
  return P.colwise().mean().transpose();
}

}  // namespace

std::vector<MarginalEffect> marginal_effect(const FitResult& fit, const ColumnTable& table,
                                            const std::vector<Term>& terms,
                                            const std::string& response,
                                            const std::string& variable, double step) {
  if (fit.family != Family::Logistic && fit.family != Family::Multinomial)
    throw Error("marginal effects implemented for logistic and multinomial fits");
  if (!table.has(variable)) throw UnknownVariable(variable);

  DesignMatrix base = build_design(table, terms, response);
  ColumnTable bumped = table;
  {
    std::vector<double> col = table.get(variable);
    for (double& v : col) v += step;
    bumped.columns[variable] = std::move(col);
  }
  DesignMatrix shifted = build_design(bumped, terms, response);

  auto effect_at = [&](const Eigen::VectorXd& coef) {
    return (mean_probs(fit, coef, shifted.X) - mean_probs(fit, coef, base.X)).eval();
  };

  Eigen::VectorXd eff = effect_at(fit.coef);
  const auto n_out = eff.size();
  const auto p = fit.coef.size();

  // delta method: numeric gradient of the effect in the coefficients
  Eigen::MatrixXd G(n_out, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    double h = 1e-5 * std::max(1.0, std::abs(fit.coef[j]));
    Eigen::VectorXd up = fit.coef, dn = fit.coef;
    up[j] += h;
    dn[j] -= h;
    G.col(j) = (effect_at(up) - effect_at(dn)) / (2.0 * h);
  }
  Eigen::MatrixXd cov = G * fit.vcov * G.transpose();

  boost::math::normal_distribution<> normal;
  const double z975 = boost::math::quantile(normal, 0.975);

  std::vector<MarginalEffect> out;
  for (Eigen::Index o = 0; o < n_out; ++o) {
    MarginalEffect me;
    me.effect = eff[o];
    me.std_error = std::sqrt(std::max(cov(o, o), 0.0));
    me.ci_lower = me.effect - z975 * me.std_error;
    me.ci_upper = me.effect + z975 * me.std_error;
    if (fit.family == Family::Logistic) {
      me.outcome_level = 1.0;
      int idx = fit.index_of(variable);
      if (idx < 0) throw UnknownVariable(variable);
      me.odds_factor = std::exp(step * fit.coef[idx]);
    } else {
      me.outcome_level = fit.outcome_levels[o];
      if (o == 0) {  // reference category has no own coefficient block
        me.odds_factor = 1.0;
      } else {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%g", fit.outcome_levels[o]);
        int idx = fit.index_of(std::string(buf) + "|" + variable);
        if (idx < 0) throw UnknownVariable(variable);
        me.odds_factor = std::exp(step * fit.coef[idx]);
      }
    }
    out.push_back(me);
  }
  return out;
}

}  // namespace hirepath
