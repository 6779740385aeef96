#include "hirepath/glm.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>

#include "hirepath/errors.hpp"
#include "fit_internal.hpp"

namespace hirepath {

namespace {

constexpr int kMaxIter = 100;
constexpr double kGradTol = 1e-8;
constexpr double kBetaCap = 30.0;  // divergence sentinel for logistic fits

}  // namespace

double FitResult::coef_of(const std::string& name) const {
  int idx = index_of(name);
  if (idx < 0) throw UnknownVariable(name);
  return coef[idx];
}

int FitResult::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

namespace detail {

void finish_wald(FitResult& fit, const Eigen::MatrixXd& info) {
  const auto p = info.rows();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(info);
  if (!lu.isInvertible()) throw Collinearity();
  fit.vcov = lu.inverse();
  fit.std_errors.resize(p);
  fit.ci_lower.resize(p);
  fit.ci_upper.resize(p);
  fit.p_values.resize(p);
  boost::math::normal_distribution<> normal;
  const double z975 = boost::math::quantile(normal, 0.975);
  for (Eigen::Index j = 0; j < p; ++j) {
    double se = std::sqrt(std::max(fit.vcov(j, j), 0.0));
    fit.std_errors[j] = se;
    fit.ci_lower[j] = fit.coef[j] - z975 * se;
    fit.ci_upper[j] = fit.coef[j] + z975 * se;
    double z = se > 0.0 ? std::abs(fit.coef[j]) / se : 0.0;
    fit.p_values[j] = 2.0 * boost::math::cdf(normal, -z);
  }
}

}  // namespace detail

FitResult weighted_glm(const DesignMatrix& design, const Eigen::VectorXd& prior_w,
                       Family family) {
  if (family != Family::Logistic && family != Family::Poisson)
    throw Error("weighted_glm handles logistic and poisson families");
  const Eigen::MatrixXd& X = design.X;
  const Eigen::VectorXd& y = design.y;
  const auto n = X.rows();
  const auto p = X.cols();
  if (n <= p) throw InsufficientData("need more observations than columns");
  if (prior_w.size() != n) throw Error("weight vector length mismatch");
  if (prior_w.minCoeff() < 0.0) throw Error("negative weights");
  if (prior_w.maxCoeff() == 0.0) throw Error("all weights zero");

  const bool logistic = family == Family::Logistic;
  if (logistic) {
    for (Eigen::Index i = 0; i < n; ++i)
      if (y[i] != 0.0 && y[i] != 1.0) throw Error("logistic response must be 0/1");
  } else {
    if (y.minCoeff() < 0.0) throw Error("poisson response must be nonnegative");
  }

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd mu(n), w(n);
  Eigen::MatrixXd info(p, p);

  FitResult fit;
  fit.family = family;
  fit.names = design.col_names;
  fit.n_terms = static_cast<int>(p);

  int iter = 0;
  for (; iter < kMaxIter; ++iter) {
    Eigen::VectorXd eta = X * beta;
    if (logistic) {
      mu = (1.0 / (1.0 + (-eta.array()).exp())).matrix();
      w = (mu.array() * (1.0 - mu.array())).matrix();
    } else {
      mu = eta.array().exp().matrix();
      w = mu;
    }
    Eigen::VectorXd grad = X.transpose() * (prior_w.cwiseProduct(y - mu));
    info = X.transpose() * (prior_w.cwiseProduct(w)).asDiagonal() * X;

    if (grad.lpNorm<Eigen::Infinity>() <= kGradTol) {
      fit.converged = true;
      break;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(info);
    if (!lu.isInvertible()) throw Collinearity();
    beta += lu.solve(grad);
    if (logistic && beta.lpNorm<Eigen::Infinity>() > kBetaCap) throw Separation();
    if (!logistic && beta.lpNorm<Eigen::Infinity>() > 200.0)
      throw NonConvergence(iter + 1);
  }
  if (!fit.converged) throw NonConvergence(kMaxIter);

  fit.coef = beta;
  fit.n_iterations = iter;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (logistic) {
      double pi = std::clamp(mu[i], 1e-300, 1.0 - 1e-16);
      ll += prior_w[i] * (y[i] * std::log(pi) + (1.0 - y[i]) * std::log1p(-pi));
    } else {
      ll += prior_w[i] * (y[i] * std::log(std::max(mu[i], 1e-300)) - mu[i] -
                          std::lgamma(y[i] + 1.0));
    }
  }
  fit.log_likelihood = ll;
  detail::finish_wald(fit, info);
  return fit;
}

FitResult fit_glm(const DesignMatrix& design, Family family) {
  return weighted_glm(design, Eigen::VectorXd::Ones(design.X.rows()), family);
}

}  // namespace hirepath
