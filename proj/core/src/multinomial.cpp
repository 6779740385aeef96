#include "hirepath/multinomial.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hirepath/errors.hpp"
#include "fit_internal.hpp"

namespace hirepath {

namespace {

Eigen::MatrixXd probs(const Eigen::MatrixXd& X, const Eigen::MatrixXd& beta_blocks) {
  // beta_blocks: p x (C-1); reference category has linear predictor 0
  const auto n = X.rows();
  const auto cm1 = beta_blocks.cols();
  Eigen::MatrixXd eta = X * beta_blocks;  // n x (C-1)
  Eigen::MatrixXd out(n, cm1 + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    double m = 0.0;
    for (Eigen::Index c = 0; c < cm1; ++c) m = std::max(m, eta(i, c));
    double denom = std::exp(-m);
    for (Eigen::Index c = 0; c < cm1; ++c) denom += std::exp(eta(i, c) - m);
    out(i, 0) = std::exp(-m) / denom;
    for (Eigen::Index c = 0; c < cm1; ++c) out(i, c + 1) = std::exp(eta(i, c) - m) / denom;
  }
  return out;
}

}  // namespace

FitResult fit_multinomial(const DesignMatrix& design) {
  std::set<double> levels(design.y.data(), design.y.data() + design.y.size());
  if (levels.size() < 2) throw Error("multinomial response needs >= 2 categories");
  return fit_multinomial(design, *levels.begin());
}

FitResult fit_multinomial(const DesignMatrix& design, double reference) {
  const Eigen::MatrixXd& X = design.X;
  const auto n = X.rows();
  const auto p = X.cols();

  std::set<double> level_set(design.y.data(), design.y.data() + design.y.size());
  if (!level_set.count(reference)) throw Error("reference level not present in response");
  std::vector<double> levels;
  levels.push_back(reference);
  for (double l : level_set)
    if (l != reference) levels.push_back(l);
  const int C = static_cast<int>(levels.size());
  if (C < 2) throw Error("multinomial response needs >= 2 categories");
  const int K = C - 1;
  if (n <= p * K) throw InsufficientData("need more observations than parameters");

  // indicator matrix for non-reference outcomes, n x K
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(n, K);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int c = 0; c < K; ++c)
      if (design.y[i] == levels[c + 1]) Y(i, c) = 1.0;

  Eigen::MatrixXd beta = Eigen::MatrixXd::Zero(p, K);
  Eigen::MatrixXd info(p * K, p * K);
  FitResult fit;
  fit.family = Family::Multinomial;
  fit.outcome_levels = levels;
  fit.n_terms = static_cast<int>(p);
  for (int c = 0; c < K; ++c) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", levels[c + 1]);
    for (Eigen::Index j = 0; j < p; ++j)
      fit.names.push_back(std::string(buf) + "|" + design.col_names[j]);
  }

  int iter = 0;
  Eigen::MatrixXd P;
  for (; iter < 100; ++iter) {
    P = probs(X, beta);  // n x C, column 0 = reference
    Eigen::VectorXd grad(p * K);
    for (int c = 0; c < K; ++c)
      grad.segment(c * p, p) = X.transpose() * (Y.col(c) - P.col(c + 1));

    for (int c = 0; c < K; ++c) {
      for (int d = 0; d < K; ++d) {
        Eigen::VectorXd w(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          double pc = P(i, c + 1), pd = P(i, d + 1);
          w[i] = c == d ? pc * (1.0 - pc) : -pc * pd;
        }
        info.block(c * p, d * p, p, p) = X.transpose() * w.asDiagonal() * X;
      }
    }

    if (grad.lpNorm<Eigen::Infinity>() <= 1e-8) {
      fit.converged = true;
      break;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(info);
    if (!lu.isInvertible()) throw Collinearity();
    Eigen::VectorXd step = lu.solve(grad);
    for (int c = 0; c < K; ++c) beta.col(c) += step.segment(c * p, p);
    if (beta.lpNorm<Eigen::Infinity>() > 30.0) throw Separation();
  }
  if (!fit.converged) throw NonConvergence(100);

  fit.coef.resize(p * K);
  for (int c = 0; c < K; ++c) fit.coef.segment(c * p, p) = beta.col(c);
  fit.n_iterations = iter;

  double ll = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double pi = P(i, 0);
    for (int c = 0; c < K; ++c)
      if (Y(i, c) == 1.0) pi = P(i, c + 1);
    ll += std::log(std::max(pi, 1e-300));
  }
  fit.log_likelihood = ll;
  detail::finish_wald(fit, info);
  return fit;
}

Eigen::MatrixXd multinomial_probs(const FitResult& fit, const Eigen::MatrixXd& X) {
  const int K = static_cast<int>(fit.outcome_levels.size()) - 1;
  const int p = fit.n_terms;
  Eigen::MatrixXd beta(p, K);
  for (int c = 0; c < K; ++c) beta.col(c) = fit.coef.segment(c * p, p);
  return probs(X, beta);
}

}  // namespace hirepath
