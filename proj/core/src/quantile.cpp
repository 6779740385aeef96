#include "hirepath/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hirepath/errors.hpp"

namespace hirepath {

namespace {

double pinball(double r, double tau) { return r * (tau - (r < 0.0 ? 1.0 : 0.0)); }

// smoothed check loss: quadratic on [-h, h], linear outside
double smooth_loss(double r, double tau, double h) {
  if (r >= h) return tau * r - 0.5 * h * (2.0 * tau - 1.0) - 0.25 * h;
  if (r <= -h) return (tau - 1.0) * r - 0.5 * h * (2.0 * tau - 1.0) - 0.25 * h;
  return (tau - 0.5) * r + r * r / (4.0 * h) + 0.25 * h - 0.5 * h * (2.0 * tau - 1.0);
}

double smooth_psi(double r, double tau, double h) {  // d loss / d r
  if (r >= h) return tau;
  if (r <= -h) return tau - 1.0;
  return tau - 0.5 + r / (2.0 * h);
}

Eigen::VectorXd solve_smoothed(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double tau,
                               double h_final, int max_iter, bool* converged) {
  const auto p = X.cols();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);

  // continuation: start with the band covering every residual at beta = 0
  // (so the Hessian is full weight), then shrink toward h_final
  double scale = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) scale = std::max(scale, std::abs(y[i]));
  double h = std::max(scale * 2.0, h_final);
  const double ridge = 1e-10 * (X.transpose() * X).diagonal().maxCoeff() + 1e-12;
  *converged = false;

  int iter = 0;
  while (iter < max_iter) {
    Eigen::VectorXd r = y - X * beta;
    Eigen::VectorXd psi(r.size()), w(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      psi[i] = smooth_psi(r[i], tau, h);
      w[i] = std::abs(r[i]) < h ? 1.0 / (2.0 * h) : 0.0;
    }
    Eigen::VectorXd grad = -X.transpose() * psi;
    Eigen::MatrixXd hess = X.transpose() * w.asDiagonal() * X;
    hess.diagonal().array() += ridge;

    Eigen::VectorXd step = hess.ldlt().solve(-grad);
    double f0 = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i) f0 += smooth_loss(r[i], tau, h);
    double t = 1.0;
    bool improved = false;
    Eigen::VectorXd cand;
    for (int ls = 0; ls < 60 && t >= 1e-12; ++ls) {  // backtracking
      cand = beta + t * step;
      Eigen::VectorXd rc = y - X * cand;
      double f = 0.0;
      for (Eigen::Index i = 0; i < rc.size(); ++i) f += smooth_loss(rc[i], tau, h);
      if (f < f0) {
        improved = true;
        break;
      }
      t *= 0.5;
    }
    if (improved) beta = cand;  // a failed line search keeps the iterate
    ++iter;

    if (grad.lpNorm<Eigen::Infinity>() <= 1e-9 * std::max(1.0, scale) || !improved) {
      if (h <= h_final * 1.0001) {
        *converged = true;
        break;
      }
      h = std::max(h * 0.1, h_final);
    }
  }
  return beta;
}

// exact 1-d minimization along coordinate j: weighted quantile of the
// breakpoints r_i / x_ij
void coordinate_polish(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double tau,
                       Eigen::VectorXd& beta) {
  const auto n = X.rows();
  const auto p = X.cols();

  for (int pass = 0; pass < 50; ++pass) {
    double moved = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      std::vector<std::pair<double, double>> pts;  // (breakpoint, weight)
      double target = 0.0, total = 0.0;
      pts.reserve(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        double x = X(i, j);
        if (x == 0.0) continue;
        double w = std::abs(x);
        // residual with column j removed, built from y so that an
        // intercept-only fit lands bitwise on an order statistic
        double partial = y[i];
        for (Eigen::Index k = 0; k < p; ++k)
          if (k != j) partial -= X(i, k) * beta[k];
        double t_i = partial / x;
        pts.emplace_back(t_i, w);
        target += w * (x > 0.0 ? tau : 1.0 - tau);
        total += w;
      }
      if (pts.empty() || total == 0.0) continue;
      std::sort(pts.begin(), pts.end());
      double cum = 0.0, t_star = pts.back().first;
      for (const auto& [t, w] : pts) {
        cum += w;
        if (cum >= target - 1e-12 * total) {
          t_star = t;
          break;
        }
      }
      double delta = t_star - beta[j];
      if (delta != 0.0) {
        beta[j] = t_star;
        moved = std::max(moved, std::abs(delta));
      }
    }
    if (moved == 0.0) break;
  }
}

Eigen::VectorXd fit_point(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double tau,
                          const QuantileOptions& opts) {
  bool converged = false;
  Eigen::VectorXd beta =
      solve_smoothed(X, y, tau, opts.smoothing, opts.max_iterations, &converged);
  if (!converged) throw NonConvergence(opts.max_iterations);
  coordinate_polish(X, y, tau, beta);
  return beta;
}

}  // namespace

double pinball_objective(const DesignMatrix& design, double tau, const Eigen::VectorXd& beta) {
  Eigen::VectorXd r = design.y - design.X * beta;
  double f = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) f += pinball(r[i], tau);
  return f;
}

FitResult fit_quantile(const DesignMatrix& design, double tau, const QuantileOptions& opts) {
  if (tau <= 0.0 || tau >= 1.0) throw Error("tau must be in (0, 1)");
  const Eigen::MatrixXd& X = design.X;
  const Eigen::VectorXd& y = design.y;
  const auto n = X.rows();
  const auto p = X.cols();
  if (n <= p) throw InsufficientData("need more observations than columns");

  FitResult fit;
  fit.family = Family::Quantile;
  fit.names = design.col_names;
  fit.n_terms = static_cast<int>(p);
  fit.coef = fit_point(X, y, tau, opts);
  fit.converged = true;
  fit.log_likelihood = -pinball_objective(design, tau, fit.coef);

  fit.std_errors = Eigen::VectorXd::Zero(p);
  fit.ci_lower = fit.coef;
  fit.ci_upper = fit.coef;
  fit.p_values = Eigen::VectorXd::Ones(p);
  fit.vcov = Eigen::MatrixXd::Zero(p, p);

  if (opts.bootstrap > 0) {
    std::mt19937_64 rng(opts.seed);
    Eigen::MatrixXd draws(opts.bootstrap, p);
    Eigen::MatrixXd Xb(n, p);
    Eigen::VectorXd yb(n);
    for (int b = 0; b < opts.bootstrap; ++b) {
      for (Eigen::Index i = 0; i < n; ++i) {
        auto k = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
        Xb.row(i) = X.row(k);
        yb[i] = y[k];
      }
      try {
        bool conv = false;
        Eigen::VectorXd bb = solve_smoothed(Xb, yb, tau, opts.smoothing, opts.max_iterations, &conv);
        coordinate_polish(Xb, yb, tau, bb);
        draws.row(b) = bb.transpose();
      } catch (const Error&) {
        draws.row(b) = fit.coef.transpose();
      }
    }
    Eigen::RowVectorXd mean = draws.colwise().mean();
    for (Eigen::Index j = 0; j < p; ++j) {
      Eigen::VectorXd col = draws.col(j);
      double var = (col.array() - mean[j]).square().sum() / (opts.bootstrap - 1);
      fit.std_errors[j] = std::sqrt(var);
      std::sort(col.data(), col.data() + col.size());
      auto lo = static_cast<Eigen::Index>(std::floor(0.025 * (opts.bootstrap - 1)));
      auto hi = static_cast<Eigen::Index>(std::ceil(0.975 * (opts.bootstrap - 1)));
      fit.ci_lower[j] = col[lo];
      fit.ci_upper[j] = col[hi];
      if (fit.std_errors[j] > 0.0) {
        double z = std::abs(fit.coef[j]) / fit.std_errors[j];
        fit.p_values[j] = std::erfc(z / std::sqrt(2.0));
      }
      fit.vcov(j, j) = var;
    }
  }
  return fit;
}

}  // namespace hirepath
