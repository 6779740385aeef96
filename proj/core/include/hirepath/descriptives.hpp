#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hirepath {

struct WelchResult {
  double t = 0.0;
  double df = 0.0;  // Welch-Satterthwaite
  double p = 1.0;   // two-sided
  double mean_diff = 0.0;
};

struct PearsonResult {
  double r = 0.0;
  double p = 1.0;  // two-sided, t transform with n-2 df
};

struct BootstrapCI {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

WelchResult welch_t(std::span<const double> a, std::span<const double> b);

PearsonResult pearson_r(std::span<const double> x, std::span<const double> y);

// Seeded percentile bootstrap of an arbitrary statistic.
BootstrapCI bootstrap_ci(std::span<const double> sample,
                         const std::function<double(std::span<const double>)>& stat,
                         int n_boot = 1000, std::uint64_t seed = 0, double level = 0.95);

BootstrapCI bootstrap_mean_ci(std::span<const double> sample, int n_boot = 1000,
                              std::uint64_t seed = 0, double level = 0.95);

// Locally weighted regression with the tricube kernel; `fraction` of the
// points forms each local window, followed by `robust_iters` bisquare
// reweighting passes. Returns the smoothed value at each input x (inputs
// need not be sorted).
std::vector<double> lowess(std::span<const double> x, std::span<const double> y,
                           double fraction = 0.5, int robust_iters = 2);

}  // namespace hirepath
