#include "hirepath/descriptives.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>
#include <random>

#include "hirepath/errors.hpp"

namespace hirepath {

namespace {

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double var_of(std::span<const double> v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

WelchResult welch_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw InsufficientData("welch_t needs >= 2 observations per group");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double ma = mean_of(a), mb = mean_of(b);
  const double va = var_of(a, ma), vb = var_of(b, mb);

  WelchResult res;
  res.mean_diff = ma - mb;
  double se2 = va / na + vb / nb;
  if (se2 == 0.0) {  // identical constant groups
    res.t = 0.0;
    res.df = na + nb - 2.0;
    res.p = 1.0;
    return res;
  }
  res.t = res.mean_diff / std::sqrt(se2);
  res.df = se2 * se2 /
           (va * va / (na * na * (na - 1.0)) + vb * vb / (nb * nb * (nb - 1.0)));
  boost::math::students_t_distribution<> dist(res.df);
  res.p = 2.0 * boost::math::cdf(dist, -std::abs(res.t));
  return res;
}

PearsonResult pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3)
    throw InsufficientData("pearson_r needs >= 3 paired observations");
  const auto n = x.size();
  const double mx = mean_of(x), my = mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw InsufficientData("constant series");

  PearsonResult res;
  res.r = sxy / std::sqrt(sxx * syy);
  double r2 = std::min(res.r * res.r, 1.0);
  if (r2 >= 1.0) {
    res.p = 0.0;
    return res;
  }
  double df = static_cast<double>(n) - 2.0;
  double t = res.r * std::sqrt(df / (1.0 - r2));
  boost::math::students_t_distribution<> dist(df);
  res.p = 2.0 * boost::math::cdf(dist, -std::abs(t));
  return res;
}

BootstrapCI bootstrap_ci(std::span<const double> sample,
                         const std::function<double(std::span<const double>)>& stat,
                         int n_boot, std::uint64_t seed, double level) {
  if (sample.size() < 2) throw InsufficientData("bootstrap needs >= 2 observations");
  BootstrapCI out;
  out.estimate = stat(sample);

  std::mt19937_64 rng(seed);
  const auto n = sample.size();
  std::vector<double> resampled(n), stats(n_boot);
  for (int b = 0; b < n_boot; ++b) {
    for (std::size_t i = 0; i < n; ++i)
      resampled[i] = sample[static_cast<std::size_t>(rng() % n)];
    stats[b] = stat(resampled);
  }
  std::sort(stats.begin(), stats.end());
  double alpha = (1.0 - level) / 2.0;
  auto lo = static_cast<std::size_t>(std::floor(alpha * (n_boot - 1)));
  auto hi = static_cast<std::size_t>(std::ceil((1.0 - alpha) * (n_boot - 1)));
  out.lower = stats[lo];
  out.upper = stats[hi];
  return out;
}

BootstrapCI bootstrap_mean_ci(std::span<const double> sample, int n_boot, std::uint64_t seed,
                              double level) {
  return bootstrap_ci(sample, [](std::span<const double> s) { return mean_of(s); }, n_boot,
                      seed, level);
}

std::vector<double> lowess(std::span<const double> x, std::span<const double> y,
                           double fraction, int robust_iters) {
  const auto n = x.size();
  if (n < 3 || y.size() != n) throw InsufficientData("lowess needs >= 3 points");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

  auto window = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n))));
  window = std::min(window, n);

  std::vector<double> fitted(n, 0.0);
  std::vector<double> robust_w(n, 1.0);

  for (int it = 0; it <= robust_iters; ++it) {
    for (std::size_t pos = 0; pos < n; ++pos) {
      const double xi = x[order[pos]];
      // nearest-neighbor window around pos in sorted order
      std::size_t lo = pos >= window ? pos - window + 1 : 0;
      std::size_t hi = std::min(lo + window - 1, n - 1);
      while (lo > 0 && xi - x[order[lo - 1]] < x[order[hi]] - xi) { --lo; --hi; }
      while (hi < n - 1 && x[order[hi + 1]] - xi < xi - x[order[lo]]) { ++lo; ++hi; }

      double span = std::max(xi - x[order[lo]], x[order[hi]] - xi);
      double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
      // tricube-only fallback for windows whose robust weight mass is zero
      // (fitting such a point to its own y would reinstate an outlier on the
      // next reweighting pass)
      double fw = 0.0, fwy = 0.0;
      for (std::size_t k = lo; k <= hi; ++k) {
        std::size_t j = order[k];
        double d = span > 0.0 ? std::abs(x[j] - xi) / span : 0.0;
        double tri = d < 1.0 ? std::pow(1.0 - d * d * d, 3) : 0.0;
        double w = tri * robust_w[j];
        sw += w;
        swx += w * x[j];
        swy += w * y[j];
        swxx += w * x[j] * x[j];
        swxy += w * x[j] * y[j];
        fw += tri;
        fwy += tri * y[j];
      }
      if (sw <= 0.0) {
        fitted[order[pos]] = fw > 0.0 ? fwy / fw : y[order[pos]];
        continue;
      }
      double denom = sw * swxx - swx * swx;
      if (std::abs(denom) <= 1e-12 * sw * swxx || denom == 0.0) {
        fitted[order[pos]] = swy / sw;  // degenerate window: weighted mean
      } else {
        double slope = (sw * swxy - swx * swy) / denom;
        double inter = (swy - slope * swx) / sw;
        fitted[order[pos]] = inter + slope * xi;
      }
    }

    if (it == robust_iters) break;
    // bisquare reweighting on residuals
    std::vector<double> absres(n);
    for (std::size_t i = 0; i < n; ++i) absres[i] = std::abs(y[i] - fitted[i]);
    std::vector<double> sorted = absres;
    std::sort(sorted.begin(), sorted.end());
    double med = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    if (med == 0.0) break;  // exact fit already
    for (std::size_t i = 0; i < n; ++i) {
      double u = absres[i] / (6.0 * med);
      robust_w[i] = u < 1.0 ? (1.0 - u * u) * (1.0 - u * u) : 0.0;
    }
  }
  return fitted;
}

}  // namespace hirepath
