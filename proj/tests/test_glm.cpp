#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "hirepath/errors.hpp"
#include "hirepath/glm.hpp"
#include "hirepath/multinomial.hpp"

using namespace hirepath;

namespace {

DesignMatrix intercept_only(const std::vector<double>& y) {
  ColumnTable t;
  t.add("y", y);
  return build_design(t, {}, "y");
}

double runif(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

TEST_CASE("logistic closed forms") {
  std::vector<double> half(10, 0.0);
  for (int i = 0; i < 5; ++i) half[i] = 1.0;
  auto f0 = fit_glm(intercept_only(half), Family::Logistic);
  CHECK(std::abs(f0.coef(0)) <= 1e-8);

  std::vector<double> y(10, 1.0);
  y[0] = y[1] = 0.0;  // mean 0.8
  auto f = fit_glm(intercept_only(y), Family::Logistic);
  CHECK(f.coef(0) == doctest::Approx(std::log(4.0)).epsilon(1e-8));
  CHECK(f.converged);
}

TEST_CASE("poisson closed form") {
  std::vector<double> y = {1, 2, 3, 4};  // mean 2.5
  auto f = fit_glm(intercept_only(y), Family::Poisson);
  CHECK(f.coef(0) == doctest::Approx(std::log(2.5)).epsilon(1e-8));
}

TEST_CASE("perfect separation throws") {
  ColumnTable t;
  t.add("y", {0, 0, 0, 1, 1, 1});
  t.add("x", {1, 2, 3, 4, 5, 6});
  CHECK_THROWS_AS(fit_glm(build_design(t, {parse_term("x")}, "y"), Family::Logistic),
                  Separation);
}

TEST_CASE("duplicated columns are collinear") {
  ColumnTable t;
  t.add("y", {0, 1, 0, 1, 1, 0});
  t.add("x", {1, 2, 3, 4, 5, 6});
  t.add("x2", {2, 4, 6, 8, 10, 12});
  CHECK_THROWS_AS(
      fit_glm(build_design(t, {parse_term("x"), parse_term("x2")}, "y"), Family::Logistic),
      Collinearity);
}

TEST_CASE("gradient vanishes at the optimum") {
  std::mt19937_64 rng(3);
  ColumnTable t;
  std::vector<double> x, y, n;
  for (int i = 0; i < 500; ++i) {
    double xi = 2.0 * runif(rng) - 1.0;
    double p = 1.0 / (1.0 + std::exp(-(0.3 + 0.8 * xi)));
    x.push_back(xi);
    y.push_back(runif(rng) < p ? 1.0 : 0.0);
    double lambda = std::exp(0.5 + 0.6 * xi);
    double u = runif(rng), acc = std::exp(-lambda), cdf = acc;
    int k = 0;
    while (u > cdf && k < 100) { ++k; acc *= lambda / k; cdf += acc; }
    n.push_back(k);
  }
  t.add("y", y);
  t.add("n", n);
  t.add("x", x);

  auto dl = build_design(t, {parse_term("x")}, "y");
  auto fl = fit_glm(dl, Family::Logistic);
  Eigen::VectorXd p = (dl.X * fl.coef).unaryExpr([](double e) {
    return 1.0 / (1.0 + std::exp(-e));
  });
  CHECK((dl.X.transpose() * (dl.y - p)).lpNorm<Eigen::Infinity>() <= 1e-8);

  auto dp = build_design(t, {parse_term("x")}, "n");
  auto fp = fit_glm(dp, Family::Poisson);
  Eigen::VectorXd mu = (dp.X * fp.coef).array().exp();
  CHECK((dp.X.transpose() * (dp.y - mu)).lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("planted coefficients are recovered inside the 95% CI") {
  // spec-level property: >= 90% coverage over 100 seeded replications
  for (Family fam : {Family::Logistic, Family::Poisson}) {
    int hits = 0;
    const double b0 = fam == Family::Logistic ? -0.5 : 0.2, b1 = 0.7;
    for (int rep = 0; rep < 100; ++rep) {
      std::mt19937_64 rng(1000 + rep);
      ColumnTable t;
      std::vector<double> x, y;
      for (int i = 0; i < 10000; ++i) {
        double xi = 2.0 * runif(rng) - 1.0;
        x.push_back(xi);
        double eta = b0 + b1 * xi;
        if (fam == Family::Logistic) {
          y.push_back(runif(rng) < 1.0 / (1.0 + std::exp(-eta)) ? 1.0 : 0.0);
        } else {
          double lambda = std::exp(eta), u = runif(rng), acc = std::exp(-lambda), cdf = acc;
          int k = 0;
          while (u > cdf && k < 200) { ++k; acc *= lambda / k; cdf += acc; }
          y.push_back(k);
        }
      }
      t.add("y", y);
      t.add("x", x);
      auto f = fit_glm(build_design(t, {parse_term("x")}, "y"), fam);
      int j = f.index_of("x");
      if (f.ci_lower(j) <= b1 && b1 <= f.ci_upper(j)) ++hits;
    }
    CHECK(hits >= 90);
  }
}

TEST_CASE("unit weights reduce weighted fit to the plain fit") {
  std::mt19937_64 rng(9);
  ColumnTable t;
  std::vector<double> x, y;
  for (int i = 0; i < 200; ++i) {
    x.push_back(runif(rng));
    y.push_back(runif(rng) < 0.4 ? 1.0 : 0.0);
  }
  t.add("y", y);
  t.add("x", x);
  auto d = build_design(t, {parse_term("x")}, "y");
  auto plain = fit_glm(d, Family::Logistic);
  auto weighted = weighted_glm(d, Eigen::VectorXd::Ones(200), Family::Logistic);
  CHECK((plain.coef - weighted.coef).lpNorm<Eigen::Infinity>() <= 1e-10);
  CHECK((plain.std_errors - weighted.std_errors).lpNorm<Eigen::Infinity>() <= 1e-10);
}

TEST_CASE("row duplication equals weight two; zero weight equals deletion") {
  ColumnTable base, doubled;
  std::vector<double> x = {0.1, 0.9, 0.4, 0.7, 0.2, 0.8, 0.35, 0.65};
  std::vector<double> y = {0, 1, 0, 1, 0, 1, 1, 0};
  base.add("y", y);
  base.add("x", x);
  auto xd = x, yd = y;
  xd.push_back(x[0]);
  yd.push_back(y[0]);
  doubled.add("y", yd);
  doubled.add("x", xd);

  Eigen::VectorXd w = Eigen::VectorXd::Ones(8);
  w(0) = 2.0;
  auto fw = weighted_glm(build_design(base, {parse_term("x")}, "y"), w, Family::Logistic);
  auto fd = fit_glm(build_design(doubled, {parse_term("x")}, "y"), Family::Logistic);
  CHECK((fw.coef - fd.coef).lpNorm<Eigen::Infinity>() <= 1e-8);

  // zero-weight row = deleted row
  Eigen::VectorXd w0 = Eigen::VectorXd::Ones(8);
  w0(3) = 0.0;
  ColumnTable cut;
  std::vector<double> xc, yc;
  for (int i = 0; i < 8; ++i)
    if (i != 3) { xc.push_back(x[i]); yc.push_back(y[i]); }
  cut.add("y", yc);
  cut.add("x", xc);
  auto fz = weighted_glm(build_design(base, {parse_term("x")}, "y"), w0, Family::Logistic);
  auto fc = fit_glm(build_design(cut, {parse_term("x")}, "y"), Family::Logistic);
  CHECK((fz.coef - fc.coef).lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("two-category multinomial equals binary logistic") {
  std::mt19937_64 rng(31);
  ColumnTable t;
  std::vector<double> x, y;
  for (int i = 0; i < 400; ++i) {
    double xi = runif(rng);
    x.push_back(xi);
    y.push_back(runif(rng) < 1.0 / (1.0 + std::exp(-(-0.3 + 1.2 * xi))) ? 1.0 : 0.0);
  }
  t.add("y", y);
  t.add("x", x);
  auto d = build_design(t, {parse_term("x")}, "y");
  auto binary = fit_glm(d, Family::Logistic);
  auto multi = fit_multinomial(d);
  REQUIRE(multi.coef.size() == binary.coef.size());
  CHECK((multi.coef - binary.coef).lpNorm<Eigen::Infinity>() <= 1e-8);
  CHECK((multi.std_errors - binary.std_errors).lpNorm<Eigen::Infinity>() <= 1e-6);
}

TEST_CASE("balanced three-category intercept-only fit has zero intercepts") {
  ColumnTable t;
  std::vector<double> y;
  for (int i = 0; i < 30; ++i) y.push_back(i % 3);
  t.add("y", y);
  auto f = fit_multinomial(build_design(t, {}, "y"));
  for (int j = 0; j < f.coef.size(); ++j) CHECK(std::abs(f.coef(j)) <= 1e-8);
  CHECK(f.outcome_levels.front() == 0.0);
}

TEST_CASE("four-category multinomial recovers planted coefficients") {
  const double planted[3][2] = {{0.4, -0.8}, {-0.2, 0.6}, {0.1, 1.0}};  // (b0, b1) per level
  int hits = 0;
  const int reps = 100;
  for (int rep = 0; rep < reps; ++rep) {
    std::mt19937_64 rng(500 + rep);
    ColumnTable t;
    std::vector<double> x, y;
    for (int i = 0; i < 4000; ++i) {
      double xi = 2.0 * runif(rng) - 1.0;
      double e0 = 1.0, e[3];
      double total = e0;
      for (int k = 0; k < 3; ++k) {
        e[k] = std::exp(planted[k][0] + planted[k][1] * xi);
        total += e[k];
      }
      double u = runif(rng) * total, acc = e0;
      int cat = 0;
      for (int k = 0; k < 3 && u > acc; ++k) { acc += e[k]; cat = k + 1; }
      x.push_back(xi);
      y.push_back(cat);
    }
    t.add("y", y);
    t.add("x", x);
    auto f = fit_multinomial(build_design(t, {parse_term("x")}, "y"));
    bool cover = true;
    for (int k = 0; k < 3; ++k) {
      int j = f.index_of(std::to_string(k + 1) + "|x");
      REQUIRE(j >= 0);
      if (!(f.ci_lower(j) <= planted[k][1] && planted[k][1] <= f.ci_upper(j))) cover = false;
    }
    if (cover) ++hits;
  }
  CHECK(hits >= 0.90 * reps * 0.857);  // joint coverage of 3 intervals ~ 0.86
}

TEST_CASE("multinomial probabilities sum to one and order by level") {
  ColumnTable t;
  std::mt19937_64 rng(77);
  std::vector<double> y, x;
  for (int i = 0; i < 60; ++i) {
    y.push_back(i % 3);  // classes overlap across the whole x range
    x.push_back(runif(rng));
  }
  t.add("y", y);
  t.add("x", x);
  auto d = build_design(t, {parse_term("x")}, "y");
  auto f = fit_multinomial(d);
  auto probs = multinomial_probs(f, d.X);
  for (int i = 0; i < probs.rows(); ++i)
    CHECK(probs.row(i).sum() == doctest::Approx(1.0).epsilon(1e-10));
}
