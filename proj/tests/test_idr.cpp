#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "hirepath/errors.hpp"
#include "hirepath/idr.hpp"
#include "hirepath/similarity.hpp"

using namespace hirepath;
using namespace testutil;

namespace {

SimilarityMatrix identity_s() {
  SimilarityMatrix s;
  s.entries = Eigen::MatrixXd::Identity(kNumDisciplines, kNumDisciplines);
  return s;
}

Paper make_paper(std::map<int, long> refs) {
  Paper p;
  p.paper_id = "X";
  p.pub_year = 2010;
  p.discipline_id = 1;
  p.ref_counts = std::move(refs);
  return p;
}

}  // namespace

TEST_CASE("single-discipline paper scores zero") {
  auto s = identity_s();
  CHECK(paper_idr(make_paper({{7, 9}}), s).value == 0.0);
}

TEST_CASE("50/50 split across orthogonal disciplines scores one half") {
  auto s = identity_s();
  auto idr = paper_idr(make_paper({{3, 5}, {9, 5}}), s);
  CHECK(idr.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(idr.n_refs == 10);
}

TEST_CASE("all-ones similarity makes every split score zero") {
  SimilarityMatrix s;
  s.entries = Eigen::MatrixXd::Ones(kNumDisciplines, kNumDisciplines);
  CHECK(paper_idr(make_paper({{1, 2}, {2, 5}, {3, 3}}), s).value ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fewer than five classified references throws") {
  auto s = identity_s();
  CHECK_THROWS_AS(paper_idr(make_paper({{1, 2}, {2, 2}}), s), TooFewReferences);
  CHECK_NOTHROW(paper_idr(make_paper({{1, 3}, {2, 2}}), s));
}

TEST_CASE("idr is invariant to reference-count scaling and bounded in [0,1]") {
  auto s = identity_s();
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    std::map<int, long> refs;
    int k = 2 + static_cast<int>(rng() % 5);
    for (int j = 0; j < k; ++j) refs[1 + static_cast<int>(rng() % kNumDisciplines)] += 1 + rng() % 9;
    auto scaled = refs;
    for (auto& [d, c] : scaled) c *= 7;
    double a = paper_idr(make_paper(refs), s).value;
    double b = paper_idr(make_paper(scaled), s).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
  }
}

TEST_CASE("paper idr equals the brute-force double loop") {
  // dense random symmetric similarity with unit diagonal
  std::mt19937_64 rng(5);
  auto u = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  SimilarityMatrix s;
  s.entries = Eigen::MatrixXd::Zero(kNumDisciplines, kNumDisciplines);
  for (int i = 0; i < kNumDisciplines; ++i) {
    s.entries(i, i) = 1.0;
    for (int j = i + 1; j < kNumDisciplines; ++j) s.entries(i, j) = s.entries(j, i) = u();
  }
  for (int rep = 0; rep < 20; ++rep) {
    std::map<int, long> refs;
    for (int j = 0; j < 6; ++j) refs[1 + static_cast<int>(rng() % kNumDisciplines)] += 1 + rng() % 5;
    Paper p = make_paper(refs);
    double total = static_cast<double>(p.total_refs());
    double acc = 0.0;
    for (int i = 1; i <= kNumDisciplines; ++i)
      for (int j = 1; j <= kNumDisciplines; ++j) {
        double pi = refs.count(i) ? refs[i] / total : 0.0;
        double pj = refs.count(j) ? refs[j] / total : 0.0;
        acc += s.at(i, j) * pi * pj;
      }
    CHECK(paper_idr(p, s).value == doctest::Approx(1.0 - acc).epsilon(1e-12));
  }
}

TEST_CASE("person median idr follows the median rules") {
  Cohort c;
  add_anchors(c, {1, 2, 3, 4}, 2009);
  add_anchors(c, {1, 2, 3, 4}, 2010);
  add_person(c, "P1", 1, 2010);
  // orthogonal disciplines: idr = 1 - sum of squared shares
  add_paper(c, "P1", "A1", 2009, {{1, 1}, {2, 9}}, 100);   // 1 - 0.82 = 0.18
  add_paper(c, "P1", "A2", 2009, {{1, 5}, {2, 5}}, 100);   // 0.5
  add_paper(c, "P1", "A3", 2010, {{3, 2}, {4, 8}}, 100);   // 1 - 0.68 = 0.32
  SimilarityCache cache(c);
  auto odd = phd_idr_median(c, c.persons[c.person_index.at("P1")], cache);
  CHECK(odd.value == doctest::Approx(0.32).epsilon(1e-12));
  CHECK(odd.n_papers == 3);

  // even count: add a fourth paper, median = mean of the two middles
  add_paper(c, "P1", "A4", 2010, {{3, 5}, {4, 5}}, 100);   // 0.5
  SimilarityCache cache2(c);
  auto even = phd_idr_median(c, c.persons[c.person_index.at("P1")], cache2);
  CHECK(even.value == doctest::Approx((0.32 + 0.5) / 2).epsilon(1e-12));
}

TEST_CASE("singleton median equals the paper idr") {
  Cohort c;
  add_anchors(c, {1, 2}, 2010);
  add_person(c, "P1", 1, 2010);
  add_paper(c, "P1", "A1", 2010, {{1, 3}, {2, 7}}, 100);  // 1 - (0.09 + 0.49) = 0.42
  SimilarityCache cache(c);
  CHECK(phd_idr_median(c, c.persons[c.person_index.at("P1")], cache).value ==
        doctest::Approx(0.42).epsilon(1e-12));
}

TEST_CASE("median throws without eligible papers") {
  Cohort c;
  add_person(c, "P1", 1, 2010);
  add_paper(c, "P1", "A1", 2010, {{1, 3}});  // too few refs
  SimilarityCache cache(c);
  CHECK_THROWS_AS(phd_idr_median(c, c.persons[0], cache), NoEligiblePapers);
}

TEST_CASE("pooled idr: singleton, full-overlap dedup, disjoint merge") {
  Cohort c;
  add_anchors(c, {1, 2, 3}, 2010);
  add_person(c, "P1", 1, 2010);
  auto& a1 = add_paper(c, "P1", "A1", 2010, {{1, 2}, {2, 3}}, 100);
  a1.ref_ids = {{"r1", 1}, {"r2", 1}, {"r3", 2}, {"r4", 2}, {"r5", 2}};
  SimilarityCache cache(c);
  auto single = phd_idr_pooled(c, c.persons[c.person_index.at("P1")], cache);
  auto direct = paper_idr(c.papers[c.paper_index.at("A1")], cache.year(2010));
  CHECK(single.value == doctest::Approx(direct.value).epsilon(1e-12));
  CHECK_FALSE(single.dedup_fallback);

  // an exact duplicate paper dedups away entirely
  auto& a2 = add_paper(c, "P1", "A2", 2010, {{1, 2}, {2, 3}}, 100);
  a2.ref_ids = a1.ref_ids;
  SimilarityCache cache2(c);
  auto dedup = phd_idr_pooled(c, c.persons[c.person_index.at("P1")], cache2);
  CHECK(dedup.value == doctest::Approx(direct.value).epsilon(1e-12));
  CHECK(dedup.n_refs == 5);

  // disjoint references pool into a merged share vector
  Cohort d;
  add_anchors(d, {1, 2, 3}, 2010);
  add_person(d, "P1", 1, 2010);
  auto& b1 = add_paper(d, "P1", "B1", 2010, {{1, 2}, {2, 3}}, 100);
  b1.ref_ids = {{"q1", 1}, {"q2", 1}, {"q3", 2}, {"q4", 2}, {"q5", 2}};
  auto& b2 = add_paper(d, "P1", "B2", 2010, {{2, 1}, {3, 4}}, 100);
  b2.ref_ids = {{"q6", 2}, {"q7", 3}, {"q8", 3}, {"q9", 3}, {"q10", 3}};
  SimilarityCache cache3(d);
  auto pooled = phd_idr_pooled(d, d.persons[d.person_index.at("P1")], cache3);
  Paper merged = make_paper({{1, 2}, {2, 4}, {3, 4}});
  CHECK(pooled.value ==
        doctest::Approx(paper_idr(merged, cache3.year(2010)).value).epsilon(1e-12));
  CHECK(pooled.n_refs == 10);
}

TEST_CASE("pooled idr falls back to count summation without ref ids") {
  Cohort c;
  add_anchors(c, {1, 2}, 2010);
  add_person(c, "P1", 1, 2010);
  add_paper(c, "P1", "A1", 2010, {{1, 2}, {2, 3}}, 100);
  add_paper(c, "P1", "A2", 2010, {{1, 3}, {2, 2}}, 100);
  SimilarityCache cache(c);
  auto pooled = phd_idr_pooled(c, c.persons[c.person_index.at("P1")], cache);
  CHECK(pooled.dedup_fallback);
  CHECK(pooled.value == doctest::Approx(0.5).epsilon(1e-12));  // merged 5/5 split
}
