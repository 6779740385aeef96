#include <doctest.h>

#include <fstream>

#include "helpers.hpp"
#include "hirepath/corpus.hpp"
#include "hirepath/errors.hpp"

using namespace hirepath;
using namespace testutil;

namespace {

Cohort small_fixture() {
  Cohort c;
  add_person(c, "P1", 1, 2010);
  add_paper(c, "P1", "A1", 2009, {{1, 3}, {2, 4}});
  add_paper(c, "P1", "A2", 2011, {{1, 6}});
  add_person(c, "P2", 2, 2012, "U2", "U3", 2, 2013, Gender::Woman);
  add_paper(c, "P2", "B1", 2010, {{3, 5}, {4, 2}});
  c.citation_baselines[{1, 2009}] = 4.0;
  compute_derived_covariates(c);
  return c;
}

}  // namespace

TEST_CASE("load_corpus round-trips a hand-written fixture") {
  auto dir = temp_dir("corpus_rt");
  Cohort c = small_fixture();
  write_corpus(c, dir);
  Cohort d = load_corpus(dir);
  REQUIRE(d.persons.size() == c.persons.size());
  REQUIRE(d.papers.size() == c.papers.size());
  CHECK(d.persons[d.person_index.at("P2")].gender == Gender::Woman);
  CHECK(d.papers[d.paper_index.at("A1")].ref_counts == std::map<int, long>{{1, 3}, {2, 4}});
  CHECK(d.citation_baselines == c.citation_baselines);

  // load -> serialize -> load is a fixed point
  auto dir2 = temp_dir("corpus_rt2");
  write_corpus(d, dir2);
  Cohort e = load_corpus(dir2);
  REQUIRE(e.papers.size() == d.papers.size());
  for (const auto& p : d.papers) {
    const auto& q = e.papers[e.paper_index.at(p.paper_id)];
    CHECK(q.ref_counts == p.ref_counts);
    CHECK(q.pub_year == p.pub_year);
  }
}

TEST_CASE("discipline_id out of the 144-discipline taxonomy is a MalformedRow") {
  auto dir = temp_dir("corpus_bad_disc");
  write_corpus(small_fixture(), dir);
  std::ofstream(dir + "/papers.csv", std::ios::app) << "A3,P1,2010,145,1,0\n";
  CHECK_THROWS_AS(load_corpus(dir), MalformedRow);
}

TEST_CASE("reference rows citing an unknown paper are dangling") {
  auto dir = temp_dir("corpus_dangling");
  write_corpus(small_fixture(), dir);
  std::ofstream(dir + "/references.csv", std::ios::app) << "NOPE,3,2,\n";
  CHECK_THROWS_AS(load_corpus(dir), DanglingReference);
}

TEST_CASE("duplicate person ids are rejected") {
  auto dir = temp_dir("corpus_dup");
  write_corpus(small_fixture(), dir);
  std::ofstream(dir + "/persons.csv", std::ios::app)
      << "P1,man,U1,1,2010,U2,1,2011,0,0,man,0,0\n";
  CHECK_THROWS_AS(load_corpus(dir), DuplicateId);
}

TEST_CASE("eligibility window and author cap") {
  Cohort c;
  add_person(c, "P1", 1, 2010);
  add_paper(c, "P1", "big", 2009, {{1, 9}}, 1, 11);     // 11 authors
  add_paper(c, "P1", "late", 2012, {{1, 9}}, 1, 2);     // relative year +2
  add_paper(c, "P1", "thin", 2009, {{1, 4}}, 1, 3);     // 4 refs, eligible window
  add_paper(c, "P1", "full", 2006, {{1, 3}, {2, 2}});   // boundary year -4
  add_paper(c, "P1", "edge", 2011, {{1, 5}});           // boundary year +1

  auto e = eligible_papers(c, c.persons[0]);
  auto has = [&](const std::vector<int>& v, const std::string& id) {
    for (int i : v)
      if (c.papers[i].paper_id == id) return true;
    return false;
  };
  CHECK_FALSE(has(e.productivity_papers, "big"));
  CHECK_FALSE(has(e.idr_papers, "big"));
  CHECK_FALSE(has(e.productivity_papers, "late"));
  CHECK(has(e.productivity_papers, "thin"));
  CHECK_FALSE(has(e.idr_papers, "thin"));
  CHECK(has(e.idr_papers, "full"));
  CHECK(has(e.idr_papers, "edge"));

  // idr papers are a subset of productivity papers
  for (int i : e.idr_papers) CHECK(has(e.productivity_papers, c.papers[i].paper_id));
}

TEST_CASE("sample filters drop hyperprolific and idr-empty persons") {
  Cohort c;
  add_person(c, "KEEP", 1, 2010);
  add_paper(c, "KEEP", "K1", 2010, {{1, 3}, {2, 3}});
  add_person(c, "PROLIFIC", 1, 2010);
  for (int j = 0; j < 21; ++j)
    add_paper(c, "PROLIFIC", "PP" + std::to_string(j), 2009, {{1, 6}});
  add_person(c, "NOIDR", 1, 2010);
  add_paper(c, "NOIDR", "N1", 2010, {{1, 3}});  // 3 refs: productivity only
  add_person(c, "INC", 1, 2010, "U1", "U1", 1, 2010, Gender::Unknown, true);

  FilterReport report;
  Cohort f = apply_sample_filters(c, &report);
  CHECK(report.kept == 1);
  CHECK(report.removed_too_many == 1);
  CHECK(report.removed_no_eligible == 1);
  CHECK(f.person_index.count("KEEP") == 1);
  CHECK(f.person_index.count("PROLIFIC") == 0);
  CHECK(f.person_index.count("NOIDR") == 0);
  CHECK(f.person_index.count("INC") == 1);  // incumbents pass through

  // idempotence
  Cohort g = apply_sample_filters(f);
  CHECK(g.persons.size() == f.persons.size());
  CHECK(g.papers.size() == f.papers.size());
}

TEST_CASE("person with exactly one eligible paper is retained") {
  Cohort c;
  add_person(c, "ONE", 1, 2010);
  add_paper(c, "ONE", "O1", 2010, {{1, 5}});
  Cohort f = apply_sample_filters(c);
  CHECK(f.person_index.count("ONE") == 1);
}

TEST_CASE("filtering everyone out is an EmptyCohort") {
  Cohort c;
  add_person(c, "NOIDR", 1, 2010);
  add_paper(c, "NOIDR", "N1", 2010, {{1, 3}});
  CHECK_THROWS_AS(apply_sample_filters(c), EmptyCohort);
}

TEST_CASE("derived covariates: window counts and normalized citations") {
  Cohort c;
  add_person(c, "P1", 1, 2010);
  add_paper(c, "P1", "A1", 2009, {{1, 6}}, 1, 1, 8);
  add_paper(c, "P1", "A2", 2010, {{2, 6}}, 2, 1, 2);
  add_paper(c, "P1", "out", 2013, {{1, 6}}, 1, 1, 99);  // outside window
  c.citation_baselines[{1, 2009}] = 4.0;
  c.citation_baselines[{2, 2010}] = 4.0;
  compute_derived_covariates(c);
  const auto& cov = c.persons[0].covariates;
  CHECK(cov.phd_pub_count == 2);
  CHECK(cov.avg_norm_citations == doctest::Approx((8.0 / 4.0 + 2.0 / 4.0) / 2).epsilon(1e-12));
}
