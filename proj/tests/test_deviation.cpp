#include <doctest.h>

#include "helpers.hpp"
#include "hirepath/deviation.hpp"
#include "hirepath/errors.hpp"

using namespace hirepath;
using namespace testutil;

TEST_CASE("person profile pools window references") {
  Cohort c;
  add_person(c, "P1", 1, 2010);
  add_paper(c, "P1", "A1", 2009, {{2, 4}});
  auto single = person_profile(c, c.persons[0]);
  CHECK(single.vector(1) == 1.0);
  CHECK(single.n_pubs == 1);

  add_paper(c, "P1", "A2", 2010, {{2, 1}, {9, 3}});
  auto pooled = person_profile(c, c.persons[0]);
  CHECK(pooled.vector(1) == doctest::Approx(5.0 / 8).epsilon(1e-12));
  CHECK(pooled.vector(8) == doctest::Approx(3.0 / 8).epsilon(1e-12));

  add_paper(c, "P1", "OUT", 2013, {{5, 10}});  // outside the window
  auto same = person_profile(c, c.persons[0]);
  CHECK(same.vector(4) == 0.0);
}

TEST_CASE("person without classified window references throws") {
  Cohort c;
  add_person(c, "P1", 1, 2010);
  add_paper(c, "P1", "A1", 2013, {{5, 10}});
  CHECK_THROWS_AS(person_profile(c, c.persons[0]), NoReferences);
}

TEST_CASE("unit profile averages incumbent share vectors") {
  Cohort c;
  auto mk_incumbent = [&](const std::string& id, std::map<int, long> refs) {
    add_person(c, id, 2, 2000, "X", "UNIV", 2, 2012, Gender::Unknown, true);
    add_paper(c, id, id + "_p", 2010, std::move(refs));  // in [2007, 2011]
  };
  mk_incumbent("I1", {{1, 6}});
  auto one = unit_profile(c, "UNIV", 2, 2012);
  CHECK(one.vector(0) == 1.0);
  CHECK(one.n_pubs == 1);

  mk_incumbent("I2", {{2, 3}});  // disjoint single-discipline vector
  auto two = unit_profile(c, "UNIV", 2, 2012);
  CHECK(two.vector(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(two.vector(1) == doctest::Approx(0.5).epsilon(1e-12));

  // third incumbent: mean of per-person shares, renormalized
  mk_incumbent("I3", {{1, 1}, {2, 3}});
  auto three = unit_profile(c, "UNIV", 2, 2012);
  double e1 = (1.0 + 0.0 + 0.25) / 3, e2 = (0.0 + 1.0 + 0.75) / 3;
  CHECK(three.vector(0) == doctest::Approx(e1 / (e1 + e2)).epsilon(1e-12));
  CHECK(three.vector(1) == doctest::Approx(e2 / (e1 + e2)).epsilon(1e-12));
}

TEST_CASE("unit profile window and membership boundaries") {
  Cohort c;
  add_person(c, "I1", 2, 2000, "X", "UNIV", 2, 2012, Gender::Unknown, true);
  add_paper(c, "I1", "early", 2006, {{1, 5}});  // before year-5
  add_paper(c, "I1", "at", 2012, {{3, 5}});     // placement year itself excluded
  add_paper(c, "I1", "in", 2007, {{2, 5}});     // boundary year-5 included
  auto p = unit_profile(c, "UNIV", 2, 2012);
  CHECK(p.vector(1) == 1.0);

  CHECK_THROWS_AS(unit_profile(c, "UNIV", 3, 2012), NoIncumbents);
  CHECK_THROWS_AS(unit_profile(c, "OTHER", 2, 2012), NoIncumbents);
}

TEST_CASE("research deviation hand values and invariances") {
  ProfileVector a, b, d;
  a.vector(0) = 3; a.vector(1) = 4;
  b.vector(0) = 4; b.vector(1) = 3;
  d.vector(5) = 1;
  CHECK(research_deviation(a, a) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(research_deviation(a, d) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(research_deviation(a, b) == doctest::Approx(0.04).epsilon(1e-12));
  CHECK(research_deviation(a, b) == doctest::Approx(research_deviation(b, a)).epsilon(1e-12));

  ProfileVector scaled;
  scaled.vector = 10.0 * b.vector;
  CHECK(research_deviation(a, scaled) == doctest::Approx(0.04).epsilon(1e-12));

  ProfileVector zero;
  CHECK_THROWS_AS(research_deviation(a, zero), ZeroVector);
}
