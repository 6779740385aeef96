#pragma once

// Shared fixture builders for the unit tests.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hirepath/corpus.hpp"

namespace testutil {

using hirepath::Cohort;
using hirepath::Gender;
using hirepath::Paper;
using hirepath::Person;

inline Person& add_person(Cohort& c, const std::string& id, int phd_subfield = 1,
                          int grad_year = 2010, const std::string& phd_uni = "U1",
                          const std::string& placement_uni = "U2", int placement_subfield = 1,
                          int placement_year = 2011, Gender gender = Gender::Man,
                          bool incumbent = false) {
  Person p;
  p.person_id = id;
  p.gender = gender;
  p.phd_university = phd_uni;
  p.phd_subfield = phd_subfield;
  p.grad_year = grad_year;
  p.placement_university = placement_uni;
  p.placement_subfield = placement_subfield;
  p.placement_year = placement_year;
  p.incumbent = incumbent;
  c.person_index.emplace(id, static_cast<int>(c.persons.size()));
  c.persons.push_back(std::move(p));
  return c.persons.back();
}

inline Paper& add_paper(Cohort& c, const std::string& person_id, const std::string& paper_id,
                        int pub_year, std::map<int, long> refs, int discipline_id = 1,
                        int author_count = 1, long citations = 0) {
  Paper p;
  p.paper_id = paper_id;
  p.person_id = person_id;
  p.pub_year = pub_year;
  p.discipline_id = discipline_id;
  p.author_count = author_count;
  p.citations = citations;
  p.ref_counts = std::move(refs);
  int idx = static_cast<int>(c.papers.size());
  c.paper_index.emplace(paper_id, idx);
  c.persons[c.person_index.at(person_id)].paper_idx.push_back(idx);
  c.papers.push_back(std::move(p));
  return c.papers.back();
}

// Adds one incumbent "anchor" person whose papers make each listed
// discipline cite only itself in `year`, so the similarity matrix restricted
// to those disciplines is the identity.
inline void add_anchors(Cohort& c, const std::vector<int>& disciplines, int year,
                        const std::string& id_prefix = "ANCHOR") {
  auto& anchor = add_person(c, id_prefix + std::to_string(year), 1, year, "U1", "U1", 1, year,
                            Gender::Unknown, true);
  (void)anchor;
  int j = 0;
  for (int d : disciplines)
    add_paper(c, id_prefix + std::to_string(year), id_prefix + std::to_string(year) + "_" +
              std::to_string(++j), year, {{d, 10}}, d);
}

// Fresh scratch directory under the system temp root.
inline std::string temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("hirepath_test_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace testutil
