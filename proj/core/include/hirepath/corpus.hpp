#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hirepath/taxonomy.hpp"

namespace hirepath {

struct Paper {
  std::string paper_id;
  std::string person_id;  // owner in the corpus files
  int pub_year = 0;
  int discipline_id = 0;
  int author_count = 1;
  long citations = 0;
  // classified references: discipline -> count (ordered for determinism)
  std::map<int, long> ref_counts;
  // optional per-reference identifiers, parallel discipline list
  std::vector<std::pair<std::string, int>> ref_ids;

  long total_refs() const {
    long n = 0;
    for (auto& [d, c] : ref_counts) n += c;
    return n;
  }
};

struct Covariates {
  double phd_univ_rank_pct = 0.0;  // filled by the ranking stage
  int grad_year = 0;
  Gender gender = Gender::Unknown;
  int phd_pub_count = 0;
  double avg_norm_citations = 0.0;
  int unique_collaborators = 0;
  Gender advisor_gender = Gender::Unknown;
  int advisor_5yr_pubs = 0;
  int advisor_seniority_years = 0;
};

struct Person {
  std::string person_id;
  Gender gender = Gender::Unknown;
  std::string phd_university;
  int phd_subfield = 0;
  int grad_year = 0;
  std::string placement_university;
  int placement_subfield = 0;
  int placement_year = 0;
  bool incumbent = false;
  std::vector<int> paper_idx;  // indices into Cohort::papers
  Covariates covariates;
};

struct Cohort {
  std::vector<Person> persons;
  std::vector<Paper> papers;
  std::unordered_map<std::string, int> paper_index;
  std::unordered_map<std::string, int> person_index;
  // (discipline, year) -> mean citations in that discipline-year
  std::map<std::pair<int, int>, double> citation_baselines;

  const Paper& paper(int idx) const { return papers[idx]; }
  int relative_year(const Person& p, const Paper& paper) const {
    return paper.pub_year - p.grad_year;
  }
};

struct IngestOptions {
  bool require_baselines = false;
};

struct EligiblePapers {
  std::vector<int> idr_papers;          // >= 5 classified refs, subset of below
  std::vector<int> productivity_papers; // <= 10 authors, relative year in [-4, +1]
};

struct FilterReport {
  int removed_no_eligible = 0;
  int removed_too_many = 0;
  int kept = 0;
};

// Loads persons.csv, papers.csv, references.csv, baselines.csv (and
// incumbents.csv when present) from `dir`. Validates taxonomy bounds and
// cross-references; throws MalformedRow / DanglingReference / DuplicateId.
Cohort load_corpus(const std::string& dir, const IngestOptions& opts = {});

// Ph.D.-window eligibility. Productivity papers: author_count <= 10 and
// relative year in [-4, +1]. IDR papers: the subset with >= 5 classified
// references.
EligiblePapers eligible_papers(const Cohort& cohort, const Person& person);

// Fills phd_pub_count and avg_norm_citations from the attached papers and
// citation baselines (done by load_corpus; exposed for in-memory cohorts).
void compute_derived_covariates(Cohort& cohort);

// Drops persons with zero idr-eligible window papers and persons with more
// than 20 productivity papers. Incumbent rows are not part of the analytic
// sample and pass through untouched.
Cohort apply_sample_filters(const Cohort& cohort, FilterReport* report = nullptr);

// Writes the four corpus files back out (persons/papers/references/baselines),
// incumbents included in persons.csv via the incumbent flag.
void write_corpus(const Cohort& cohort, const std::string& dir);

}  // namespace hirepath
