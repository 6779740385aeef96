#pragma once

#include <map>
#include <optional>

#include "hirepath/corpus.hpp"
#include "hirepath/design.hpp"
#include "hirepath/idr.hpp"
#include "hirepath/mobility.hpp"
#include "hirepath/ranking.hpp"

namespace hirepath {

struct AnalysisOptions {
  double springrank_alpha = 0.01;
  IdrVariant idr_variant = IdrVariant::PersonMedian;
  std::vector<double> top_thresholds = {5.0, 10.0, 15.0, 20.0};
  int mobility_shuffles = 100;
  std::uint64_t seed = 1;
  // replaces every subfield's SpringRank table (external rank list file)
  std::optional<std::string> external_ranks;
};

// Person-level analytic dataset: one row per non-incumbent person, with the
// pipeline-derived columns the regression suite consumes. Column names:
//   idr, phd_rank_pct, placement_rank_pct, grad_year, woman,
//   phd_pub_count, avg_norm_citations, unique_collaborators,
//   advisor_woman, advisor_5yr_pubs, advisor_seniority_years,
//   top5 / top10 / top15 / top20 (per requested threshold),
//   move_type (0 stayer, 1 close, 2 distant),
//   placement_type (0 non-top, 1 same-field top, 2 close-field top,
//                   3 distant-field top; top = top 10%)
struct AnalysisTable {
  ColumnTable table;
  std::vector<std::string> person_ids;
  std::map<int, RankTable> ranks;  // by subfield
  std::vector<MoveLabel> move_labels;
};

// Per-subfield SpringRank tables over all subfields with >= 2 universities.
std::map<int, RankTable> rank_all_subfields(const Cohort& cohort, double alpha = 0.01);

AnalysisTable build_analysis_table(const Cohort& cohort, const AnalysisOptions& opts = {});

}  // namespace hirepath
