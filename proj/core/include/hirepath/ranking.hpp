#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hirepath/corpus.hpp"

namespace hirepath {

struct PlacementGraph {
  int subfield = 0;
  std::vector<std::string> nodes;                 // sorted university ids
  std::map<std::pair<int, int>, double> weights;  // (src, dst) node index -> weight

  int node_index(const std::string& id) const;
};

struct RankRow {
  std::string university;
  double score = 0.0;
  double percentile = 0.0;  // in [0, 100]
};

struct RankTable {
  int subfield = 0;
  std::vector<RankRow> rows;  // descending by score
};

// Ph.D. -> placement multigraph for one subfield; one edge unit per person
// placed in that subfield (self-loops allowed). Throws TooFewNodes when
// fewer than 2 universities appear.
PlacementGraph placement_graph(const Cohort& cohort, int subfield);

// SpringRank scores: minimize 1/2 sum_ij A_ij (s_i - s_j - 1)^2
// + alpha/2 ||s||^2, i.e. solve [D_out + D_in - (A + A^T) + alpha I] s
// = d_out - d_in. Conjugate gradient on the SPD system, residual <= 1e-10,
// iteration cap 10 N.
std::map<std::string, double> springrank(const PlacementGraph& graph, double alpha = 0.01);

// percentile = 100 * (# strictly lower) / (N - 1); exact ties share the mean
// of their positions' percentiles.
RankTable percentiles(const std::map<std::string, double>& scores, int subfield = 0);

// The ceil(x/100 * N) highest-scoring universities; boundary ties broken by
// university id.
std::set<std::string> top_set(const RankTable& table, double x_percent);

// Alternative ranking supplied as a university,rank CSV (rank 1 = best);
// replaces the SpringRank table for downstream use.
RankTable external_rank_table(const std::string& path, int subfield = 0);

}  // namespace hirepath
