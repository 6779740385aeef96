#include "hirepath/ranking.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

#include "hirepath/csv.hpp"
#include "hirepath/errors.hpp"

namespace hirepath {

int PlacementGraph::node_index(const std::string& id) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
  if (it == nodes.end() || *it != id) return -1;
  return static_cast<int>(it - nodes.begin());
}

PlacementGraph placement_graph(const Cohort& cohort, int subfield) {
  PlacementGraph g;
  g.subfield = subfield;
  std::set<std::string> unis;
  for (const Person& p : cohort.persons) {
    if (p.incumbent || p.placement_subfield != subfield) continue;
    unis.insert(p.phd_university);
    unis.insert(p.placement_university);
  }
  if (unis.size() < 2) throw TooFewNodes();
  g.nodes.assign(unis.begin(), unis.end());
  for (const Person& p : cohort.persons) {
    if (p.incumbent || p.placement_subfield != subfield) continue;
    int src = g.node_index(p.phd_university);
    int dst = g.node_index(p.placement_university);
    g.weights[{src, dst}] += 1.0;
  }
  return g;
}

std::map<std::string, double> springrank(const PlacementGraph& graph, double alpha) {
  const int n = static_cast<int>(graph.nodes.size());
  if (n < 2) throw TooFewNodes();

  Eigen::VectorXd d_out = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd d_in = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(graph.weights.size() * 2 + n);
  for (const auto& [edge, w] : graph.weights) {
    auto [i, j] = edge;
    d_out[i] += w;
    d_in[j] += w;
    if (i != j) {
      trips.emplace_back(i, j, -w);
      trips.emplace_back(j, i, -w);
    }
    // self-loops cancel in D - (A + A^T) and contribute nothing to the rhs
  }
  for (int i = 0; i < n; ++i) {
    double diag = d_out[i] + d_in[i] + alpha;
    auto w = graph.weights.find({i, i});
    if (w != graph.weights.end()) diag -= 2.0 * w->second;
    trips.emplace_back(i, i, diag);
  }

  Eigen::SparseMatrix<double> M(n, n);
  M.setFromTriplets(trips.begin(), trips.end());
  Eigen::VectorXd b = d_out - d_in;

  std::map<std::string, double> out;
  if (b.norm() == 0.0) {  // perfectly balanced flows: the regularized optimum is 0
    for (int i = 0; i < n; ++i) out[graph.nodes[i]] = 0.0;
    return out;
  }

  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(1e-10);  // relative residual
  cg.setMaxIterations(10 * n);
  cg.compute(M);
  Eigen::VectorXd s = cg.solve(b);
  if (cg.info() != Eigen::Success)
    throw SolverDivergence("springrank CG exceeded " + std::to_string(10 * n) + " iterations");

  for (int i = 0; i < n; ++i) out[graph.nodes[i]] = s[i];
  return out;
}

RankTable percentiles(const std::map<std::string, double>& scores, int subfield) {
  const int n = static_cast<int>(scores.size());
  if (n < 2) throw TooFewNodes();
  RankTable table;
  table.subfield = subfield;

  std::vector<RankRow> rows;
  rows.reserve(n);
  for (const auto& [uni, s] : scores) rows.push_back({uni, s, 0.0});
  // ascending by score for position percentiles; id tiebreak for determinism
  std::sort(rows.begin(), rows.end(), [](const RankRow& a, const RankRow& b) {
    return a.score != b.score ? a.score < b.score : a.university < b.university;
  });

  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && rows[j].score == rows[i].score) ++j;
    double mean_pct = 0.0;
    for (int k = i; k < j; ++k) mean_pct += 100.0 * k / (n - 1);
    mean_pct /= (j - i);
    for (int k = i; k < j; ++k) rows[k].percentile = mean_pct;
    i = j;
  }

  std::reverse(rows.begin(), rows.end());  // descending by score
  table.rows = std::move(rows);
  return table;
}

std::set<std::string> top_set(const RankTable& table, double x_percent) {
  const int n = static_cast<int>(table.rows.size());
  int k = static_cast<int>(std::ceil(x_percent / 100.0 * n));
  k = std::clamp(k, 0, n);

  std::vector<RankRow> rows = table.rows;
  std::sort(rows.begin(), rows.end(), [](const RankRow& a, const RankRow& b) {
    return a.score != b.score ? a.score > b.score : a.university < b.university;
  });
  std::set<std::string> out;
  for (int i = 0; i < k; ++i) out.insert(rows[i].university);
  return out;
}

RankTable external_rank_table(const std::string& path, int subfield) {
  csv::Table t = csv::read_file(path);
  int c_uni = t.column("university");
  int c_rank = t.column("rank");
  if (c_uni < 0 || c_rank < 0) throw MalformedRow(path, 1, "need columns university,rank");

  std::map<std::string, double> scores;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    double rank = 0.0;
    try {
      rank = std::stod(t.rows[r][c_rank]);
    } catch (const std::exception&) {
      throw MalformedRow(path, t.line_numbers[r], "bad rank: " + t.rows[r][c_rank]);
    }
    if (!scores.emplace(t.rows[r][c_uni], -rank).second)  // rank 1 = best -> highest score
      throw DuplicateId(t.rows[r][c_uni]);
  }
  return percentiles(scores, subfield);
}

}  // namespace hirepath
