#include "hirepath/analysis_table.hpp"

#include <cmath>

#include "hirepath/errors.hpp"

namespace hirepath {

std::map<int, RankTable> rank_all_subfields(const Cohort& cohort, double alpha) {
  std::map<int, RankTable> out;
  std::set<int> subfields;
  for (const Person& p : cohort.persons)
    if (!p.incumbent) subfields.insert(p.placement_subfield);
  for (int s : subfields) {
    try {
      PlacementGraph g = placement_graph(cohort, s);
      out[s] = percentiles(springrank(g, alpha), s);
    } catch (const TooFewNodes&) {
      // subfields without enough universities go unranked
    }
  }
  return out;
}

namespace {

double percentile_of(const RankTable& t, const std::string& uni) {
  for (const RankRow& r : t.rows)
    if (r.university == uni) return r.percentile;
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

AnalysisTable build_analysis_table(const Cohort& cohort, const AnalysisOptions& opts) {
  AnalysisTable out;

  if (opts.external_ranks) {
    RankTable ext = external_rank_table(*opts.external_ranks);
    for (const Person& p : cohort.persons) {
      if (p.incumbent) continue;
      if (!out.ranks.count(p.placement_subfield)) {
        RankTable t = ext;
        t.subfield = p.placement_subfield;
        out.ranks[p.placement_subfield] = std::move(t);
      }
      if (!out.ranks.count(p.phd_subfield)) {
        RankTable t = ext;
        t.subfield = p.phd_subfield;
        out.ranks[p.phd_subfield] = std::move(t);
      }
    }
  } else {
    out.ranks = rank_all_subfields(cohort, opts.springrank_alpha);
  }

  std::map<int, std::map<double, std::set<std::string>>> top_sets;  // subfield -> x -> set
  std::set<double> thresholds(opts.top_thresholds.begin(), opts.top_thresholds.end());
  thresholds.insert(10.0);  // placement_type always needs the top-10% sets
  for (const auto& [s, table] : out.ranks)
    for (double x : thresholds) top_sets[s][x] = top_set(table, x);

  MobilityNetwork raw = mobility_network(cohort);
  MobilityNetwork norm = null_normalize(raw, cohort, opts.mobility_shuffles, opts.seed);
  Eigen::MatrixXd dist = subfield_distance(norm);
  out.move_labels = classify_move(cohort, dist);

  SimilarityCache matrices(cohort);

  std::vector<double> idr, phd_rank, placement_rank, grad_year, woman, pubs, cits, collab,
      adv_woman, adv_pubs, adv_sen, move_type, placement_type;
  std::map<double, std::vector<double>> top_cols;

  std::size_t label_pos = 0;
  for (const Person& p : cohort.persons) {
    if (p.incumbent) continue;
    const MoveLabel& label = out.move_labels[label_pos++];

    IdrScore score = opts.idr_variant == IdrVariant::PersonPooled
                         ? phd_idr_pooled(cohort, p, matrices)
                         : phd_idr_median(cohort, p, matrices);

    auto rank_it = out.ranks.find(p.phd_subfield);
    double phd_pct = rank_it != out.ranks.end()
                         ? percentile_of(rank_it->second, p.phd_university)
                         : std::numeric_limits<double>::quiet_NaN();
    auto pl_it = out.ranks.find(p.placement_subfield);
    double pl_pct = pl_it != out.ranks.end()
                        ? percentile_of(pl_it->second, p.placement_university)
                        : std::numeric_limits<double>::quiet_NaN();

    out.person_ids.push_back(p.person_id);
    idr.push_back(score.value);
    phd_rank.push_back(phd_pct);
    placement_rank.push_back(pl_pct);
    grad_year.push_back(p.grad_year);
    woman.push_back(p.gender == Gender::Woman ? 1.0 : 0.0);
    pubs.push_back(p.covariates.phd_pub_count);
    cits.push_back(p.covariates.avg_norm_citations);
    collab.push_back(p.covariates.unique_collaborators);
    adv_woman.push_back(p.covariates.advisor_gender == Gender::Woman ? 1.0 : 0.0);
    adv_pubs.push_back(p.covariates.advisor_5yr_pubs);
    adv_sen.push_back(p.covariates.advisor_seniority_years);

    bool in_top10 = false;
    auto& sets = top_sets[p.placement_subfield];
    for (double x : thresholds) {
      bool in = sets.count(x) && sets[x].count(p.placement_university);
      if (x == 10.0) in_top10 = in;
      if (std::count(opts.top_thresholds.begin(), opts.top_thresholds.end(), x))
        top_cols[x].push_back(in ? 1.0 : 0.0);
    }

    move_type.push_back(static_cast<double>(label.type));
    double ptype = 0.0;
    if (in_top10) {
      switch (label.type) {
        case MoveType::SameFieldStayer: ptype = 1.0; break;
        case MoveType::CloseFieldMover: ptype = 2.0; break;
        case MoveType::DistantFieldMover: ptype = 3.0; break;
      }
    }
    placement_type.push_back(ptype);
  }

  ColumnTable& t = out.table;
  t.add("idr", std::move(idr));
  t.add("phd_rank_pct", std::move(phd_rank));
  t.add("placement_rank_pct", std::move(placement_rank));
  t.add("grad_year", std::move(grad_year));
  t.add("woman", std::move(woman));
  t.add("phd_pub_count", std::move(pubs));
  t.add("avg_norm_citations", std::move(cits));
  t.add("unique_collaborators", std::move(collab));
  t.add("advisor_woman", std::move(adv_woman));
  t.add("advisor_5yr_pubs", std::move(adv_pubs));
  t.add("advisor_seniority_years", std::move(adv_sen));
  t.add("move_type", std::move(move_type));
  t.add("placement_type", std::move(placement_type));
  for (auto& [x, col] : top_cols) {
    char name[32];
    std::snprintf(name, sizeof name, "top%g", x);
    t.add(name, std::move(col));
  }
  return out;
}

}  // namespace hirepath
