#include "hirepath/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <span>

#include "hirepath/csv.hpp"
#include "hirepath/descriptives.hpp"
#include "hirepath/deviation.hpp"
#include "hirepath/errors.hpp"
#include "hirepath/margins.hpp"
#include "hirepath/multinomial.hpp"
#include "hirepath/psm.hpp"
#include "hirepath/similarity.hpp"

namespace hirepath {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  return fnv1a(h, s.data(), s.size());
}

// content hash over the analysis-relevant corpus fields, order-stable because
// persons/papers keep their file order
std::uint64_t cohort_hash(const Cohort& cohort) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& p : cohort.persons) {
    h = fnv1a(h, p.person_id);
    int ints[5] = {static_cast<int>(p.gender), p.phd_subfield, p.grad_year, p.placement_subfield,
                   p.placement_year};
    h = fnv1a(h, ints, sizeof ints);
    h = fnv1a(h, p.phd_university);
    h = fnv1a(h, p.placement_university);
  }
  for (const auto& p : cohort.papers) {
    h = fnv1a(h, p.paper_id);
    long ints[4] = {p.pub_year, p.discipline_id, p.author_count, p.citations};
    h = fnv1a(h, ints, sizeof ints);
    for (const auto& [d, c] : p.ref_counts) {
      long pair[2] = {d, c};
      h = fnv1a(h, pair, sizeof pair);
    }
  }
  return h;
}

std::uint64_t file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    h = fnv1a(h, buf, static_cast<std::size_t>(in.gcount()));
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<Term> parse_terms(const std::vector<std::string>& texts) {
  std::vector<Term> terms;
  terms.reserve(texts.size());
  for (const auto& t : texts) terms.push_back(parse_term(t));
  return terms;
}

// non-incumbent persons sharing the table's row order
std::vector<const Person*> analysis_persons(const Cohort& cohort, const AnalysisTable& at) {
  std::vector<const Person*> out;
  out.reserve(at.person_ids.size());
  for (const auto& id : at.person_ids)
    out.push_back(&cohort.persons[cohort.person_index.at(id)]);
  return out;
}

ColumnTable subset(const ColumnTable& table, const std::vector<int>& rows) {
  ColumnTable out;
  for (const auto& [name, col] : table.columns) {
    std::vector<double> v;
    v.reserve(rows.size());
    for (int r : rows) v.push_back(col[static_cast<std::size_t>(r)]);
    out.add(name, std::move(v));
  }
  return out;
}

struct Emitted {
  std::vector<std::string> files;  // file names, in write order
};

void write_rows(Emitted& em, const std::string& dir, const std::string& name,
                const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
  csv::write_file(dir + "/" + name, header, rows);
  em.files.push_back(name);
}

void fit_rows(const FitResult& fit, std::vector<std::vector<std::string>>& rows,
              const std::vector<std::string>& prefix = {}) {
  for (int j = 0; j < fit.coef.size(); ++j) {
    auto row = prefix;
    row.insert(row.end(), {fit.names[static_cast<std::size_t>(j)], fmt(fit.coef[j]),
                           fmt(fit.std_errors[j]), fmt(fit.ci_lower[j]), fmt(fit.ci_upper[j]),
                           fmt(fit.p_values[j])});
    rows.push_back(std::move(row));
  }
}

void report_idr_trend(const Cohort& cohort, const AnalysisTable& at, const ReportOptions& opts,
                      Emitted& em) {
  const auto& idr = at.table.get("idr");
  const auto& year = at.table.get("grad_year");
  std::map<int, std::vector<double>> by_year;
  for (std::size_t i = 0; i < at.table.n; ++i)
    by_year[static_cast<int>(year[i])].push_back(idr[i]);

  std::vector<std::vector<std::string>> rows;
  for (const auto& [y, vals] : by_year) {
    auto ci = bootstrap_mean_ci(vals, 1000, opts.analysis.seed + static_cast<std::uint64_t>(y));
    rows.push_back({std::to_string(y), fmt(ci.estimate), fmt(ci.lower), fmt(ci.upper),
                    std::to_string(vals.size())});
  }
  write_rows(em, opts.out_dir, "idr_trend.csv", {"grad_year", "mean_idr", "ci_lo", "ci_hi", "n"},
             rows);
  (void)cohort;
}

void report_placement_logit(const Cohort& cohort, const AnalysisTable& at,
                            const ReportOptions& opts, Emitted& em) {
  auto persons = analysis_persons(cohort, at);
  std::map<int, std::vector<int>> rows_by_subfield;
  for (std::size_t i = 0; i < persons.size(); ++i)
    rows_by_subfield[persons[i]->phd_subfield].push_back(static_cast<int>(i));

  const std::vector<std::pair<std::string, std::vector<std::string>>> covariate_sets = {
      {"R+Y", {"idr", "phd_rank_pct", "C(grad_year)"}},
      {"R+P+Y",
       {"idr", "phd_rank_pct", "phd_pub_count", "avg_norm_citations", "unique_collaborators",
        "C(grad_year)"}},
      {"R+P+A+Y",
       {"idr", "phd_rank_pct", "phd_pub_count", "avg_norm_citations", "unique_collaborators",
        "advisor_woman", "advisor_5yr_pubs", "advisor_seniority_years", "C(grad_year)"}}};

  std::vector<std::vector<std::string>> out;
  for (const auto& [sub, idx] : rows_by_subfield) {
    ColumnTable local = subset(at.table, idx);
    for (double thr : opts.analysis.top_thresholds) {
      std::string response = "top" + std::to_string(static_cast<int>(thr));
      if (!local.has(response)) continue;
      for (const auto& [set_name, names] : covariate_sets) {
        std::vector<std::string> row = {std::to_string(sub), fmt(thr), set_name};
        try {
          auto terms = parse_terms(names);
          auto fit = fit_glm(build_design(local, terms, response), Family::Logistic);
          auto me = marginal_effect(fit, local, terms, response, "idr");
          int j = fit.index_of("idr");
          row.insert(row.end(),
                     {fmt(fit.coef[j]), fmt(fit.std_errors[j]), fmt(fit.ci_lower[j]),
                      fmt(fit.ci_upper[j]), fmt(fit.p_values[j]), fmt(me.front().odds_factor),
                      std::to_string(idx.size()), "ok"});
        } catch (const Error& e) {
          row.insert(row.end(), {"", "", "", "", "", "", std::to_string(idx.size()), e.what()});
        }
        out.push_back(std::move(row));
      }
    }
  }
  write_rows(em, opts.out_dir, "placement_logit.csv",
             {"subfield", "threshold", "covariates", "idr_coef", "se", "ci_lo", "ci_hi", "p",
              "odds_factor_per_0.1", "n", "status"},
             out);
}

void report_movement_mlogit(const AnalysisTable& at, const ReportOptions& opts, Emitted& em) {
  auto terms = parse_terms({"idr", "phd_rank_pct", "woman", "C(grad_year)"});
  auto fit = fit_multinomial(build_design(at.table, terms, "placement_type"));
  std::vector<std::vector<std::string>> rows;
  fit_rows(fit, rows);
  write_rows(em, opts.out_dir, "movement_mlogit.csv",
             {"term", "estimate", "se", "ci_lo", "ci_hi", "p"}, rows);
}

void report_deviation_grid(const Cohort& cohort, const AnalysisTable& at,
                           const ReportOptions& opts, Emitted& em) {
  auto persons = analysis_persons(cohort, at);
  const auto& idr = at.table.get("idr");
  const auto& rank = at.table.get("placement_rank_pct");

  std::vector<std::vector<std::string>> rows;
  std::vector<double> xs, ys;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < persons.size(); ++i) {
    const Person& p = *persons[i];
    try {
      auto pv = person_profile(cohort, p);
      auto uv = unit_profile(cohort, p.placement_university, p.placement_subfield,
                             p.placement_year);
      double dev = research_deviation(pv, uv);
      rows.push_back({p.person_id, fmt(idr[i]), fmt(rank[i]), fmt(dev)});
      xs.push_back(rank[i]);
      ys.push_back(dev);
      kept.push_back(rows.size() - 1);
    } catch (const Error&) {
      // no incumbents, or empty reference profile — skip the person
    }
  }
  if (!xs.empty()) {
    auto smooth = lowess(xs, ys);
    for (std::size_t j = 0; j < kept.size(); ++j) rows[kept[j]].push_back(fmt(smooth[j]));
  }
  write_rows(em, opts.out_dir, "deviation_grid.csv",
             {"person_id", "idr", "placement_rank_pct", "deviation", "lowess_deviation"}, rows);
}

void report_gender_psm(const AnalysisTable& at, const ReportOptions& opts, Emitted& em) {
  const std::vector<std::string> base = {"phd_rank_pct", "phd_pub_count", "avg_norm_citations",
                                         "grad_year"};
  auto with_idr = base;
  with_idr.push_back("idr");

  std::vector<std::vector<std::string>> rows;
  auto outcome_fit = [&](const std::string& model, const Eigen::VectorXd* weights,
                         const MatchResult* match) {
    auto terms = parse_terms({"woman"});
    auto design = build_design(at.table, terms, "top10");
    FitResult fit = weights ? weighted_glm(design, *weights, Family::Logistic)
                            : fit_glm(design, Family::Logistic);
    int j = fit.index_of("woman");
    rows.push_back({model, fmt(fit.coef[j]), fmt(fit.std_errors[j]), fmt(fit.ci_lower[j]),
                    fmt(fit.ci_upper[j]), fmt(fit.p_values[j]),
                    std::to_string(match ? match->n_matched_treated
                                         : static_cast<int>(at.table.n)),
                    std::to_string(match ? match->n_dropped : 0)});
  };

  outcome_fit("unadjusted", nullptr, nullptr);
  auto m1 = psm_match(at.table, "woman", base);
  outcome_fit("matched", &m1.weights, &m1);
  auto m2 = psm_match(at.table, "woman", with_idr);
  outcome_fit("matched_with_idr", &m2.weights, &m2);

  write_rows(em, opts.out_dir, "gender_psm.csv",
             {"model", "woman_coef", "se", "ci_lo", "ci_hi", "p", "n_matched_treated",
              "n_dropped"},
             rows);
}

void report_productivity_poisson(const Cohort& cohort, const AnalysisTable& at,
                                 const ReportOptions& opts, Emitted& em) {
  auto persons = analysis_persons(cohort, at);
  const auto& idr = at.table.get("idr");
  const auto& top10 = at.table.get("top10");
  const auto& woman = at.table.get("woman");
  const auto& rank = at.table.get("phd_rank_pct");

  // long person x relative-year panel of paper counts, years +2..+10
  std::vector<double> l_count, l_rel, l_idr, l_top, l_woman, l_rank;
  for (std::size_t i = 0; i < persons.size(); ++i) {
    const Person& p = *persons[i];
    std::map<int, int> counts;
    for (int rel = 2; rel <= 10; ++rel) counts[rel] = 0;
    for (int pi : p.paper_idx) {
      int rel = cohort.papers[static_cast<std::size_t>(pi)].pub_year - p.grad_year;
      if (rel >= 2 && rel <= 10) counts[rel] += 1;
    }
    for (const auto& [rel, c] : counts) {
      l_count.push_back(c);
      l_rel.push_back(rel);
      l_idr.push_back(idr[i]);
      l_top.push_back(top10[i]);
      l_woman.push_back(woman[i]);
      l_rank.push_back(rank[i]);
    }
  }
  ColumnTable panel;
  panel.add("count", std::move(l_count));
  panel.add("rel_year", std::move(l_rel));
  panel.add("idr", std::move(l_idr));
  panel.add("top10", std::move(l_top));
  panel.add("woman", std::move(l_woman));
  panel.add("phd_rank_pct", std::move(l_rank));

  auto terms = parse_terms({"C(rel_year)", "idr", "C(rel_year):idr", "C(rel_year):idr:top10",
                            "woman", "phd_rank_pct"});
  auto fit = fit_glm(build_design(panel, terms, "count"), Family::Poisson);
  std::vector<std::vector<std::string>> rows;
  fit_rows(fit, rows);
  write_rows(em, opts.out_dir, "productivity_poisson.csv",
             {"term", "estimate", "se", "ci_lo", "ci_hi", "p"}, rows);
}

}  // namespace

void write_fit_csv(const FitResult& fit, const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  fit_rows(fit, rows);
  csv::write_file(path, {"term", "estimate", "se", "ci_lo", "ci_hi", "p"}, rows);
}

void run_report(const Cohort& cohort, const std::string& experiment, const ReportOptions& opts) {
  static const std::set<std::string> known = {"idr-trend",     "placement-logit",
                                              "movement-mlogit", "deviation-grid",
                                              "gender-psm",    "productivity-poisson"};
  if (!known.count(experiment)) throw UnknownExperiment(experiment);

  AnalysisTable at = build_analysis_table(cohort, opts.analysis);
  Emitted em;
  if (experiment == "idr-trend") report_idr_trend(cohort, at, opts, em);
  else if (experiment == "placement-logit") report_placement_logit(cohort, at, opts, em);
  else if (experiment == "movement-mlogit") report_movement_mlogit(at, opts, em);
  else if (experiment == "deviation-grid") report_deviation_grid(cohort, at, opts, em);
  else if (experiment == "gender-psm") report_gender_psm(at, opts, em);
  else report_productivity_poisson(cohort, at, opts, em);

  std::ofstream manifest(opts.out_dir + "/manifest.txt");
  manifest << "experiment=" << experiment << "\n"
           << "version=0.1.0\n"
           << "seed=" << opts.analysis.seed << "\n"
           << "springrank_alpha=" << fmt(opts.analysis.springrank_alpha) << "\n"
           << "idr_variant="
           << (opts.analysis.idr_variant == IdrVariant::PersonPooled ? "pooled" : "median")
           << "\n"
           << "mobility_shuffles=" << opts.analysis.mobility_shuffles << "\n"
           << "n_persons=" << cohort.persons.size() << "\n"
           << "n_papers=" << cohort.papers.size() << "\n"
           << "input_hash=" << hex64(cohort_hash(cohort)) << "\n";
  for (const auto& f : em.files)
    manifest << "output." << f << "=" << hex64(file_hash(opts.out_dir + "/" + f)) << "\n";
}

}  // namespace hirepath
