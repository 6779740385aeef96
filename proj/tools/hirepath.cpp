// hirepath: command-line front end over the core library.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hirepath/analysis_table.hpp"
#include "hirepath/corpus.hpp"
#include "hirepath/csv.hpp"
#include "hirepath/deviation.hpp"
#include "hirepath/errors.hpp"
#include "hirepath/idr.hpp"
#include "hirepath/margins.hpp"
#include "hirepath/mobility.hpp"
#include "hirepath/multinomial.hpp"
#include "hirepath/psm.hpp"
#include "hirepath/quantile.hpp"
#include "hirepath/ranking.hpp"
#include "hirepath/report.hpp"
#include "hirepath/similarity.hpp"
#include "hirepath/synth.hpp"

using namespace hirepath;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const std::string& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  if (out.empty() || out == "-") {
    std::ostringstream ss;
    for (std::size_t i = 0; i < header.size(); ++i)
      ss << (i ? "," : "") << csv::escape(header[i]);
    ss << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) ss << (i ? "," : "") << csv::escape(row[i]);
      ss << "\n";
    }
    std::cout << ss.str();
  } else {
    csv::write_file(out, header, rows);
  }
}

// formula files hold one line: response ~ term1 + term2 + ...
std::pair<std::string, std::vector<Term>> read_formula(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open formula file: " + path);
  std::string text, line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') text += line;
  auto tilde = text.find('~');
  if (tilde == std::string::npos) throw ConfigInvalid("formula needs 'response ~ terms'");
  auto trim = [](std::string s) {
    auto a = s.find_first_not_of(" \t");
    auto b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::string response = trim(text.substr(0, tilde));
  std::vector<Term> terms;
  std::stringstream rhs(text.substr(tilde + 1));
  std::string piece;
  while (std::getline(rhs, piece, '+')) {
    piece = trim(piece);
    if (!piece.empty() && piece != "1") terms.push_back(parse_term(piece));
  }
  return {response, terms};
}

SynthConfig read_synth_config(const std::string& path) {
  SynthConfig cfg;
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config file: " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigInvalid("expected key=value at line " + std::to_string(lineno));
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "n_persons") cfg.n_persons = std::stoi(val);
    else if (key == "n_universities") cfg.n_universities = std::stoi(val);
    else if (key == "n_subfields") cfg.n_subfields = std::stoi(val);
    else if (key == "n_disciplines") cfg.n_disciplines = std::stoi(val);
    else if (key == "grad_year_min") cfg.grad_year_min = std::stoi(val);
    else if (key == "grad_year_max") cfg.grad_year_max = std::stoi(val);
    else if (key == "n_incumbents") cfg.n_incumbents = std::stoi(val);
    else if (key == "planted_idr_logodds") cfg.planted_idr_logodds = std::stod(val);
    else if (key == "planted_gender_idr_gap") cfg.planted_gender_idr_gap = std::stod(val);
    else if (key == "planted_productivity_slope") cfg.planted_productivity_slope = std::stod(val);
    else if (key == "base_idr") cfg.base_idr = std::stod(val);
    else if (key == "idr_sd") cfg.idr_sd = std::stod(val);
    else if (key == "top_fraction") cfg.top_fraction = std::stod(val);
    else if (key == "mover_fraction") cfg.mover_fraction = std::stod(val);
    else if (key == "rank_logodds") cfg.rank_logodds = std::stod(val);
    else if (key == "seed") cfg.seed = std::stoull(val);
    else throw ConfigInvalid("unknown config key: " + key);
  }
  return cfg;
}

Cohort load_filtered(const std::string& dir) {
  return apply_sample_filters(load_corpus(dir));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interdisciplinarity and faculty-placement analysis pipeline"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string input_dir = ".", out;
  app.add_option("--input-dir", input_dir, "corpus directory (persons/papers/references CSVs)");
  app.add_option("--out", out, "output file or directory (default: stdout)");

  auto* sim = app.add_subcommand("similarity", "per-year discipline similarity matrix");
  int year = 0;
  sim->add_option("--year", year, "publication year")->required();

  auto* idr = app.add_subcommand("idr", "person-level interdisciplinarity scores");
  std::string variant = "median";
  idr->add_option("--variant", variant, "median | pooled")
      ->check(CLI::IsMember({"median", "pooled"}));

  auto* rank = app.add_subcommand("rank", "university prestige ranks for one subfield");
  int subfield = 0;
  double alpha = 0.01;
  std::string external_ranks;
  rank->add_option("--subfield", subfield, "subfield id (1-24)")->required();
  rank->add_option("--alpha", alpha, "ridge regularization");
  rank->add_option("--external-ranks", external_ranks, "university,rank CSV override");

  auto* mob = app.add_subcommand("mobility", "null-normalized subfield mobility network");
  int shuffles = 100;
  std::uint64_t seed = 1;
  mob->add_option("--shuffles", shuffles, "null-model permutations");
  mob->add_option("--seed", seed, "shuffle seed");

  auto* dev = app.add_subcommand("deviation", "research deviation from the hiring unit");

  auto* reg = app.add_subcommand("regress", "regression on the derived analysis table");
  std::string model = "logit", formula_file;
  double top_threshold = 10.0, tau = 0.5;
  reg->add_option("--model", model, "logit | mlogit | poisson | quantile")
      ->check(CLI::IsMember({"logit", "mlogit", "poisson", "quantile"}));
  reg->add_option("--formula", formula_file, "file with 'response ~ terms'")->required();
  reg->add_option("--top-threshold", top_threshold, "top-percentile cut for topX columns");
  reg->add_option("--tau", tau, "quantile level (quantile model only)");

  auto* psm = app.add_subcommand("psm", "propensity-score-matched outcome model");
  std::string treatment = "woman";
  double caliper = 0.1;
  psm->add_option("--treatment", treatment, "binary treatment column");
  psm->add_option("--caliper", caliper, "radius on the probability scale");

  auto* synth = app.add_subcommand("synth", "generate a seeded synthetic corpus");
  std::string config_file;
  synth->add_option("--config", config_file, "key=value config file");

  auto* rep = app.add_subcommand("report", "run a named end-to-end experiment");
  std::string experiment;
  rep->add_option("--experiment", experiment,
                  "idr-trend | placement-logit | movement-mlogit | deviation-grid | "
                  "gender-psm | productivity-poisson")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      Cohort cohort = load_corpus(input_dir);
      auto S = similarity_matrix(cohort, year);
      std::vector<std::string> header = {"discipline"};
      for (int j = 1; j <= kNumDisciplines; ++j) header.push_back(std::to_string(j));
      std::vector<std::vector<std::string>> rows;
      for (int i = 0; i < kNumDisciplines; ++i) {
        std::vector<std::string> row = {std::to_string(i + 1)};
        for (int j = 0; j < kNumDisciplines; ++j) row.push_back(fmt(S.entries(i, j)));
        rows.push_back(std::move(row));
      }
      write_csv(out, header, rows);
    } else if (idr->parsed()) {
      Cohort cohort = load_filtered(input_dir);
      SimilarityCache cache(cohort);
      std::vector<std::vector<std::string>> rows;
      for (const auto& p : cohort.persons) {
        if (p.incumbent) continue;
        try {
          IdrScore s = variant == "pooled" ? phd_idr_pooled(cohort, p, cache)
                                           : phd_idr_median(cohort, p, cache);
          rows.push_back({p.person_id, fmt(s.value), std::to_string(s.n_papers),
                          std::to_string(s.n_refs)});
        } catch (const NoEligiblePapers&) {
        }
      }
      write_csv(out, {"person_id", "idr", "n_papers", "n_refs"}, rows);
    } else if (rank->parsed()) {
      Cohort cohort = load_filtered(input_dir);
      RankTable table = external_ranks.empty()
                            ? percentiles(springrank(placement_graph(cohort, subfield), alpha),
                                          subfield)
                            : external_rank_table(external_ranks, subfield);
      std::vector<std::vector<std::string>> rows;
      for (const auto& r : table.rows)
        rows.push_back({r.university, fmt(r.score), fmt(r.percentile)});
      write_csv(out, {"university", "score", "percentile"}, rows);
    } else if (mob->parsed()) {
      Cohort cohort = load_filtered(input_dir);
      auto raw = mobility_network(cohort);
      auto norm = null_normalize(raw, cohort, shuffles, seed);
      auto labels = classify_move(cohort, subfield_distance(norm));
      std::vector<std::vector<std::string>> rows;
      for (int a = 1; a <= kNumSubfields; ++a)
        for (int b = 1; b <= kNumSubfields; ++b)
          if (raw.at(a, b) > 0)
            rows.push_back({std::to_string(a), std::to_string(b), fmt(raw.at(a, b)),
                            fmt(norm.at(a, b))});
      write_csv(out, {"phd_subfield", "placement_subfield", "raw", "normalized"}, rows);
      std::vector<std::vector<std::string>> lrows;
      for (const auto& l : labels)
        lrows.push_back({l.person_id, to_string(l.type), fmt(l.distance)});
      write_csv(out.empty() || out == "-" ? out : out + ".moves.csv",
                {"person_id", "move_type", "distance"}, lrows);
    } else if (dev->parsed()) {
      Cohort cohort = load_filtered(input_dir);
      std::vector<std::vector<std::string>> rows;
      for (const auto& p : cohort.persons) {
        if (p.incumbent) continue;
        try {
          auto pv = person_profile(cohort, p);
          auto uv = unit_profile(cohort, p.placement_university, p.placement_subfield,
                                 p.placement_year);
          rows.push_back({p.person_id, fmt(research_deviation(pv, uv))});
        } catch (const Error&) {
        }
      }
      write_csv(out, {"person_id", "deviation"}, rows);
    } else if (reg->parsed()) {
      Cohort cohort = load_filtered(input_dir);
      AnalysisOptions opts;
      if (std::find(opts.top_thresholds.begin(), opts.top_thresholds.end(), top_threshold) ==
          opts.top_thresholds.end())
        opts.top_thresholds.push_back(top_threshold);
      AnalysisTable at = build_analysis_table(cohort, opts);
      auto [response, terms] = read_formula(formula_file);
      DesignMatrix design = build_design(at.table, terms, response);
      FitResult fit;
      if (model == "logit") fit = fit_glm(design, Family::Logistic);
      else if (model == "poisson") fit = fit_glm(design, Family::Poisson);
      else if (model == "mlogit") fit = fit_multinomial(design);
      else fit = fit_quantile(design, tau);
      std::vector<std::vector<std::string>> rows;
      for (int j = 0; j < fit.coef.size(); ++j)
        rows.push_back({fit.names[static_cast<std::size_t>(j)], fmt(fit.coef[j]),
                        fmt(fit.std_errors[j]), fmt(fit.ci_lower[j]), fmt(fit.ci_upper[j]),
                        fmt(fit.p_values[j])});
      write_csv(out, {"term", "estimate", "se", "ci_lo", "ci_hi", "p"}, rows);
    } else if (psm->parsed()) {
      Cohort cohort = load_filtered(input_dir);
      AnalysisTable at = build_analysis_table(cohort, {});
      std::vector<std::string> covs = {"phd_rank_pct", "phd_pub_count", "avg_norm_citations",
                                       "grad_year"};
      auto match = psm_match(at.table, treatment, covs, caliper);
      auto design = build_design(at.table, {Term::continuous(treatment)}, "top10");
      auto fit = weighted_glm(design, match.weights, Family::Logistic);
      int j = fit.index_of(treatment);
      write_csv(out,
                {"term", "estimate", "se", "ci_lo", "ci_hi", "p", "n_matched_treated",
                 "n_dropped"},
                {{treatment, fmt(fit.coef[j]), fmt(fit.std_errors[j]), fmt(fit.ci_lower[j]),
                  fmt(fit.ci_upper[j]), fmt(fit.p_values[j]),
                  std::to_string(match.n_matched_treated), std::to_string(match.n_dropped)}});
    } else if (synth->parsed()) {
      SynthConfig cfg = config_file.empty() ? SynthConfig{} : read_synth_config(config_file);
      Cohort cohort = synth_cohort(cfg);
      write_corpus(cohort, out.empty() || out == "-" ? "." : out);
    } else if (rep->parsed()) {
      Cohort cohort = load_filtered(input_dir);
      ReportOptions opts;
      opts.out_dir = out.empty() || out == "-" ? "." : out;
      run_report(cohort, experiment, opts);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
