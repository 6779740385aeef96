#pragma once

#include <string>

#include "hirepath/analysis_table.hpp"
#include "hirepath/corpus.hpp"
#include "hirepath/glm.hpp"

namespace hirepath {

struct ReportOptions {
  std::string out_dir = ".";
  AnalysisOptions analysis;
};

// FitResult as a CSV in the table layout used throughout: one row per term
// with columns term, estimate, se, ci_lo, ci_hi, p.
void write_fit_csv(const FitResult& fit, const std::string& path);

// Runs one named end-to-end pipeline (idr-trend, placement-logit,
// movement-mlogit, deviation-grid, gender-psm, productivity-poisson) and
// writes its result CSVs plus a plain key=value manifest into out_dir.
// Output bytes are a deterministic function of (cohort, options).
// Throws UnknownExperiment for anything else.
void run_report(const Cohort& cohort, const std::string& experiment,
                const ReportOptions& opts);

}  // namespace hirepath
