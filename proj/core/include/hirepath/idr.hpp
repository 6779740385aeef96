#pragma once

#include "hirepath/corpus.hpp"
#include "hirepath/similarity.hpp"

namespace hirepath {

enum class IdrVariant { Paper, PersonMedian, PersonPooled };

struct IdrScore {
  double value = 0.0;  // in [0, 1]
  long n_refs = 0;
  int n_papers = 1;
  IdrVariant variant = IdrVariant::Paper;
  // pooled variant only: ref_ids were missing and counts were summed instead
  bool dedup_fallback = false;
};

// Rao-Stirling diversity of a paper's reference disciplines:
// 1 - sum_ij S_ij p_i p_j with p the reference shares. Requires >= 5
// classified references; throws TooFewReferences otherwise.
IdrScore paper_idr(const Paper& paper, const SimilarityMatrix& s);

// Person-level score: median of paper_idr over idr-eligible Ph.D.-window
// papers, each evaluated against its publication-year similarity matrix.
// Even counts take the mean of the two middle values.
IdrScore phd_idr_median(const Cohort& cohort, const Person& person,
                        const SimilarityCache& matrices);

// Robustness variant: references pooled (deduplicated by ref_id) across all
// eligible papers, scored once against the graduation-year matrix. Falls
// back to count summation when ref_ids are absent.
IdrScore phd_idr_pooled(const Cohort& cohort, const Person& person,
                        const SimilarityCache& matrices);

}  // namespace hirepath
