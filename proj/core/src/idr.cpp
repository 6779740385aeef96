#include "hirepath/idr.hpp"

#include <algorithm>
#include <set>

#include "hirepath/errors.hpp"

namespace hirepath {

namespace {

double rao_stirling(const std::map<int, long>& ref_counts, const SimilarityMatrix& s) {
  double total = 0.0;
  for (const auto& [d, c] : ref_counts) total += static_cast<double>(c);
  double acc = 0.0;
  for (const auto& [di, ci] : ref_counts) {
    double pi = static_cast<double>(ci) / total;
    if (pi == 0.0) continue;
    for (const auto& [dj, cj] : ref_counts) {
      double pj = static_cast<double>(cj) / total;
      acc += s.entries(di - 1, dj - 1) * pi * pj;
    }
  }
  return 1.0 - acc;
}

}  // namespace

IdrScore paper_idr(const Paper& paper, const SimilarityMatrix& s) {
  long n = paper.total_refs();
  if (n < 5) throw TooFewReferences(static_cast<int>(n));
  IdrScore score;
  score.value = rao_stirling(paper.ref_counts, s);
  score.n_refs = n;
  score.variant = IdrVariant::Paper;
  return score;
}

IdrScore phd_idr_median(const Cohort& cohort, const Person& person,
                        const SimilarityCache& matrices) {
  EligiblePapers ep = eligible_papers(cohort, person);
  if (ep.idr_papers.empty()) throw NoEligiblePapers();

  std::vector<double> values;
  long n_refs = 0;
  for (int idx : ep.idr_papers) {
    const Paper& p = cohort.papers[idx];
    IdrScore s = paper_idr(p, matrices.year(p.pub_year));
    values.push_back(s.value);
    n_refs += s.n_refs;
  }
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  double median = (n % 2) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);

  IdrScore score;
  score.value = median;
  score.n_refs = n_refs;
  score.n_papers = static_cast<int>(n);
  score.variant = IdrVariant::PersonMedian;
  return score;
}

IdrScore phd_idr_pooled(const Cohort& cohort, const Person& person,
                        const SimilarityCache& matrices) {
  EligiblePapers ep = eligible_papers(cohort, person);
  if (ep.idr_papers.empty()) throw NoEligiblePapers();

  bool all_have_ids = true;
  for (int idx : ep.idr_papers)
    if (cohort.papers[idx].ref_ids.empty()) { all_have_ids = false; break; }

  std::map<int, long> pooled;
  if (all_have_ids) {
    std::set<std::string> seen;
    for (int idx : ep.idr_papers)
      for (const auto& [rid, disc] : cohort.papers[idx].ref_ids)
        if (seen.insert(rid).second) pooled[disc] += 1;
  } else {
    for (int idx : ep.idr_papers)
      for (const auto& [d, c] : cohort.papers[idx].ref_counts) pooled[d] += c;
  }

  long n = 0;
  for (const auto& [d, c] : pooled) n += c;

  IdrScore score;
  score.value = rao_stirling(pooled, matrices.year(person.grad_year));
  score.n_refs = n;
  score.n_papers = static_cast<int>(ep.idr_papers.size());
  score.variant = IdrVariant::PersonPooled;
  score.dedup_fallback = !all_have_ids;
  return score;
}

}  // namespace hirepath
