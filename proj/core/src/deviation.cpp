#include "hirepath/deviation.hpp"

#include "hirepath/errors.hpp"

namespace hirepath {

ProfileVector person_profile(const Cohort& cohort, const Person& person) {
  ProfileVector prof;
  EligiblePapers ep = eligible_papers(cohort, person);
  for (int idx : ep.productivity_papers) {
    const Paper& p = cohort.papers[idx];
    for (const auto& [d, c] : p.ref_counts) prof.vector[d - 1] += static_cast<double>(c);
    ++prof.n_pubs;
  }
  double total = prof.vector.sum();
  if (total == 0.0) throw NoReferences();
  prof.vector /= total;
  return prof;
}

ProfileVector unit_profile(const Cohort& cohort, const std::string& university, int subfield,
                           int year, const UnitProfileOptions& opts) {
  ProfileVector unit;
  for (const Person& p : cohort.persons) {
    if (!p.incumbent || p.placement_university != university ||
        p.placement_subfield != subfield)
      continue;
    DisciplineVector v = DisciplineVector::Zero(kNumDisciplines);
    int n_pubs = 0;
    for (int idx : p.paper_idx) {
      const Paper& paper = cohort.papers[idx];
      if (paper.pub_year < year - 5 || paper.pub_year > year - 1) continue;
      for (const auto& [d, c] : paper.ref_counts) v[d - 1] += static_cast<double>(c);
      ++n_pubs;
    }
    double total = v.sum();
    if (total == 0.0) continue;  // incumbent without classified output that window
    if (opts.pooled) {
      unit.vector += v;
    } else {
      unit.vector += v / total;  // per-person shares, then unweighted mean
    }
    unit.n_pubs += n_pubs;
  }
  double total = unit.vector.sum();
  if (total == 0.0) throw NoIncumbents();
  unit.vector /= total;
  return unit;
}

double research_deviation(const ProfileVector& person, const ProfileVector& unit) {
  double np = person.vector.norm(), nu = unit.vector.norm();
  if (np == 0.0 || nu == 0.0) throw ZeroVector();
  return 1.0 - person.vector.dot(unit.vector) / (np * nu);
}

}  // namespace hirepath
