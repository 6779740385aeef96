#pragma once

#include "hirepath/corpus.hpp"
#include "hirepath/similarity.hpp"

namespace hirepath {

// Unit-sum reference-share vector owned by a person or by a
// (university, subfield, year) faculty aggregate.
struct ProfileVector {
  DisciplineVector vector = DisciplineVector::Zero(kNumDisciplines);
  int n_pubs = 0;
};

struct UnitProfileOptions {
  // pool reference counts across incumbents instead of averaging
  // per-person share vectors
  bool pooled = false;
};

// Reference shares pooled across the person's Ph.D.-window productivity
// papers. Throws NoReferences when no classified reference exists.
ProfileVector person_profile(const Cohort& cohort, const Person& person);

// Mean of the per-incumbent share vectors at (university, subfield),
// renormalized to unit sum. Each incumbent's vector is built from their
// publications in [year-5, year-1]. Throws NoIncumbents.
ProfileVector unit_profile(const Cohort& cohort, const std::string& university, int subfield,
                           int year, const UnitProfileOptions& opts = {});

// 1 - cosine(person, unit); throws ZeroVector when either side is zero.
double research_deviation(const ProfileVector& person, const ProfileVector& unit);

}  // namespace hirepath
