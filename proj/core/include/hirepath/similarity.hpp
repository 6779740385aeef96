#pragma once

#include <Eigen/Dense>
#include <map>

#include "hirepath/corpus.hpp"

namespace hirepath {

// 144-dimensional reference-share vector (index 0 = discipline 1).
// Zero when no paper contributes.
using DisciplineVector = Eigen::VectorXd;

struct SimilarityMatrix {
  int year = 0;
  Eigen::MatrixXd entries;  // 144x144, symmetric, values in [0,1]

  double at(int disc_i, int disc_j) const { return entries(disc_i - 1, disc_j - 1); }
};

// Reference shares of all `discipline` papers published in `year`:
// element k = refs to discipline k+1 / total refs. Zero vector when the
// (discipline, year) cell is empty.
DisciplineVector discipline_vector(const Cohort& cohort, int discipline, int year);

// Standard cosine over nonnegative vectors; 0 if either vector is zero.
double cosine(const DisciplineVector& u, const DisciplineVector& v);

// Pairwise cosine of the per-discipline vectors for one year. The diagonal
// is forced to 1 for disciplines with a nonzero vector and 0 for empty ones.
SimilarityMatrix similarity_matrix(const Cohort& cohort, int year);

// Deterministic per-year cache over an immutable cohort.
class SimilarityCache {
 public:
  explicit SimilarityCache(const Cohort& cohort) : cohort_(cohort) {}
  const SimilarityMatrix& year(int y) const;

 private:
  const Cohort& cohort_;
  mutable std::map<int, SimilarityMatrix> cache_;
};

}  // namespace hirepath
