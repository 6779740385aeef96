#include "hirepath/similarity.hpp"

#include <cmath>

namespace hirepath {

DisciplineVector discipline_vector(const Cohort& cohort, int discipline, int year) {
  DisciplineVector v = DisciplineVector::Zero(kNumDisciplines);
  for (const Paper& p : cohort.papers) {
    if (p.discipline_id != discipline || p.pub_year != year) continue;
    for (const auto& [d, c] : p.ref_counts) v[d - 1] += static_cast<double>(c);
  }
  double total = v.sum();
  if (total > 0.0) v /= total;
  return v;
}

double cosine(const DisciplineVector& u, const DisciplineVector& v) {
  double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return u.dot(v) / (nu * nv);
}

SimilarityMatrix similarity_matrix(const Cohort& cohort, int year) {
  // single pass over papers, then pairwise cosine
  Eigen::MatrixXd vectors = Eigen::MatrixXd::Zero(kNumDisciplines, kNumDisciplines);
  for (const Paper& p : cohort.papers) {
    if (p.pub_year != year) continue;
    auto col = vectors.col(p.discipline_id - 1);
    for (const auto& [d, c] : p.ref_counts) col[d - 1] += static_cast<double>(c);
  }

  SimilarityMatrix out;
  out.year = year;
  out.entries = Eigen::MatrixXd::Zero(kNumDisciplines, kNumDisciplines);
  Eigen::VectorXd norms(kNumDisciplines);
  for (int i = 0; i < kNumDisciplines; ++i) norms[i] = vectors.col(i).norm();

  for (int i = 0; i < kNumDisciplines; ++i) {
    if (norms[i] == 0.0) continue;
    out.entries(i, i) = 1.0;
    for (int j = i + 1; j < kNumDisciplines; ++j) {
      if (norms[j] == 0.0) continue;
      double s = vectors.col(i).dot(vectors.col(j)) / (norms[i] * norms[j]);
      out.entries(i, j) = s;
      out.entries(j, i) = s;
    }
  }
  return out;
}

const SimilarityMatrix& SimilarityCache::year(int y) const {
  auto it = cache_.find(y);
  if (it == cache_.end()) it = cache_.emplace(y, similarity_matrix(cohort_, y)).first;
  return it->second;
}

}  // namespace hirepath
