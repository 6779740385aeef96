#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "hirepath/corpus.hpp"

namespace hirepath {

// Directed Ph.D.-subfield -> placement-subfield network over the 24
// subfields. Raw weights are counts; normalized weights are ratios against
// the shuffle null model (may be +inf where the null mean is zero).
struct MobilityNetwork {
  Eigen::MatrixXd weights = Eigen::MatrixXd::Zero(kNumSubfields, kNumSubfields);
  bool normalized = false;

  double at(int src_subfield, int dst_subfield) const {
    return weights(src_subfield - 1, dst_subfield - 1);
  }
};

enum class MoveType { SameFieldStayer, CloseFieldMover, DistantFieldMover };

struct MoveLabel {
  std::string person_id;
  MoveType type = MoveType::SameFieldStayer;
  double distance = 0.0;  // +inf allowed
};

inline std::string to_string(MoveType t) {
  switch (t) {
    case MoveType::SameFieldStayer: return "same_field_stayer";
    case MoveType::CloseFieldMover: return "close_field_mover";
    default: return "distant_field_mover";
  }
}

// weight(A, B) = # non-incumbent persons with phd_subfield A and
// placement_subfield B (diagonal included).
MobilityNetwork mobility_network(const Cohort& cohort);

// Divides each raw weight by its mean over `n_shuffles` uniform permutations
// of the placement subfields across all persons (stayers included). Zero
// null mean with a nonzero raw weight yields +inf. Deterministic per seed;
// the mean is accumulated in shuffle order.
MobilityNetwork null_normalize(const MobilityNetwork& raw, const Cohort& cohort,
                               int n_shuffles = 100, std::uint64_t seed = 0);

// distance = 1 / normalized weight (+inf where the weight is 0).
Eigen::MatrixXd subfield_distance(const MobilityNetwork& normalized);

struct ClassifyOptions {
  // cutoff percentile over the mover population's distance distribution
  double cutoff_percentile = 80.0;
  // apply the cutoff within each Ph.D. subfield instead of globally
  bool per_source_subfield = false;
};

// Stayers labeled directly; movers at or below the cutoff distance are
// close-field, the rest distant-field.
std::vector<MoveLabel> classify_move(const Cohort& cohort, const Eigen::MatrixXd& distances,
                                     const ClassifyOptions& opts = {});

}  // namespace hirepath
