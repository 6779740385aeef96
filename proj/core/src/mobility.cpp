#include "hirepath/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hirepath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Fisher-Yates with an explicit bounded draw so shuffles are reproducible
// across standard libraries (std::shuffle is implementation-defined).
void shuffle_ints(std::vector<int>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

MobilityNetwork mobility_network(const Cohort& cohort) {
  MobilityNetwork net;
  for (const Person& p : cohort.persons) {
    if (p.incumbent) continue;
    net.weights(p.phd_subfield - 1, p.placement_subfield - 1) += 1.0;
  }
  return net;
}

MobilityNetwork null_normalize(const MobilityNetwork& raw, const Cohort& cohort,
                               int n_shuffles, std::uint64_t seed) {
  std::vector<int> src, dst;
  for (const Person& p : cohort.persons) {
    if (p.incumbent) continue;
    src.push_back(p.phd_subfield - 1);
    dst.push_back(p.placement_subfield - 1);
  }

  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(kNumSubfields, kNumSubfields);
  std::mt19937_64 rng(seed);
  std::vector<int> permuted = dst;
  for (int s = 0; s < n_shuffles; ++s) {
    shuffle_ints(permuted, rng);
    for (std::size_t i = 0; i < src.size(); ++i) mean(src[i], permuted[i]) += 1.0;
  }
  mean /= static_cast<double>(n_shuffles);

  MobilityNetwork out;
  out.normalized = true;
  for (int i = 0; i < kNumSubfields; ++i) {
    for (int j = 0; j < kNumSubfields; ++j) {
      double w = raw.weights(i, j);
      if (w == 0.0) {
        out.weights(i, j) = 0.0;
      } else if (mean(i, j) == 0.0) {
        out.weights(i, j) = kInf;
      } else {
        out.weights(i, j) = w / mean(i, j);
      }
    }
  }
  return out;
}

Eigen::MatrixXd subfield_distance(const MobilityNetwork& normalized) {
  Eigen::MatrixXd d(kNumSubfields, kNumSubfields);
  for (int i = 0; i < kNumSubfields; ++i)
    for (int j = 0; j < kNumSubfields; ++j) {
      double w = normalized.weights(i, j);
      d(i, j) = (w == 0.0) ? kInf : 1.0 / w;
    }
  return d;
}

std::vector<MoveLabel> classify_move(const Cohort& cohort, const Eigen::MatrixXd& distances,
                                     const ClassifyOptions& opts) {
  std::vector<MoveLabel> labels;
  std::vector<std::size_t> mover_pos;
  for (const Person& p : cohort.persons) {
    if (p.incumbent) continue;
    MoveLabel l;
    l.person_id = p.person_id;
    if (p.phd_subfield == p.placement_subfield) {
      l.type = MoveType::SameFieldStayer;
      l.distance = distances(p.phd_subfield - 1, p.placement_subfield - 1);
    } else {
      l.distance = distances(p.phd_subfield - 1, p.placement_subfield - 1);
      mover_pos.push_back(labels.size());
    }
    labels.push_back(std::move(l));
  }

  auto apply_cutoff = [&](const std::vector<std::size_t>& group) {
    if (group.empty()) return;
    std::vector<double> ds;
    ds.reserve(group.size());
    for (std::size_t i : group) ds.push_back(labels[i].distance);
    std::sort(ds.begin(), ds.end());
    std::size_t k = static_cast<std::size_t>(
        std::ceil(opts.cutoff_percentile / 100.0 * static_cast<double>(ds.size())));
    k = std::clamp<std::size_t>(k, 1, ds.size());
    double cutoff = ds[k - 1];
    for (std::size_t i : group)
      labels[i].type = labels[i].distance <= cutoff ? MoveType::CloseFieldMover
                                                    : MoveType::DistantFieldMover;
  };

  if (!opts.per_source_subfield) {
    apply_cutoff(mover_pos);
  } else {
    for (int s = 1; s <= kNumSubfields; ++s) {
      std::vector<std::size_t> group;
      std::size_t li = 0;
      for (const Person& p : cohort.persons) {
        if (p.incumbent) continue;
        if (p.phd_subfield == s && p.phd_subfield != p.placement_subfield)
          group.push_back(li);
        ++li;
      }
      apply_cutoff(group);
    }
  }
  return labels;
}

}  // namespace hirepath
