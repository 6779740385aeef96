#pragma once

#include <cstdint>

#include "hirepath/corpus.hpp"

namespace hirepath {

// Seeded synthetic cohort with three planted effects: a per-unit IDR
// log-odds on top placement, a gender gap in mean IDR, and a per-unit IDR
// slope on post-Ph.D. annual output.
struct SynthConfig {
  int n_persons = 20000;
  int n_universities = 30;   // shared pool, active in every subfield
  int n_subfields = 5;
  int n_disciplines = 30;    // active low-level disciplines
  int grad_year_min = 2006;
  int grad_year_max = 2017;
  int n_incumbents = 2000;

  double planted_idr_logodds = -1.186;   // per unit IDR, on top placement
  double planted_gender_idr_gap = 0.04;  // women mean minus men mean
  double planted_productivity_slope = 1.0;  // per unit IDR, log annual pubs

  double base_idr = 0.43;    // population mean; genders sit at +-gap/2
  double idr_sd = 0.08;
  double top_fraction = 0.10;
  double mover_fraction = 0.15;
  double rank_logodds = 0.02;  // per latent-percentile point, on top placement

  std::uint64_t seed = 1;

  void validate() const;  // throws ConfigInvalid
};

// Latent prestige of university k (0-based): the top three sit on a plateau
// with a deliberate gap to the rest, so rankings have a crisp top set.
double synth_prestige(int k, int n_universities);

Cohort synth_cohort(const SynthConfig& config);

}  // namespace hirepath
