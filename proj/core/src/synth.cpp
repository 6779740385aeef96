#include "hirepath/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hirepath/errors.hpp"
#include "hirepath/idr.hpp"
#include "hirepath/similarity.hpp"

namespace hirepath {

namespace {

// stdlib-independent draws so a seed pins the corpus bytes

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t phase, std::uint64_t i) {
  return splitmix64(splitmix64(seed ^ (phase * 0x9e3779b97f4a7c15ULL)) ^ i);
}

double runif(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double rnorm(std::mt19937_64& rng) {
  double u1 = std::max(runif(rng), 1e-300);
  double u2 = runif(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

int rpois(std::mt19937_64& rng, double lambda) {
  if (lambda <= 0.0) return 0;
  if (lambda < 30.0) {  // Knuth
    double l = std::exp(-lambda), p = 1.0;
    int k = 0;
    do {
      ++k;
      p *= runif(rng);
    } while (p > l);
    return k - 1;
  }
  // normal approximation is fine for the large rates used here
  return std::max(0, static_cast<int>(std::lround(lambda + std::sqrt(lambda) * rnorm(rng))));
}

int rint(std::mt19937_64& rng, int n) {  // uniform in [0, n)
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

int sample_weighted(std::mt19937_64& rng, const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double u = runif(rng) * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u <= acc) return static_cast<int>(i);
  }
  return static_cast<int>(weights.size()) - 1;
}

// w solving w^2 + (1-w)^2/(K-1) = q, the home-discipline mixing weight that
// puts the profile's concentration at q
double solve_mixing_weight(double q, int K) {
  double qmin = 1.0 / K + 1e-9;
  q = std::clamp(q, qmin, 0.999);
  double a = static_cast<double>(K) / (K - 1);
  double b = -2.0 / (K - 1);
  double c = 1.0 / (K - 1) - q;
  double disc = std::max(b * b - 4.0 * a * c, 0.0);
  return std::clamp((-b + std::sqrt(disc)) / (2.0 * a), 1.0 / K, 1.0);
}

// expected off-diagonal similarity between two disciplines whose reference
// profiles are (w at home, uniform spillover elsewhere)
double expected_offdiag_similarity(double w, int K) {
  double spill = (1.0 - w) / (K - 1);
  double dot = 2.0 * w * spill + (K - 2) * spill * spill;
  double norm2 = w * w + (1.0 - w) * (1.0 - w) / (K - 1);
  return dot / norm2;
}

struct ProfilePlan {
  double s_hat = 0.0;  // expected off-diagonal similarity in this corpus
};

// reference target: E[paper IDR] ~= (1 - s)(1 - 1/n_refs)(1 - q)
double concentration_for_target(double target_idr, double s_hat, int n_refs) {
  double denom = (1.0 - s_hat) * (1.0 - 1.0 / n_refs);
  return 1.0 - std::min(target_idr / std::max(denom, 1e-9), 0.999);
}

std::map<int, long> draw_references(std::mt19937_64& rng, int home, int n_refs, double w,
                                    int n_disciplines) {
  std::map<int, long> counts;
  for (int r = 0; r < n_refs; ++r) {
    int d;
    if (runif(rng) < w) {
      d = home;
    } else {
      d = 1 + rint(rng, n_disciplines);
      if (d == home) d = 1 + d % n_disciplines;  // redirect collisions
    }
    counts[d] += 1;
  }
  return counts;
}

}  // namespace

void SynthConfig::validate() const {
  if (n_persons <= 0 || n_universities < 4 || n_subfields <= 0 || n_disciplines < 2)
    throw ConfigInvalid("counts must be positive (>= 4 universities, >= 2 disciplines)");
  if (n_subfields > kNumSubfields)
    throw ConfigInvalid("n_subfields exceeds the 24-subfield taxonomy");
  if (n_disciplines > kNumDisciplines)
    throw ConfigInvalid("n_disciplines exceeds the 144-discipline taxonomy");
  if (grad_year_max < grad_year_min) throw ConfigInvalid("empty graduation year range");
  if (top_fraction <= 0.0 || top_fraction >= 1.0)
    throw ConfigInvalid("top_fraction must lie in (0, 1)");
  if (idr_sd < 0.0 || base_idr <= 0.0 || base_idr >= 1.0)
    throw ConfigInvalid("idr distribution parameters out of range");
  if (mover_fraction < 0.0 || mover_fraction >= 1.0)
    throw ConfigInvalid("mover_fraction must lie in [0, 1)");
  if (n_incumbents < 0) throw ConfigInvalid("n_incumbents must be nonnegative");
}

double synth_prestige(int k, int n_universities) {
  int top = std::max(1, static_cast<int>(std::ceil(0.1 * n_universities)));
  if (k < top) {
    // plateau with a deliberate gap to the rest, so the ranked top set is crisp
    return 1.0 - 0.1 * (top > 1 ? static_cast<double>(k) / (top - 1) : 0.0);
  }
  int rest = n_universities - top;
  return 0.65 * static_cast<double>(n_universities - 1 - k) / std::max(1, rest - 1);
}

Cohort synth_cohort(const SynthConfig& cfg) {
  cfg.validate();
  Cohort cohort;

  const int M = cfg.n_universities;
  const int K = cfg.n_disciplines;
  std::vector<double> prestige(M);
  std::vector<std::string> uni_ids(M);
  for (int k = 0; k < M; ++k) {
    prestige[k] = synth_prestige(k, M);
    char buf[16];
    std::snprintf(buf, sizeof buf, "U%03d", k + 1);
    uni_ids[k] = buf;
  }
  std::vector<double> production_w(M), hire_base(M);
  for (int k = 0; k < M; ++k) production_w[k] = std::exp(4.0 * prestige[k]);

  // subfield s owns disciplines {d : (d-1) mod n_subfields == s-1}
  std::vector<std::vector<int>> subfield_discs(cfg.n_subfields);
  for (int d = 1; d <= K; ++d) subfield_discs[(d - 1) % cfg.n_subfields].push_back(d);
  for (const auto& block : subfield_discs)
    if (block.empty()) throw ConfigInvalid("more subfields than active disciplines");

  // fixed-point estimate of the corpus-wide off-diagonal similarity
  const int mean_refs = 20;
  double s_hat = 0.0;
  for (int it = 0; it < 3; ++it) {
    double q = concentration_for_target(cfg.base_idr, s_hat, mean_refs);
    s_hat = expected_offdiag_similarity(solve_mixing_weight(q, K), K);
  }

  struct PersonDraw {
    double target_idr = 0.0;
    int phd_uni = 0;
  };
  std::vector<PersonDraw> draws(cfg.n_persons);

  auto add_paper = [&](Person& person, const std::string& id, int year, int disc, int authors,
                       long citations, std::map<int, long> refs, std::mt19937_64& rng,
                       bool with_ref_ids) {
    Paper p;
    p.paper_id = id;
    p.person_id = person.person_id;
    p.pub_year = year;
    p.discipline_id = disc;
    p.author_count = authors;
    p.citations = citations;
    if (with_ref_ids) {
      for (const auto& [d, c] : refs)
        for (long r = 0; r < c; ++r) {
          char rb[40];
          std::snprintf(rb, sizeof rb, "R%03d_%07llx", d,
                        static_cast<unsigned long long>(rng() & 0xfffffffULL));
          p.ref_ids.emplace_back(rb, d);
        }
    }
    p.ref_counts = std::move(refs);
    int idx = static_cast<int>(cohort.papers.size());
    cohort.paper_index.emplace(p.paper_id, idx);
    person.paper_idx.push_back(idx);
    cohort.papers.push_back(std::move(p));
  };

  // ---- phase 1: persons and Ph.D.-window papers ----
  for (int i = 0; i < cfg.n_persons; ++i) {
    std::mt19937_64 rng(derive_seed(cfg.seed, 1, static_cast<std::uint64_t>(i)));
    Person person;
    char buf[16];
    std::snprintf(buf, sizeof buf, "P%06d", i + 1);
    person.person_id = buf;
    person.gender = runif(rng) < 0.5 ? Gender::Woman : Gender::Man;
    person.phd_subfield = 1 + rint(rng, cfg.n_subfields);
    person.grad_year =
        cfg.grad_year_min + rint(rng, cfg.grad_year_max - cfg.grad_year_min + 1);

    PersonDraw& pd = draws[i];
    double mean = cfg.base_idr + (person.gender == Gender::Woman ? 0.5 : -0.5) *
                                     cfg.planted_gender_idr_gap;
    pd.target_idr = std::clamp(mean + cfg.idr_sd * rnorm(rng), 0.05, 0.85);
    pd.phd_uni = sample_weighted(rng, production_w);
    person.phd_university = uni_ids[pd.phd_uni];

    person.covariates.unique_collaborators = rpois(rng, 5.0);
    person.covariates.advisor_gender = runif(rng) < 0.5 ? Gender::Woman : Gender::Man;
    person.covariates.advisor_5yr_pubs = rpois(rng, 8.0);
    person.covariates.advisor_seniority_years = 5 + rint(rng, 30);

    const auto& block = subfield_discs[person.phd_subfield - 1];
    int home = block[rint(rng, static_cast<int>(block.size()))];

    int n_papers = 1 + std::min(rpois(rng, 2.0), 9);
    cohort.person_index.emplace(person.person_id, static_cast<int>(cohort.persons.size()));
    cohort.persons.push_back(std::move(person));
    Person& pref = cohort.persons.back();
    for (int j = 0; j < n_papers; ++j) {
      int rel = -4 + rint(rng, 6);  // [-4, +1]
      int year = pref.grad_year + rel;
      int authors = runif(rng) < 0.02 ? 11 + rint(rng, 4) : 1 + rint(rng, 8);
      int n_refs = runif(rng) < 0.04 ? 3 + rint(rng, 2) : 8 + rpois(rng, 12.0);
      double q = concentration_for_target(pd.target_idr, s_hat, std::max(n_refs, 5));
      double w = solve_mixing_weight(q, K);
      long cites = rpois(rng, 8.0 * std::exp(0.25 * rnorm(rng)));
      char pb[32];
      std::snprintf(pb, sizeof pb, "W%06d_%02d", i + 1, j + 1);
      add_paper(pref, pb, year, home, authors, cites,
                draw_references(rng, home, n_refs, w, K), rng, true);
    }
  }

  // ---- phase 2: incumbent faculty and their rosters ----
  std::vector<double> hire_w(M);
  for (int k = 0; k < M; ++k) hire_w[k] = std::exp(2.0 * prestige[k]);
  for (int i = 0; i < cfg.n_incumbents; ++i) {
    std::mt19937_64 rng(derive_seed(cfg.seed, 2, static_cast<std::uint64_t>(i)));
    Person person;
    char buf[16];
    std::snprintf(buf, sizeof buf, "I%06d", i + 1);
    person.person_id = buf;
    person.incumbent = true;
    person.gender = runif(rng) < 0.5 ? Gender::Woman : Gender::Man;
    int uni = sample_weighted(rng, hire_w);
    person.placement_university = uni_ids[uni];
    person.placement_subfield = 1 + rint(rng, cfg.n_subfields);
    person.placement_year =
        cfg.grad_year_min + 2 + rint(rng, std::max(1, cfg.grad_year_max - cfg.grad_year_min - 1));
    person.phd_subfield = person.placement_subfield;
    person.phd_university = person.placement_university;
    person.grad_year = person.placement_year;  // unused for incumbents

    // higher-prestige rosters lean less interdisciplinary
    double target = std::clamp(cfg.base_idr - 0.08 * prestige[uni] + 0.05 * rnorm(rng),
                               0.05, 0.85);
    const auto& block = subfield_discs[person.placement_subfield - 1];
    int home = block[rint(rng, static_cast<int>(block.size()))];

    int n_papers = 3 + rpois(rng, 3.0);
    cohort.person_index.emplace(person.person_id, static_cast<int>(cohort.persons.size()));
    cohort.persons.push_back(std::move(person));
    Person& pref = cohort.persons.back();
    for (int j = 0; j < n_papers; ++j) {
      int year = pref.placement_year - 5 + rint(rng, 5);  // [y-5, y-1]
      int n_refs = 8 + rpois(rng, 12.0);
      double q = concentration_for_target(target, s_hat, n_refs);
      double w = solve_mixing_weight(q, K);
      long cites = rpois(rng, 8.0 * std::exp(0.25 * rnorm(rng)));
      char pb[32];
      std::snprintf(pb, sizeof pb, "V%06d_%02d", i + 1, j + 1);
      add_paper(pref, pb, year, home, 1 + rint(rng, 8), cites,
                draw_references(rng, home, n_refs, w, K), rng, false);
    }
  }

  // ---- phase 3: provisional realized IDR, then post-Ph.D. output ----
  auto realized_idr = [&](std::vector<double>& out) {
    SimilarityCache matrices(cohort);
    out.assign(cfg.n_persons, cfg.base_idr);
    for (int i = 0; i < cfg.n_persons; ++i) {
      try {
        out[i] = phd_idr_median(cohort, cohort.persons[i], matrices).value;
      } catch (const NoEligiblePapers&) {
        // filtered out downstream; keep the population mean as placeholder
      }
    }
  };
  std::vector<double> idr_stage1;
  realized_idr(idr_stage1);

  for (int i = 0; i < cfg.n_persons; ++i) {
    std::mt19937_64 rng(derive_seed(cfg.seed, 3, static_cast<std::uint64_t>(i)));
    Person& person = cohort.persons[i];
    const auto& block = subfield_discs[person.phd_subfield - 1];
    int home = block[rint(rng, static_cast<int>(block.size()))];
    double lambda = std::exp(-0.8 + cfg.planted_productivity_slope * idr_stage1[i]);
    int serial = 0;
    for (int rel = 2; rel <= 10; ++rel) {
      int count = rpois(rng, lambda);
      for (int c = 0; c < count; ++c) {
        int n_refs = 6 + rpois(rng, 6.0);
        double q = concentration_for_target(idr_stage1[i], s_hat, n_refs);
        double w = solve_mixing_weight(q, K);
        long cites = rpois(rng, 8.0 * std::exp(0.25 * rnorm(rng)));
        char pb[32];
        std::snprintf(pb, sizeof pb, "Q%06d_%03d", i + 1, ++serial);
        add_paper(person, pb, person.grad_year + rel, home, 1 + rint(rng, 9), cites,
                  draw_references(rng, home, n_refs, w, K), rng, false);
      }
    }
  }

  // ---- phase 4: final realized IDR and placement draw ----
  std::vector<double> idr_final;
  realized_idr(idr_final);

  std::vector<double> partial(cfg.n_persons);
  for (int i = 0; i < cfg.n_persons; ++i) {
    double pct = 100.0 * prestige[draws[i].phd_uni];  // latent percentile proxy
    partial[i] = cfg.planted_idr_logodds * idr_final[i] + cfg.rank_logodds * (pct - 50.0);
  }
  // intercept calibrated so the mean placement probability hits top_fraction
  double lo = -20.0, hi = 20.0;
  for (int it = 0; it < 100; ++it) {
    double b0 = 0.5 * (lo + hi);
    double mean = 0.0;
    for (double l : partial) mean += 1.0 / (1.0 + std::exp(-(b0 + l)));
    mean /= cfg.n_persons;
    (mean < cfg.top_fraction ? lo : hi) = b0;
  }
  double b0 = 0.5 * (lo + hi);

  const int top = std::max(1, static_cast<int>(std::ceil(cfg.top_fraction * M)));
  for (int i = 0; i < cfg.n_persons; ++i) {
    std::mt19937_64 rng(derive_seed(cfg.seed, 4, static_cast<std::uint64_t>(i)));
    Person& person = cohort.persons[i];
    double p_top = 1.0 / (1.0 + std::exp(-(b0 + partial[i])));
    bool placed_top = runif(rng) < p_top;

    double phd_pi = prestige[draws[i].phd_uni];
    std::vector<double> wgt;
    int base = placed_top ? 0 : top;
    int count = placed_top ? top : M - top;
    wgt.reserve(count);
    for (int k = base; k < base + count; ++k)
      wgt.push_back(std::exp(1.5 * prestige[k] + 2.0 * prestige[k] * phd_pi));
    person.placement_university = uni_ids[base + sample_weighted(rng, wgt)];

    if (runif(rng) < cfg.mover_fraction && cfg.n_subfields > 1) {
      int other = 1 + rint(rng, cfg.n_subfields - 1);
      person.placement_subfield = 1 + (person.phd_subfield - 1 + other) % cfg.n_subfields;
    } else {
      person.placement_subfield = person.phd_subfield;
    }
    person.placement_year = person.grad_year + 1 + rint(rng, 4);
  }

  // flat citation baselines over every (active discipline, touched year)
  int year_lo = cfg.grad_year_min - 4, year_hi = cfg.grad_year_max + 10;
  for (int d = 1; d <= K; ++d)
    for (int y = year_lo; y <= year_hi; ++y) cohort.citation_baselines[{d, y}] = 8.0;

  compute_derived_covariates(cohort);
  return cohort;
}

}  // namespace hirepath
