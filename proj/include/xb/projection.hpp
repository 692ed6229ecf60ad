#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xb/gf2.hpp"
#include "xb/sampler.hpp"

namespace xb {

struct SurvivorPick {
  GF2Vector alpha;      // uniform nonzero in {0,1}^t'
  GF2Matrix transform;  // invertible T with first row alpha
  GF2Matrix h_prime;    // T * h; row 0 is the survivor alpha^T h
};

// alpha uniform nonzero; T completes alpha to a basis with unit vectors.
SurvivorPick pick_survivor(const GF2Matrix &h, SplitMix64 &rng);

struct ProjectionOutcome {
  bool accepted = false;
  std::uint32_t rejections = 0;

  SurvivorPick pick;
  GF2Vector u_prime;  // T * u

  std::size_t w_star = 0;               // |supp(survivor)|
  std::vector<std::size_t> pivot_set;   // S, |S| = t' - 1
  std::vector<std::size_t> free_set;    // F = [m] \ S
  std::size_t free_support = 0;         // |supp(survivor) ∩ F|
  std::size_t delta_upper = 0;          // |Coloops(H'_{-1}) ∩ supp(survivor)|

  // On the fiber the survivor evaluates as <free_row, b_F> ^ affine_offset,
  // with free_row the survivor reduced over the pivot rows (supported on F).
  // Equivalently every fiber point satisfies <free_row, b> = target().
  GF2Vector free_row;
  bool affine_offset = false;

  bool target() const;  // u'_1 ^ affine_offset
};

// The survivor-selection experiment: accept a column permutation's greedy
// pivot set when the survivor keeps support on the free columns. Acceptance
// is deterministic on the first draw when w_star > t' - 1. On exhaustion the
// outcome reports accepted = false with delta_upper as the coloop diagnostic.
ProjectionOutcome project(const GF2Matrix &h, const GF2Vector &u,
                          SplitMix64 &rng, std::uint32_t max_rejections = 64);

// |Coloops(h_prime without row 0) ∩ supp(survivor_row)|, the upper bound on
// the coloop bias statistic.
std::size_t delta_statistic(const GF2Matrix &h_prime,
                            const GF2Vector &survivor_row);

// Enumerates the fiber {b : h b = u}, pushes each point to b_F and returns
// the exact total-variation distance between the image distribution and the
// uniform distribution on {b_F : <free_row, b_F> = target}. Guard: cols <= 22.
double measure_preservation_check(const GF2Matrix &h, const GF2Vector &u,
                                  const ProjectionOutcome &outcome);

struct ProjectionTrialRow {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint32_t t_prime = 0;
  std::size_t w_star = 0;
  std::size_t free_support = 0;
  bool accepted = false;
  std::uint32_t rejections = 0;
  std::size_t delta_upper = 0;
  std::size_t trial = 0;
};

// One projection per generated instance; instance and projection draws use
// separate child streams of cfg.master_seed.
std::vector<ProjectionTrialRow> run_projection_trials(const GenConfig &cfg,
                                                      std::size_t samples);

void write_projection_sweep_csv(const std::vector<ProjectionTrialRow> &rows,
                                const std::string &path);

struct FreeSupportSummary {
  std::size_t samples = 0;
  std::size_t accepted = 0;
  double mean_w_star_frac = 0.0;       // E[w* / m]
  double mean_free_support_frac = 0.0; // E[free_support / m], accepted trials
  double median_free_support_frac = 0.0;
  double q10_free_support_frac = 0.0;
  double mean_delta_upper = 0.0;
  // Mass of accepted trials at or above (1/2)(1 - (t'-1)/m) * gamma0 * m.
  double threshold_mass = 0.0;
};

FreeSupportSummary free_support_sweep(const GenConfig &cfg,
                                      std::size_t samples, double gamma0);

FreeSupportSummary summarize_projection_trials(
    const std::vector<ProjectionTrialRow> &rows, double gamma0);

}  // namespace xb
