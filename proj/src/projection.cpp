#include "xb/projection.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace xb {

SurvivorPick pick_survivor(const GF2Matrix &h, SplitMix64 &rng) {
  const std::size_t tprime = h.rows();
  if (tprime == 0)
    throw std::invalid_argument("pick_survivor: nothing to project (t' = 0)");

  GF2Vector alpha(tprime);
  do {
    for (std::size_t i = 0; i < tprime; ++i) alpha.set(i, rng.next_bit());
  } while (alpha.is_zero());

  // Complete alpha to a basis greedily with standard unit vectors, tracking
  // independence through an incremental elimination of the chosen rows.
  GF2Matrix t(tprime, tprime);
  t.set_row(0, alpha);
  GF2Matrix reduced(tprime, tprime);
  reduced.set_row(0, alpha);
  std::size_t chosen = 1;
  // keep `reduced` in echelon form as rows are added
  auto reduce_row = [&](GF2Vector v) {
    for (std::size_t r = 0; r < chosen; ++r) {
      std::size_t lead = tprime;
      for (std::size_t c = 0; c < tprime; ++c)
        if (reduced.get(r, c)) {
          lead = c;
          break;
        }
      if (lead < tprime && v.get(lead)) v.xor_with(reduced.row(r));
    }
    return v;
  };
  for (std::size_t i = 0; i < tprime && chosen < tprime; ++i) {
    GF2Vector e(tprime);
    e.set(i, true);
    const GF2Vector res = reduce_row(e);
    if (res.is_zero()) continue;
    t.set_row(chosen, e);
    reduced.set_row(chosen, res);
    ++chosen;
  }

  SurvivorPick pick;
  pick.alpha = std::move(alpha);
  pick.h_prime = t.mul(h);
  pick.transform = std::move(t);
  return pick;
}

bool ProjectionOutcome::target() const {
  return u_prime.get(0) != affine_offset;
}

std::size_t delta_statistic(const GF2Matrix &h_prime,
                            const GF2Vector &survivor_row) {
  if (h_prime.rows() < 2)
    throw std::invalid_argument("delta_statistic: needs at least two rows");
  const std::size_t m = h_prime.cols();
  GF2Matrix minus(h_prime.rows() - 1, m);
  for (std::size_t r = 1; r < h_prime.rows(); ++r)
    minus.set_row(r - 1, h_prime.row(r));
  const std::size_t base_rank = rank(minus);
  std::size_t count = 0;
  for (std::size_t c = 0; c < m; ++c) {
    if (!survivor_row.get(c)) continue;
    GF2Matrix without = minus;
    for (std::size_t r = 0; r < without.rows(); ++r) without.set(r, c, false);
    if (rank(without) < base_rank) ++count;
  }
  return count;
}

ProjectionOutcome project(const GF2Matrix &h, const GF2Vector &u,
                          SplitMix64 &rng, std::uint32_t max_rejections) {
  const std::size_t tprime = h.rows();
  const std::size_t m = h.cols();
  if (tprime == 0)
    throw std::invalid_argument("project: nothing to project (t' = 0)");
  if (u.size() != tprime)
    throw std::invalid_argument("project: len(u) != rows(h)");

  // alpha and the permutations use separate child streams.
  SplitMix64 alpha_rng(rng.next());
  SplitMix64 pi_rng(rng.next());

  ProjectionOutcome out;
  out.pick = pick_survivor(h, alpha_rng);
  out.u_prime = out.pick.transform.mul(u);
  const GF2Vector survivor = out.pick.h_prime.row(0);
  out.w_star = survivor.weight();

  if (tprime == 1) {
    // identity projection: S empty, every column free
    out.accepted = true;
    out.free_set.resize(m);
    for (std::size_t c = 0; c < m; ++c) out.free_set[c] = c;
    out.free_support = out.w_star;
    out.free_row = survivor;
    out.affine_offset = false;
    return out;
  }

  // rows 2..t' augmented with u'_{-1}; eliminated per permutation below
  GF2Matrix minus_aug(tprime - 1, m + 1);
  for (std::size_t r = 1; r < tprime; ++r) {
    for (std::size_t c = 0; c < m; ++c)
      if (out.pick.h_prime.get(r, c)) minus_aug.set(r - 1, c, true);
    if (out.u_prime.get(r)) minus_aug.set(r - 1, m, true);
  }
  out.delta_upper = delta_statistic(out.pick.h_prime, survivor);

  while (true) {
    const std::vector<std::size_t> pi = random_permutation(m, pi_rng);

    // greedy pivot rule: eliminate rows 2..t' scanning columns in order pi
    GF2Matrix work = minus_aug;
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t c : pi) {
      std::size_t r = next_row;
      while (r < work.rows() && !work.get(r, c)) ++r;
      if (r == work.rows()) continue;
      work.row_swap(next_row, r);
      for (std::size_t r2 = 0; r2 < work.rows(); ++r2)
        if (r2 != next_row && work.get(r2, c)) work.row_xor(r2, next_row);
      pivots.push_back(c);
      ++next_row;
    }
    if (pivots.size() != tprime - 1)
      throw std::logic_error("project: H'_{-1} lost rank");  // unreachable

    std::vector<bool> in_s(m, false);
    for (std::size_t c : pivots) in_s[c] = true;

    std::size_t free_support = 0;
    for (std::size_t c = 0; c < m; ++c)
      if (survivor.get(c) && !in_s[c]) ++free_support;

    if (free_support == 0) {
      if (out.rejections >= max_rejections) {
        out.accepted = false;
        return out;  // delta_upper carries the all-coloops diagnostic
      }
      ++out.rejections;
      continue;
    }

    out.accepted = true;
    out.pivot_set = pivots;
    out.free_set.clear();
    for (std::size_t c = 0; c < m; ++c)
      if (!in_s[c]) out.free_set.push_back(c);
    out.free_support = free_support;

    // Reduce the survivor over the pivot rows; the reduction lands it on F
    // and folds the matching u'_{-1} bits into the affine offset.
    GF2Vector row = survivor;
    bool offset = false;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (!row.get(pivots[r])) continue;
      for (std::size_t c = 0; c < m; ++c)
        if (work.get(r, c)) row.flip(c);
      if (work.get(r, m)) offset = !offset;
    }
    out.free_row = std::move(row);
    out.affine_offset = offset;
    return out;
  }
}

double measure_preservation_check(const GF2Matrix &h, const GF2Vector &u,
                                  const ProjectionOutcome &outcome) {
  const std::size_t m = h.cols();
  if (m > 22)
    throw std::invalid_argument("measure_preservation_check: m exceeds guard");
  if (!outcome.accepted)
    throw std::invalid_argument(
        "measure_preservation_check: outcome was not accepted");

  const std::optional<GF2Vector> b0 = solve_affine(h, u);
  if (!b0) throw std::invalid_argument("measure_preservation_check: empty fiber");
  const GF2Matrix kernel = right_kernel_basis(h);

  auto to_mask = [m](const GF2Vector &v) {
    std::uint64_t mask = 0;
    for (std::size_t c = 0; c < m; ++c)
      if (v.get(c)) mask |= std::uint64_t{1} << c;
    return mask;
  };
  const std::uint64_t base = to_mask(*b0);
  std::vector<std::uint64_t> kmasks;
  for (std::size_t i = 0; i < kernel.rows(); ++i)
    kmasks.push_back(to_mask(kernel.row(i)));

  const std::size_t fsize = outcome.free_set.size();
  auto project_free = [&](std::uint64_t b) {
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < fsize; ++i)
      if ((b >> outcome.free_set[i]) & 1) x |= std::uint64_t{1} << i;
    return x;
  };
  std::uint64_t free_row_mask = 0;
  for (std::size_t i = 0; i < fsize; ++i)
    if (outcome.free_row.get(outcome.free_set[i]))
      free_row_mask |= std::uint64_t{1} << i;
  const int target = outcome.target() ? 1 : 0;

  std::vector<std::uint32_t> counts(std::uint64_t{1} << fsize, 0);
  const std::uint64_t fiber_size = std::uint64_t{1} << kmasks.size();
  for (std::uint64_t sel = 0; sel < fiber_size; ++sel) {
    std::uint64_t b = base;
    for (std::size_t i = 0; i < kmasks.size(); ++i)
      if ((sel >> i) & 1) b ^= kmasks[i];
    ++counts[project_free(b)];
  }

  // Exact TV between the push-forward and uniform on the admissible b_F set.
  std::uint64_t image_size = 0;
  for (std::uint64_t x = 0; x < counts.size(); ++x)
    if ((std::popcount(x & free_row_mask) & 1) == target) ++image_size;
  double tv = 0.0;
  for (std::uint64_t x = 0; x < counts.size(); ++x) {
    const bool admissible =
        (std::popcount(x & free_row_mask) & 1) == target;
    const double p = static_cast<double>(counts[x]) /
                     static_cast<double>(fiber_size);
    const double q = admissible ? 1.0 / static_cast<double>(image_size) : 0.0;
    tv += std::abs(p - q);
  }
  return tv / 2.0;
}

std::vector<ProjectionTrialRow> run_projection_trials(const GenConfig &cfg,
                                                      std::size_t samples) {
  std::vector<ProjectionTrialRow> rows;
  rows.reserve(samples);
  for (std::size_t trial = 0; trial < samples; ++trial) {
    SplitMix64 inst_rng(derive_seed(cfg.master_seed, 0xf5ee, trial));
    const GF2Matrix a = sample_incidence(cfg.n, cfg.m, inst_rng);
    const GF2Matrix h = left_kernel_basis(a);
    if (h.rows() == 0) continue;  // degenerate: full row rank incidence
    const bool label = inst_rng.next_bit();
    const GF2Vector u =
        sample_target_u(static_cast<std::uint32_t>(h.rows()), label, inst_rng);

    SplitMix64 proj_rng(derive_seed(cfg.master_seed, 0x9607, trial));
    const ProjectionOutcome out = project(h, u, proj_rng);

    ProjectionTrialRow row;
    row.n = cfg.n;
    row.m = cfg.m;
    row.t_prime = static_cast<std::uint32_t>(h.rows());
    row.w_star = out.w_star;
    row.free_support = out.free_support;
    row.accepted = out.accepted;
    row.rejections = out.rejections;
    row.delta_upper = out.delta_upper;
    row.trial = trial;
    rows.push_back(row);
  }
  return rows;
}

void write_projection_sweep_csv(const std::vector<ProjectionTrialRow> &rows,
                                const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "n,m,t_prime,w_star,free_support,accepted,rejections,delta_upper,"
         "trial\n";
  for (const ProjectionTrialRow &r : rows) {
    out << r.n << "," << r.m << "," << r.t_prime << "," << r.w_star << ","
        << r.free_support << "," << (r.accepted ? 1 : 0) << "," << r.rejections
        << "," << r.delta_upper << "," << r.trial << "\n";
  }
}

FreeSupportSummary summarize_projection_trials(
    const std::vector<ProjectionTrialRow> &rows, double gamma0) {
  FreeSupportSummary s;
  s.samples = rows.size();
  std::vector<double> free_fracs;
  double w_frac_sum = 0.0, delta_sum = 0.0;
  std::size_t threshold_hits = 0;

  for (const ProjectionTrialRow &row : rows) {
    const double m = static_cast<double>(row.m);
    w_frac_sum += static_cast<double>(row.w_star) / m;
    delta_sum += static_cast<double>(row.delta_upper);
    if (!row.accepted) continue;
    ++s.accepted;
    free_fracs.push_back(static_cast<double>(row.free_support) / m);
    const double threshold =
        0.5 * (1.0 - static_cast<double>(row.t_prime - 1) / m) * gamma0 * m;
    if (static_cast<double>(row.free_support) >= threshold) ++threshold_hits;
  }

  if (!rows.empty()) {
    s.mean_w_star_frac = w_frac_sum / static_cast<double>(rows.size());
    s.mean_delta_upper = delta_sum / static_cast<double>(rows.size());
  }
  if (!free_fracs.empty()) {
    std::sort(free_fracs.begin(), free_fracs.end());
    double sum = 0.0;
    for (double f : free_fracs) sum += f;
    s.mean_free_support_frac = sum / static_cast<double>(free_fracs.size());
    s.median_free_support_frac = free_fracs[free_fracs.size() / 2];
    s.q10_free_support_frac = free_fracs[free_fracs.size() / 10];
    s.threshold_mass = static_cast<double>(threshold_hits) /
                       static_cast<double>(free_fracs.size());
  }
  return s;
}

FreeSupportSummary free_support_sweep(const GenConfig &cfg,
                                      std::size_t samples, double gamma0) {
  return summarize_projection_trials(run_projection_trials(cfg, samples),
                                     gamma0);
}

}  // namespace xb
