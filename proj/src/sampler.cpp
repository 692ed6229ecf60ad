#include "xb/sampler.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace xb {

GF2Matrix XorInstance::incidence() const {
  GF2Matrix a(clauses.size(), n);
  for (std::size_t r = 0; r < clauses.size(); ++r)
    for (std::uint32_t v : clauses[r].vars) a.set(r, v, true);
  return a;
}

GF2Vector XorInstance::rhs_vector() const {
  GF2Vector b(clauses.size());
  for (std::size_t r = 0; r < clauses.size(); ++r)
    if (clauses[r].rhs) b.set(r, true);
  return b;
}

static std::array<std::uint32_t, 3> sample_triple(std::uint32_t n,
                                                  SplitMix64 &rng) {
  std::array<std::uint32_t, 3> v;
  v[0] = static_cast<std::uint32_t>(rng.next_below(n));
  do {
    v[1] = static_cast<std::uint32_t>(rng.next_below(n));
  } while (v[1] == v[0]);
  do {
    v[2] = static_cast<std::uint32_t>(rng.next_below(n));
  } while (v[2] == v[0] || v[2] == v[1]);
  std::sort(v.begin(), v.end());
  return v;
}

GF2Matrix sample_incidence(std::uint32_t n, std::uint32_t m, SplitMix64 &rng) {
  if (n < 3) throw std::invalid_argument("sample_incidence: need n >= 3");
  GF2Matrix a(m, n);
  for (std::uint32_t r = 0; r < m; ++r)
    for (std::uint32_t v : sample_triple(n, rng)) a.set(r, v, true);
  return a;
}

GF2Vector sample_target_u(std::uint32_t tprime, bool label, SplitMix64 &rng) {
  if (tprime == 0 && !label)
    throw std::invalid_argument("sample_target_u: t'=0 admits no UNSAT target");
  GF2Vector u(tprime);
  if (label) return u;
  do {
    for (std::uint32_t i = 0; i < tprime; ++i) u.set(i, rng.next_bit());
  } while (u.is_zero());
  return u;
}

XorInstance generate_instance(std::uint32_t n, std::uint32_t m, bool label,
                              SplitMix64 &rng) {
  if (m <= n) throw std::invalid_argument("generate_instance: need m > n");
  const GF2Matrix a = sample_incidence(n, m, rng);
  const GF2Matrix h = left_kernel_basis(a);
  const std::uint32_t tprime = static_cast<std::uint32_t>(h.rows());
  const GF2Vector u = sample_target_u(tprime, label, rng);
  const GF2Vector b = sample_coset_uniform(h, u, rng);

  XorInstance inst;
  inst.n = n;
  inst.clauses.resize(m);
  for (std::uint32_t r = 0; r < m; ++r) {
    std::uint32_t k = 0;
    for (std::uint32_t c = 0; c < n && k < 3; ++c)
      if (a.get(r, c)) inst.clauses[r].vars[k++] = c;
    inst.clauses[r].rhs = b.get(r);
  }
  inst.corank = tprime;
  inst.u = u;
  inst.label = label;
  return inst;
}

std::vector<bool> exact_balance_labels(const GenConfig &cfg) {
  if (cfg.reps % 2 != 0)
    throw std::invalid_argument("exact balance needs an even rep count");
  std::vector<bool> labels(cfg.reps);
  for (std::uint32_t i = 0; i < cfg.reps / 2; ++i) labels[i] = true;
  SplitMix64 rng(derive_seed(cfg.master_seed, cfg.n, 0xba1a) /* label stream */);
  const std::vector<std::size_t> perm = random_permutation(cfg.reps, rng);
  std::vector<bool> out(cfg.reps);
  for (std::uint32_t i = 0; i < cfg.reps; ++i) out[perm[i]] = labels[i];
  return out;
}

XorInstance generate_rep(const GenConfig &cfg, std::uint32_t rep,
                         std::optional<bool> forced_label) {
  SplitMix64 rng(derive_seed(cfg.master_seed, cfg.n, rep));
  const bool label = forced_label ? *forced_label : rng.next_bit();
  return generate_instance(cfg.n, cfg.m, label, rng);
}

std::vector<XorInstance> generate_batch(const GenConfig &cfg, int threads) {
  if (cfg.reps == 0) throw std::invalid_argument("generate_batch: reps == 0");
  std::vector<std::optional<bool>> forced(cfg.reps);
  if (cfg.balance == BalanceMode::kExactPerN) {
    const std::vector<bool> labels = exact_balance_labels(cfg);
    for (std::uint32_t i = 0; i < cfg.reps; ++i) forced[i] = labels[i];
  }

  std::vector<XorInstance> out(cfg.reps);
  if (threads <= 1) {
    for (std::uint32_t r = 0; r < cfg.reps; ++r)
      out[r] = generate_rep(cfg, r, forced[r]);
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(cfg.reps); ++r)
      out[r] = generate_rep(cfg, static_cast<std::uint32_t>(r),
                            forced[static_cast<std::size_t>(r)]);
  }
  return out;
}

}  // namespace xb
