#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "xb/gf2.hpp"
#include "xb/rng.hpp"

namespace xb {

// One parity constraint x_i ^ x_j ^ x_k = rhs with i < j < k.
struct XorClause {
  std::array<std::uint32_t, 3> vars;
  bool rhs = false;

  friend bool operator==(const XorClause &, const XorClause &) = default;
};

struct XorInstance {
  std::uint32_t n = 0;
  std::vector<XorClause> clauses;
  std::uint32_t corank = 0;  // t' = m - rank(A)
  GF2Vector u;               // length t', H(A) * b = u
  bool label = false;        // 1 iff u == 0

  GF2Matrix incidence() const;  // A, m x n, row weight 3
  GF2Vector rhs_vector() const; // b, length m
};

enum class BalanceMode { kExpected, kExactPerN };

struct GenConfig {
  std::uint32_t n = 0;
  std::uint32_t m = 0;  // must exceed n so that t' >= 1
  std::uint32_t reps = 0;
  std::uint64_t master_seed = 0;
  BalanceMode balance = BalanceMode::kExactPerN;
};

// m independent rows, each the indicator of a uniform 3-subset of [n].
GF2Matrix sample_incidence(std::uint32_t n, std::uint32_t m, SplitMix64 &rng);

// label=1 -> the zero vector; label=0 -> uniform over the 2^t'-1 nonzero
// vectors (H has full row rank, so Im(H) is the whole space).
GF2Vector sample_target_u(std::uint32_t tprime, bool label, SplitMix64 &rng);

XorInstance generate_instance(std::uint32_t n, std::uint32_t m, bool label,
                              SplitMix64 &rng);

// Exact-mode label template: reps/2 ones then reps/2 zeros, permuted by a
// stream derived from (master_seed, n) only; independent of all (A, u) draws.
std::vector<bool> exact_balance_labels(const GenConfig &cfg);

// The rep'th instance of a batch, from child stream (master_seed, n, rep).
// forced_label pins the label (exact mode); otherwise the rep's stream draws
// a fair bit (expected mode).
XorInstance generate_rep(const GenConfig &cfg, std::uint32_t rep,
                         std::optional<bool> forced_label);

// Full batch, ordered by rep index. threads > 1 fans reps out via OpenMP;
// the output is bit-identical for any thread count.
std::vector<XorInstance> generate_batch(const GenConfig &cfg, int threads = 1);

}  // namespace xb
