#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xb/translate.hpp"

namespace xb {

// Rebuilds A from the clause triples and returns [H(A) * b == 0], i.e.
// whether A x = b is solvable over GF(2).
bool recompute_label(const XorSkeleton &skeleton);

inline constexpr std::uint32_t kBruteForceMaxVars = 24;

// Exhaustive assignment search with early exit on the first model. Guarded:
// throws std::invalid_argument when psi.n > kBruteForceMaxVars.
bool brute_force_sat(const CnfFormula &psi);

// Model count over all 2^n assignments (same guard); test oracle use.
std::uint64_t count_models(const CnfFormula &psi);

struct VerifyRecord {
  std::string file;
  std::uint32_t n = 0;
  std::uint32_t m = 0;        // XOR clauses (m' / 4)
  std::uint32_t m_prime = 0;  // CNF clauses
  std::optional<int> label_recorded;
  std::optional<int> label_recomputed;  // absent when the file is unreadable
  std::optional<int> sat_bruteforce;
  bool consistent = false;
  double verify_time_s = 0.0;
};

struct VerifyOptions {
  bool brute_force = true;  // applies only when n <= kBruteForceMaxVars
  int threads = 1;
};

struct VerifySummary {
  std::vector<VerifyRecord> records;  // sorted by file name
  std::size_t checked = 0;
  std::size_t consistent = 0;
  double match_rate = 1.0;  // vacuously 1.0 on an empty directory
  bool vacuous = false;
};

VerifyRecord verify_file(const std::string &path, const VerifyOptions &opt);

// Verifies every *.cnf in the directory. Malformed files become inconsistent
// records rather than being skipped.
VerifySummary verify_directory(const std::string &dir, const VerifyOptions &opt);

void write_verify_report_csv(const VerifySummary &s, const std::string &path);
void write_verify_times_csv(const VerifySummary &s, const std::string &path);

}  // namespace xb
