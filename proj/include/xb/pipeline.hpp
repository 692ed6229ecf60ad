#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "xb/sampler.hpp"
#include "xb/verify.hpp"

namespace xb {

struct SweepCell {
  std::uint32_t n = 0;
  std::uint32_t m = 0;  // m = n + t for rank sweeps
  std::uint32_t reps = 0;
};

struct SweepConfig {
  std::vector<SweepCell> cells;
  std::uint64_t master_seed = 1;
  std::string out_dir;
  BalanceMode balance = BalanceMode::kExactPerN;
  int threads = 1;
  bool brute_force_verify = true;  // still guarded by kBruteForceMaxVars
};

struct SweepRow {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint32_t reps = 0;
  double mean_tprime = 0.0;
  double median_tprime = 0.0;
  double q90_tprime = 0.0;
  double sat_frac = 0.0;
  double frac_full_rank = 0.0;
  std::uint32_t successes = 0;  // reps with rank(A) = n
  double gen_time_s = 0.0;
  double verify_time_s = 0.0;
};

// Per-n t' and SAT-fraction diagnostics. Writes summary.csv and
// report_3sat_bal.md under out_dir when it is non-empty.
std::vector<SweepRow> run_diagnostics(const SweepConfig &cfg);

// Full-rank counting over a (n, t) grid; m = n + t. Writes rank_sweep.csv
// under out_dir when non-empty.
std::vector<SweepRow> run_rank_sweep(const SweepConfig &cfg);

struct ExportResult {
  std::vector<SweepRow> rows;
  VerifySummary verify;
  std::string cnf_dir;
  std::size_t files_written = 0;
  bool ok = false;  // all files written and match rate 1.0
};

// generate -> translate -> DIMACS per rep, then verify the directory and
// emit cnf_sha256.csv, gen_times.csv, verify_times.csv, verify_report.csv,
// summary.csv and report_3sat_bal.md under out_dir.
ExportResult run_full_export(const SweepConfig &cfg);

std::string sha256_file_hex(const std::string &path);
void write_sha256_manifest(const std::string &cnf_dir,
                           const std::string &csv_path);

struct Predictor {
  std::string name;
  std::function<bool(const XorInstance &)> fn;
};

// constant-0, constant-1, coin-flip (seeded), rhs-parity
std::vector<Predictor> builtin_predictors(std::uint64_t coin_seed);

struct AdvantageEstimate {
  std::string predictor;
  std::size_t samples = 0;
  double agree_frac = 0.0;
  double advantage = 0.0;  // |agree_frac - 1/2|
  double ci_low = 0.0;     // Wilson 95% interval mapped to the advantage
  double ci_high = 0.0;
};

AdvantageEstimate estimate_advantage(const Predictor &pred,
                                     const GenConfig &cfg,
                                     std::size_t samples);

}  // namespace xb
