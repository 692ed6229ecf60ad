#include "xb/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "xb/translate.hpp"

namespace xb {

namespace fs = std::filesystem;

namespace {

double now_minus(const std::chrono::steady_clock::time_point &t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct TprimeStats {
  double mean = 0.0, median = 0.0, q90 = 0.0;
};

TprimeStats tprime_stats(std::vector<std::uint32_t> values) {
  TprimeStats s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (std::uint32_t v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  s.median = values[values.size() / 2];
  s.q90 = values[(values.size() * 9) / 10 == values.size()
                     ? values.size() - 1
                     : (values.size() * 9) / 10];
  return s;
}

void write_summary_csv(const std::vector<SweepRow> &rows,
                       const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "n,m,reps,mean_tprime,median_tprime,q90_tprime,sat_frac,"
         "frac_full_rank,gen_time_s,verify_time_s\n";
  for (const SweepRow &r : rows) {
    out << r.n << "," << r.m << "," << r.reps << "," << r.mean_tprime << ","
        << r.median_tprime << "," << r.q90_tprime << "," << r.sat_frac << ","
        << r.frac_full_rank << "," << r.gen_time_s << "," << r.verify_time_s
        << "\n";
  }
}

void write_report_md(const std::vector<SweepRow> &rows,
                     const VerifySummary *verify, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "# Balanced 3XOR -> 3SAT report\n\n";
  out << "| n | m | reps | mean t' | median t' | q90 t' | SAT frac |\n";
  out << "|---|---|------|---------|-----------|--------|----------|\n";
  for (const SweepRow &r : rows) {
    out << "| " << r.n << " | " << r.m << " | " << r.reps << " | "
        << r.mean_tprime << " | " << r.median_tprime << " | " << r.q90_tprime
        << " | " << r.sat_frac << " |\n";
  }
  if (verify) {
    out << "\nVerification: " << verify->consistent << "/" << verify->checked
        << " consistent, match rate " << std::fixed << std::setprecision(3)
        << verify->match_rate << "\n";
  }
}

}  // namespace

std::vector<SweepRow> run_diagnostics(const SweepConfig &cfg) {
  std::vector<SweepRow> rows;
  for (const SweepCell &cell : cfg.cells) {
    if (cell.reps == 0) throw std::invalid_argument("run_diagnostics: reps == 0");
    GenConfig gen{cell.n, cell.m, cell.reps, cfg.master_seed, cfg.balance};
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<XorInstance> batch = generate_batch(gen, cfg.threads);

    SweepRow row;
    row.n = cell.n;
    row.m = cell.m;
    row.reps = cell.reps;
    std::vector<std::uint32_t> tprimes;
    std::size_t sat = 0, full_rank = 0;
    for (const XorInstance &inst : batch) {
      tprimes.push_back(inst.corank);
      if (inst.label) ++sat;
      if (inst.corank == cell.m - cell.n) ++full_rank;  // rank(A) = n
    }
    const TprimeStats st = tprime_stats(std::move(tprimes));
    row.mean_tprime = st.mean;
    row.median_tprime = st.median;
    row.q90_tprime = st.q90;
    row.sat_frac = static_cast<double>(sat) / static_cast<double>(cell.reps);
    row.successes = static_cast<std::uint32_t>(full_rank);
    row.frac_full_rank =
        static_cast<double>(full_rank) / static_cast<double>(cell.reps);
    row.gen_time_s = now_minus(t0);
    rows.push_back(row);
  }
  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    write_summary_csv(rows, (fs::path(cfg.out_dir) / "summary.csv").string());
    write_report_md(rows, nullptr,
                    (fs::path(cfg.out_dir) / "report_3sat_bal.md").string());
  }
  return rows;
}

std::vector<SweepRow> run_rank_sweep(const SweepConfig &cfg) {
  std::vector<SweepRow> rows;
  for (const SweepCell &cell : cfg.cells) {
    SweepRow row;
    row.n = cell.n;
    row.m = cell.m;
    row.reps = cell.reps;
    const auto t0 = std::chrono::steady_clock::now();
    std::uint32_t successes = 0;
    for (std::uint32_t rep = 0; rep < cell.reps; ++rep) {
      SplitMix64 rng(derive_seed(cfg.master_seed, cell.n, rep));
      const GF2Matrix a = sample_incidence(cell.n, cell.m, rng);
      if (rank(a) == cell.n) ++successes;
    }
    row.successes = successes;
    row.frac_full_rank =
        static_cast<double>(successes) / static_cast<double>(cell.reps);
    row.gen_time_s = now_minus(t0);
    rows.push_back(row);
  }
  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    std::ofstream out(fs::path(cfg.out_dir) / "rank_sweep.csv",
                      std::ios::binary);
    out << "n,t,m,N,reps,successes,frac_full_rank\n";
    for (const SweepRow &r : rows) {
      out << r.n << "," << (r.m - r.n) << "," << r.m << ","
          << encoding_length(r.n, r.m) << "," << r.reps << "," << r.successes
          << "," << r.frac_full_rank << "\n";
    }
  }
  return rows;
}

std::string sha256_file_hex(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  EVP_MD_CTX *ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i)
    os << std::setw(2) << static_cast<int>(digest[i]);
  return os.str();
}

void write_sha256_manifest(const std::string &cnf_dir,
                           const std::string &csv_path) {
  std::vector<std::string> files;
  for (const auto &entry : fs::directory_iterator(cnf_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cnf")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  std::ofstream out(csv_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + csv_path);
  out << "file,sha256\n";
  for (const std::string &f : files)
    out << fs::path(f).filename().string() << "," << sha256_file_hex(f)
        << "\n";
}

ExportResult run_full_export(const SweepConfig &cfg) {
  if (cfg.out_dir.empty())
    throw std::invalid_argument("run_full_export: out_dir is required");
  ExportResult result;
  const fs::path out_dir(cfg.out_dir);
  const fs::path cnf_dir = out_dir / "cnf";
  fs::create_directories(cnf_dir);
  result.cnf_dir = cnf_dir.string();

  bool all_written = true;
  std::ofstream gen_times(out_dir / "gen_times.csv", std::ios::binary);
  gen_times << "n,reps,gen_time_s\n";

  for (const SweepCell &cell : cfg.cells) {
    GenConfig gen{cell.n, cell.m, cell.reps, cfg.master_seed, cfg.balance};
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<XorInstance> batch = generate_batch(gen, cfg.threads);

    SweepRow row;
    row.n = cell.n;
    row.m = cell.m;
    row.reps = cell.reps;
    std::vector<std::uint32_t> tprimes;
    std::size_t sat = 0;
    for (std::uint32_t rep = 0; rep < cell.reps; ++rep) {
      const XorInstance &inst = batch[rep];
      tprimes.push_back(inst.corank);
      if (inst.label) ++sat;
      try {
        DimacsMeta meta;
        meta.seed = cfg.master_seed;
        meta.rep = rep;
        meta.m_xor = cell.m;
        meta.tprime = inst.corank;
        meta.label = inst.label ? 1 : 0;
        write_dimacs_file(translate(inst),
                          (cnf_dir / dimacs_file_name(cell.n, rep)).string(),
                          &meta);
        ++result.files_written;
      } catch (const std::exception &) {
        all_written = false;  // continue per-file, fail the run summary
      }
    }
    const TprimeStats st = tprime_stats(std::move(tprimes));
    row.mean_tprime = st.mean;
    row.median_tprime = st.median;
    row.q90_tprime = st.q90;
    row.sat_frac = static_cast<double>(sat) / static_cast<double>(cell.reps);
    row.gen_time_s = now_minus(t0);
    gen_times << cell.n << "," << cell.reps << "," << row.gen_time_s << "\n";
    result.rows.push_back(row);
  }

  write_sha256_manifest(cnf_dir.string(),
                        (out_dir / "cnf_sha256.csv").string());

  VerifyOptions vopt;
  vopt.brute_force = cfg.brute_force_verify;
  vopt.threads = cfg.threads;
  result.verify = verify_directory(cnf_dir.string(), vopt);
  write_verify_report_csv(result.verify,
                          (out_dir / "verify_report.csv").string());
  write_verify_times_csv(result.verify,
                         (out_dir / "verify_times.csv").string());

  for (SweepRow &row : result.rows) {
    double t = 0.0;
    for (const VerifyRecord &rec : result.verify.records)
      if (rec.n == row.n) t += rec.verify_time_s;
    row.verify_time_s = t;
  }

  write_summary_csv(result.rows, (out_dir / "summary.csv").string());
  write_report_md(result.rows, &result.verify,
                  (out_dir / "report_3sat_bal.md").string());
  result.ok = all_written && result.verify.match_rate == 1.0;
  return result;
}

std::vector<Predictor> builtin_predictors(std::uint64_t coin_seed) {
  std::vector<Predictor> preds;
  preds.push_back({"const0", [](const XorInstance &) { return false; }});
  preds.push_back({"const1", [](const XorInstance &) { return true; }});
  auto coin = std::make_shared<SplitMix64>(coin_seed);
  preds.push_back(
      {"coinflip", [coin](const XorInstance &) { return coin->next_bit(); }});
  preds.push_back({"rhs-parity", [](const XorInstance &inst) {
                     bool p = false;
                     for (const XorClause &c : inst.clauses)
                       if (c.rhs) p = !p;
                     return p;
                   }});
  return preds;
}

AdvantageEstimate estimate_advantage(const Predictor &pred,
                                     const GenConfig &cfg,
                                     std::size_t samples) {
  if (samples < 100)
    throw std::invalid_argument("estimate_advantage: need at least 100 samples");
  GenConfig gen = cfg;
  gen.reps = static_cast<std::uint32_t>(samples);
  if (gen.balance == BalanceMode::kExactPerN && gen.reps % 2 != 0) ++gen.reps;
  const std::vector<XorInstance> batch = generate_batch(gen);

  std::size_t agree = 0;
  for (const XorInstance &inst : batch)
    if (pred.fn(inst) == inst.label) ++agree;

  AdvantageEstimate est;
  est.predictor = pred.name;
  est.samples = batch.size();
  const double nn = static_cast<double>(batch.size());
  const double p = static_cast<double>(agree) / nn;
  est.agree_frac = p;
  est.advantage = std::abs(p - 0.5);

  // Wilson 95% interval for the agreement rate, folded around 1/2.
  const double z = 1.959963984540054;
  const double denom = 1.0 + z * z / nn;
  const double center = (p + z * z / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
  const double lo = center - half, hi = center + half;
  est.ci_low = (lo <= 0.5 && hi >= 0.5)
                   ? 0.0
                   : std::min(std::abs(lo - 0.5), std::abs(hi - 0.5));
  est.ci_high = std::max(std::abs(lo - 0.5), std::abs(hi - 0.5));
  return est;
}

}  // namespace xb
