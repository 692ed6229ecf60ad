#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "xb/pipeline.hpp"
#include "xb/translate.hpp"
#include "oracles.hpp"

using namespace xb;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string &name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string csv_header(const fs::path &p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  return header;
}

}  // namespace

TEST_CASE("run_diagnostics: stats, balance, and artifacts") {
  TempDir dir("xb_pipe_diag");
  SweepConfig cfg;
  cfg.cells = {{30, 33, 40}, {40, 44, 40}};
  cfg.master_seed = 7;
  cfg.out_dir = dir.path.string();

  const auto rows = run_diagnostics(cfg);
  REQUIRE(rows.size() == 2);
  for (const SweepRow &r : rows) {
    CHECK(r.reps == 40);
    CHECK(r.sat_frac == 0.5);  // exact balance mode
    CHECK(r.mean_tprime >= static_cast<double>(r.m - r.n));
    CHECK(r.median_tprime <= r.q90_tprime);
    CHECK(r.frac_full_rank >= 0.0);
    CHECK(r.frac_full_rank <= 1.0);
  }

  CHECK(csv_header(dir.path / "summary.csv") ==
        "n,m,reps,mean_tprime,median_tprime,q90_tprime,sat_frac,"
        "frac_full_rank,gen_time_s,verify_time_s");
  CHECK(fs::exists(dir.path / "report_3sat_bal.md"));

  SweepConfig bad = cfg;
  bad.cells = {{30, 33, 0}};
  CHECK_THROWS_AS((void)run_diagnostics(bad), std::invalid_argument);
}

TEST_CASE("run_diagnostics: deterministic across thread counts") {
  SweepConfig serial;
  serial.cells = {{50, 55, 60}};
  serial.master_seed = 11;
  SweepConfig parallel = serial;
  parallel.threads = 4;
  const auto a = run_diagnostics(serial);
  const auto b = run_diagnostics(parallel);
  REQUIRE(a.size() == b.size());
  CHECK(a[0].mean_tprime == b[0].mean_tprime);
  CHECK(a[0].median_tprime == b[0].median_tprime);
  CHECK(a[0].sat_frac == b[0].sat_frac);
  CHECK(a[0].frac_full_rank == b[0].frac_full_rank);
}

TEST_CASE("run_rank_sweep: frac_full_rank against a direct recount") {
  TempDir dir("xb_pipe_rank");
  SweepConfig cfg;
  cfg.cells = {{20, 21, 50}, {20, 23, 50}};
  cfg.master_seed = 13;
  cfg.out_dir = dir.path.string();
  const auto rows = run_rank_sweep(cfg);
  REQUIRE(rows.size() == 2);

  for (const SweepRow &r : rows) {
    std::uint32_t expect = 0;
    for (std::uint32_t rep = 0; rep < r.reps; ++rep) {
      SplitMix64 rng(derive_seed(cfg.master_seed, r.n, rep));
      if (oracle::naive_rank(sample_incidence(r.n, r.m, rng)) == r.n) ++expect;
    }
    CHECK(r.successes == expect);
    CHECK(r.frac_full_rank == doctest::Approx(expect / 50.0));
  }
  // a larger t makes full rank at least as likely in aggregate expectation;
  // just require the monotone pair observed here doesn't invert wildly
  CHECK(rows[1].frac_full_rank >= rows[0].frac_full_rank);

  CHECK(csv_header(dir.path / "rank_sweep.csv") ==
        "n,t,m,N,reps,successes,frac_full_rank");
  std::ifstream in(dir.path / "rank_sweep.csv");
  std::string line;
  std::getline(in, line);  // header
  REQUIRE(std::getline(in, line));
  std::istringstream row(line);
  std::string field;
  std::getline(row, field, ',');
  CHECK(field == "20");
  std::getline(row, field, ',');
  CHECK(field == "1");  // t = m - n
  std::getline(row, field, ',');
  CHECK(field == "21");
  std::getline(row, field, ',');
  CHECK(field == std::to_string(encoding_length(20, 21)));
}

TEST_CASE("sha256: manifest matches an independent digest of the bytes") {
  TempDir dir("xb_pipe_sha");
  const fs::path f1 = dir.path / "a.cnf";
  {
    std::ofstream out(f1, std::ios::binary);
    out << "p cnf 0 0\n";
  }
  // known digest of the exact bytes "p cnf 0 0\n"
  CHECK(sha256_file_hex(f1.string()) ==
        "e160232d0ce8816f12ecdcdc7bb0e939b55fb5ca43414ae6077dfa3989655732");
  CHECK_THROWS_AS((void)sha256_file_hex((dir.path / "nope").string()),
                  std::runtime_error);

  const fs::path f2 = dir.path / "b.cnf";
  {
    std::ofstream out(f2, std::ios::binary);
    out << "p cnf 1 0\n";
  }
  const fs::path manifest = dir.path / "cnf_sha256.csv";
  write_sha256_manifest(dir.path.string(), manifest.string());
  std::ifstream in(manifest);
  std::string line;
  std::getline(in, line);
  CHECK(line == "file,sha256");
  std::getline(in, line);
  CHECK(line == "a.cnf," + sha256_file_hex(f1.string()));
  std::getline(in, line);
  CHECK(line == "b.cnf," + sha256_file_hex(f2.string()));
}

TEST_CASE("run_full_export: artifacts, verification, determinism") {
  TempDir dir_a("xb_pipe_export_a");
  SweepConfig cfg;
  cfg.cells = {{16, 18, 10}};
  cfg.master_seed = 99;
  cfg.out_dir = dir_a.path.string();

  const ExportResult res = run_full_export(cfg);
  CHECK(res.ok);
  CHECK(res.files_written == 10);
  CHECK(res.verify.checked == 10);
  CHECK(res.verify.match_rate == 1.0);
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0].sat_frac == 0.5);

  for (const char *name :
       {"cnf_sha256.csv", "gen_times.csv", "verify_times.csv",
        "verify_report.csv", "summary.csv", "report_3sat_bal.md"})
    CHECK(fs::exists(dir_a.path / name));
  for (std::uint32_t rep = 0; rep < 10; ++rep)
    CHECK(fs::exists(fs::path(res.cnf_dir) / dimacs_file_name(16, rep)));

  // file names carry the zero-padded convention
  CHECK(fs::exists(fs::path(res.cnf_dir) / "bal3xor_n16_rep007.cnf"));

  // byte-identical re-export with more threads
  TempDir dir_b("xb_pipe_export_b");
  SweepConfig cfg2 = cfg;
  cfg2.out_dir = dir_b.path.string();
  cfg2.threads = 4;
  const ExportResult res2 = run_full_export(cfg2);
  CHECK(res2.ok);
  for (std::uint32_t rep = 0; rep < 10; ++rep) {
    const std::string name = dimacs_file_name(16, rep);
    CHECK(slurp(fs::path(res.cnf_dir) / name) ==
          slurp(fs::path(res2.cnf_dir) / name));
  }
  CHECK(slurp(dir_a.path / "cnf_sha256.csv") ==
        slurp(dir_b.path / "cnf_sha256.csv"));

  SweepConfig noout;
  noout.cells = cfg.cells;
  CHECK_THROWS_AS((void)run_full_export(noout), std::invalid_argument);
}

TEST_CASE("run_full_export: recorded DIMACS metadata survives re-reading") {
  TempDir dir("xb_pipe_meta");
  SweepConfig cfg;
  cfg.cells = {{14, 16, 6}};
  cfg.master_seed = 1234;
  cfg.out_dir = dir.path.string();
  const ExportResult res = run_full_export(cfg);
  REQUIRE(res.ok);

  GenConfig gen{14, 16, 6, 1234, BalanceMode::kExactPerN};
  const auto batch = generate_batch(gen);
  for (std::uint32_t rep = 0; rep < 6; ++rep) {
    DimacsMeta meta;
    const CnfFormula psi = read_dimacs_file(
        (fs::path(res.cnf_dir) / dimacs_file_name(14, rep)).string(), &meta);
    CHECK(meta.seed == 1234);
    CHECK(meta.rep == rep);
    CHECK(meta.m_xor == 16);
    CHECK(meta.tprime == batch[rep].corank);
    CHECK(meta.label == (batch[rep].label ? 1 : 0));
    const XorSkeleton skel = invert(psi);
    CHECK(skel.clauses == batch[rep].clauses);
  }
}

TEST_CASE("run_full_export: a corrupted file breaks the match rate") {
  TempDir dir("xb_pipe_corrupt");
  SweepConfig cfg;
  cfg.cells = {{14, 16, 4}};
  cfg.master_seed = 5;
  cfg.out_dir = dir.path.string();
  const ExportResult res = run_full_export(cfg);
  REQUIRE(res.ok);

  // flip one clause literal sign in place, keeping the file well-formed
  const fs::path victim = fs::path(res.cnf_dir) / dimacs_file_name(14, 0);
  std::string text = slurp(victim);
  const std::size_t p = text.find("\n-");
  if (p != std::string::npos) {
    text.erase(p + 1, 1);  // drop the '-'
  } else {
    const std::size_t q = text.find("0\n", text.find("p cnf"));
    REQUIRE(q != std::string::npos);
    text.insert(text.find('\n', text.find("p cnf")) + 1, "-");
  }
  {
    std::ofstream out(victim, std::ios::binary);
    out << text;
  }
  VerifyOptions vopt;
  const VerifySummary again = verify_directory(res.cnf_dir, vopt);
  CHECK(again.match_rate < 1.0);
}

TEST_CASE("builtin_predictors: names and determinism of the coin") {
  const auto preds = builtin_predictors(42);
  REQUIRE(preds.size() == 4);
  CHECK(preds[0].name == "const0");
  CHECK(preds[1].name == "const1");
  CHECK(preds[2].name == "coinflip");
  CHECK(preds[3].name == "rhs-parity");

  XorInstance dummy;
  CHECK(!preds[0].fn(dummy));
  CHECK(preds[1].fn(dummy));

  dummy.clauses = {{{0, 1, 2}, true}, {{0, 1, 3}, true}, {{1, 2, 3}, false}};
  CHECK(!preds[3].fn(dummy));  // even number of rhs=1
  dummy.clauses[2].rhs = true;
  CHECK(preds[3].fn(dummy));
}

TEST_CASE("estimate_advantage: constants are exactly zero in exact mode") {
  GenConfig cfg{20, 22, 0, 31, BalanceMode::kExactPerN};
  const auto preds = builtin_predictors(8);
  for (int i : {0, 1}) {
    const AdvantageEstimate est = estimate_advantage(preds[i], cfg, 400);
    CHECK(est.samples == 400);
    CHECK(est.agree_frac == 0.5);
    CHECK(est.advantage == 0.0);
    CHECK(est.ci_low == 0.0);
    CHECK(est.ci_high > 0.0);
    CHECK(est.ci_high < 0.06);
  }
  // odd sample counts round up to keep the exact balance well-defined
  const AdvantageEstimate odd = estimate_advantage(preds[0], cfg, 401);
  CHECK(odd.samples == 402);
  CHECK(odd.advantage == 0.0);

  CHECK_THROWS_AS((void)estimate_advantage(preds[0], cfg, 99),
                  std::invalid_argument);
}

TEST_CASE("estimate_advantage: weak predictors stay inside the null band") {
  GenConfig cfg{24, 27, 0, 77, BalanceMode::kExpected};
  for (const Predictor &pred : builtin_predictors(9)) {
    const AdvantageEstimate est = estimate_advantage(pred, cfg, 2000);
    CHECK(est.advantage < 0.05);
    CHECK(est.ci_low <= est.advantage + 1e-12);
    CHECK(est.advantage <= est.ci_high + 1e-12);
  }
}
