// Serial vs OpenMP comparison for batch generation and directory
// verification, plus a cross-check that both paths produce identical output.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "xb/pipeline.hpp"
#include "xb/sampler.hpp"
#include "xb/translate.hpp"

namespace fs = std::filesystem;

namespace {

double time_gen(const xb::GenConfig &cfg, int threads,
                std::vector<xb::XorInstance> *out) {
  const auto t0 = std::chrono::steady_clock::now();
  *out = xb::generate_batch(cfg, threads);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool same_batches(const std::vector<xb::XorInstance> &a,
                  const std::vector<xb::XorInstance> &b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].clauses != b[i].clauses || a[i].label != b[i].label ||
        a[i].u != b[i].u)
      return false;
  return true;
}

}  // namespace

int main(int argc, char **argv) {
  std::uint32_t n = 400;
  std::uint32_t reps = 200;
  int threads = 4;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  if (argc > 1) n = static_cast<std::uint32_t>(std::stoul(argv[1]));
  if (argc > 2) reps = static_cast<std::uint32_t>(std::stoul(argv[2]));
  if (argc > 3) threads = std::stoi(argv[3]);

  xb::GenConfig cfg{n, n + 1, reps, 42, xb::BalanceMode::kExactPerN};

  std::vector<xb::XorInstance> serial, parallel;
  const double t_serial = time_gen(cfg, 1, &serial);
  const double t_parallel = time_gen(cfg, threads, &parallel);
  std::printf("generate_batch n=%u reps=%u\n", n, reps);
  std::printf("  serial (reference): %8.3f s\n", t_serial);
  std::printf("  openmp x%-2d       : %8.3f s  (speedup %.2fx)\n", threads,
              t_parallel, t_serial / t_parallel);
  std::printf("  outputs identical : %s\n",
              same_batches(serial, parallel) ? "yes" : "NO");

  const fs::path dir = fs::temp_directory_path() / "bal3xor_bench_cnf";
  fs::create_directories(dir);
  for (std::uint32_t rep = 0; rep < reps; ++rep)
    xb::write_dimacs_file(xb::translate(serial[rep]),
                          (dir / xb::dimacs_file_name(n, rep)).string());

  xb::VerifyOptions vopt;
  vopt.brute_force = false;
  auto time_verify = [&](int th) {
    vopt.threads = th;
    const auto t0 = std::chrono::steady_clock::now();
    const xb::VerifySummary s = xb::verify_directory(dir.string(), vopt);
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return std::make_pair(dt, s.match_rate);
  };
  const auto [vs, rate_s] = time_verify(1);
  const auto [vp, rate_p] = time_verify(threads);
  std::printf("verify_directory %zu files\n", static_cast<std::size_t>(reps));
  std::printf("  serial (reference): %8.3f s  match %.3f\n", vs, rate_s);
  std::printf("  openmp x%-2d       : %8.3f s  match %.3f  (speedup %.2fx)\n",
              threads, vp, rate_p, vs / vp);
  fs::remove_all(dir);
  return same_batches(serial, parallel) && rate_s == 1.0 && rate_p == 1.0 ? 0
                                                                          : 1;
}
