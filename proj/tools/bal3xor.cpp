// Command-line front end: balanced 3XOR generation, 3SAT export,
// verification, rank/diagnostic sweeps, projection experiments, bound
// evaluation, 2SAT deciding and advantage estimation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "xb/bounds.hpp"
#include "xb/pipeline.hpp"
#include "xb/projection.hpp"
#include "xb/translate.hpp"
#include "xb/twosat.hpp"
#include "xb/verify.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::vector<std::uint32_t> n_values{250};
  std::uint32_t m = 0;
  std::uint32_t t = 1;
  double gamma = 0.0;
  std::uint32_t reps = 200;
  std::uint64_t seed = 1;
  std::string out;
  int threads = 1;
  std::string balance = "exact";
};

void add_common(CLI::App *cmd, CommonOpts &o, bool with_out = true) {
  cmd->add_option("--n", o.n_values, "variable counts");
  cmd->add_option("--m", o.m, "clause count (overrides --t / --gamma)");
  cmd->add_option("--t", o.t, "excess clause count, m = n + t");
  cmd->add_option("--gamma", o.gamma, "window parameter, m = (1+gamma) n");
  cmd->add_option("--reps", o.reps, "repetitions per n");
  cmd->add_option("--seed", o.seed, "master seed");
  if (with_out) cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--threads", o.threads, "worker threads");
  cmd->add_option("--balance", o.balance, "label balance mode")
      ->check(CLI::IsMember({"exact", "expected"}));
}

std::uint32_t resolve_m(const CommonOpts &o, std::uint32_t n) {
  if (o.m > 0) return o.m;
  if (o.gamma > 0.0)
    return n + static_cast<std::uint32_t>(o.gamma * n + 0.5);
  return n + o.t;
}

xb::BalanceMode balance_mode(const CommonOpts &o) {
  return o.balance == "exact" ? xb::BalanceMode::kExactPerN
                              : xb::BalanceMode::kExpected;
}

xb::SweepConfig sweep_config(const CommonOpts &o) {
  xb::SweepConfig cfg;
  for (std::uint32_t n : o.n_values)
    cfg.cells.push_back({n, resolve_m(o, n), o.reps});
  cfg.master_seed = o.seed;
  cfg.out_dir = o.out;
  cfg.balance = balance_mode(o);
  cfg.threads = o.threads;
  return cfg;
}

void print_rows(const std::vector<xb::SweepRow> &rows) {
  std::printf("%6s %6s %5s %10s %10s %8s %9s %9s\n", "n", "m", "reps",
              "mean_t'", "median_t'", "q90_t'", "sat_frac", "full_rank");
  for (const xb::SweepRow &r : rows)
    std::printf("%6u %6u %5u %10.3f %10.1f %8.1f %9.3f %9.3f\n", r.n, r.m,
                r.reps, r.mean_tprime, r.median_tprime, r.q90_tprime,
                r.sat_frac, r.frac_full_rank);
}

int cmd_gen(const CommonOpts &o) {
  if (o.out.empty()) {
    std::cerr << "gen: --out is required\n";
    return 1;
  }
  fs::create_directories(o.out);
  for (std::uint32_t n : o.n_values) {
    xb::GenConfig cfg{n, resolve_m(o, n), o.reps, o.seed, balance_mode(o)};
    const std::vector<xb::XorInstance> batch =
        xb::generate_batch(cfg, o.threads);
    for (std::uint32_t rep = 0; rep < o.reps; ++rep) {
      const xb::XorInstance &inst = batch[rep];
      xb::DimacsMeta meta;
      meta.seed = o.seed;
      meta.rep = rep;
      meta.tprime = inst.corank;
      meta.label = inst.label ? 1 : 0;
      xb::XorSkeleton skel{inst.n, inst.clauses};
      char name[64];
      std::snprintf(name, sizeof name, "bal3xor_n%u_rep%03u.xor", n, rep);
      xb::write_xor_file(skel, (fs::path(o.out) / name).string(), &meta);
    }
    std::printf("n=%u m=%u reps=%u -> %s\n", n, cfg.m, o.reps, o.out.c_str());
  }
  return 0;
}

int cmd_translate(const std::string &in, const std::string &out) {
  const xb::XorSkeleton phi = xb::read_xor_file(in);
  xb::write_dimacs_file(xb::translate(phi), out);
  std::printf("%s -> %s (%zu clauses)\n", in.c_str(), out.c_str(),
              4 * phi.clauses.size());
  return 0;
}

int cmd_verify(const std::string &dir, const std::string &out, int threads,
               bool no_brute) {
  xb::VerifyOptions opt;
  opt.brute_force = !no_brute;
  opt.threads = threads;
  const xb::VerifySummary s = xb::verify_directory(dir, opt);
  const std::string report_dir = out.empty() ? dir : out;
  fs::create_directories(report_dir);
  xb::write_verify_report_csv(
      s, (fs::path(report_dir) / "verify_report.csv").string());
  xb::write_verify_times_csv(
      s, (fs::path(report_dir) / "verify_times.csv").string());
  if (s.vacuous)
    std::printf("warning: no .cnf files found, match rate vacuous\n");
  std::printf("checked %zu files, match rate %.3f\n", s.checked, s.match_rate);
  return s.match_rate < 1.0 ? 1 : 0;
}

int cmd_project(const CommonOpts &o, std::size_t samples, double gamma0) {
  for (std::uint32_t n : o.n_values) {
    xb::GenConfig cfg{n, resolve_m(o, n), o.reps, o.seed, balance_mode(o)};
    const std::vector<xb::ProjectionTrialRow> rows =
        xb::run_projection_trials(cfg, samples);
    const xb::FreeSupportSummary s =
        xb::summarize_projection_trials(rows, gamma0);
    if (!o.out.empty()) {
      fs::create_directories(o.out);
      xb::write_projection_sweep_csv(
          rows, (fs::path(o.out) / "projection_sweep.csv").string());
    }
    std::printf(
        "n=%u m=%u trials=%zu accepted=%zu mean(w*/m)=%.4f "
        "mean(free/m)=%.4f median=%.4f q10=%.4f mean_delta=%.3f "
        "mass>=thr(gamma0=%.2f)=%.3f\n",
        n, cfg.m, s.samples, s.accepted, s.mean_w_star_frac,
        s.mean_free_support_frac, s.median_free_support_frac,
        s.q10_free_support_frac, s.mean_delta_upper, gamma0, s.threshold_mass);
  }
  return 0;
}

int cmd_bound(const xb::BoundParams &params,
              const std::vector<std::uint64_t> &ns,
              const std::vector<std::uint64_t> &ms, double epsilon,
              const std::string &csv) {
  std::ofstream csv_out;
  if (!csv.empty()) {
    csv_out.open(csv, std::ios::binary);
    csv_out << "n,m,N,d,k,c,alpha_conf,beta_d,success_bound,cap_active,"
               "live_vars,k_capped,k_size_bits\n";
  }
  std::printf("%8s %8s %10s %10s %8s %14s %5s %12s %8s %12s\n", "n", "m", "N",
              "alpha_d", "beta_d", "success_bound", "cap", "live_vars",
              "K=inf", "size_bits");
  for (std::uint64_t n : ns) {
    for (std::uint64_t m : ms) {
      if (m <= n) continue;
      const xb::BoundReport r = xb::success_bound(params, n, m);
      const xb::KReadings kr = xb::k_readings(params, n, m, epsilon);
      std::printf("%8llu %8llu %10llu %10.3e %8.4f %14.6g %5s %12.4g %8s "
                  "%12.4g\n",
                  static_cast<unsigned long long>(n),
                  static_cast<unsigned long long>(m),
                  static_cast<unsigned long long>(r.encoding_bits),
                  r.alpha_conf, r.beta_d, r.success_bound,
                  r.cap_active ? "yes" : "no", r.live_vars,
                  kr.capped ? "yes" : "no",
                  kr.size_bound_applies ? kr.size_lower_bound_bits : 0.0);
      if (csv_out.is_open())
        csv_out << n << "," << m << "," << r.encoding_bits << "," << params.d
                << "," << params.k << "," << params.c << "," << r.alpha_conf
                << "," << r.beta_d << "," << r.success_bound << ","
                << (r.cap_active ? 1 : 0) << "," << r.live_vars << ","
                << (kr.capped ? 1 : 0) << ","
                << (kr.size_bound_applies ? kr.size_lower_bound_bits : 0.0)
                << "\n";
    }
  }
  return 0;
}

int cmd_twosat(const std::string &file) {
  const xb::TwoSatInstance inst = xb::read_2sat_dimacs_file(file);
  const auto witness = xb::decide(inst);
  if (!witness) {
    std::printf("s UNSATISFIABLE\n");
    return 20;
  }
  std::printf("s SATISFIABLE\nv");
  for (std::uint32_t v = 0; v < inst.n; ++v)
    std::printf(" %d", (*witness)[v] ? static_cast<int>(v) + 1
                                     : -(static_cast<int>(v) + 1));
  std::printf(" 0\n");
  return 10;
}

int cmd_advantage(const CommonOpts &o, const std::string &pred_name,
                  std::size_t samples) {
  for (const xb::Predictor &p : xb::builtin_predictors(o.seed ^ 0xc01f11bULL)) {
    if (!pred_name.empty() && p.name != pred_name) continue;
    for (std::uint32_t n : o.n_values) {
      xb::GenConfig cfg{n, resolve_m(o, n), o.reps, o.seed, balance_mode(o)};
      const xb::AdvantageEstimate est =
          xb::estimate_advantage(p, cfg, samples);
      std::printf("%-10s n=%u m=%u samples=%zu agree=%.4f advantage=%.4f "
                  "ci=[%.4f, %.4f]\n",
                  est.predictor.c_str(), n, cfg.m, est.samples, est.agree_frac,
                  est.advantage, est.ci_low, est.ci_high);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"balanced 3XOR / 3SAT instance toolkit"};
  app.require_subcommand(1);

  CommonOpts gen_o, diag_o, rank_o, export_o, proj_o, adv_o;

  CLI::App *gen = app.add_subcommand("gen", "generate 3XOR instance files");
  add_common(gen, gen_o);

  std::string tr_in, tr_out;
  CLI::App *translate =
      app.add_subcommand("translate", "translate a 3XOR file to DIMACS CNF");
  translate->add_option("input", tr_in, "input .xor file")->required();
  translate->add_option("output", tr_out, "output .cnf file")->required();

  std::string verify_dir, verify_out;
  int verify_threads = 1;
  bool verify_no_brute = false;
  CLI::App *verify =
      app.add_subcommand("verify", "verify a directory of DIMACS exports");
  verify->add_option("dir", verify_dir, "directory of .cnf files")->required();
  verify->add_option("--out", verify_out, "report directory (default: dir)");
  verify->add_option("--threads", verify_threads, "worker threads");
  verify->add_flag("--no-brute-force", verify_no_brute,
                   "skip the small-n exhaustive SAT check");

  CLI::App *diag =
      app.add_subcommand("sweep-diag", "per-n t' and SAT-fraction diagnostics");
  add_common(diag, diag_o);

  CLI::App *ranksweep =
      app.add_subcommand("sweep-rank", "full-rank fraction over an (n,t) grid");
  add_common(ranksweep, rank_o);
  std::vector<std::uint32_t> t_values{1, 2, 3};
  ranksweep->add_option("--t-grid", t_values, "t values, m = n + t");

  CLI::App *exp = app.add_subcommand(
      "export", "full artifact export: generate, translate, verify, manifest");
  add_common(exp, export_o);
  bool export_no_brute = false;
  exp->add_flag("--no-brute-force", export_no_brute,
                "skip the small-n exhaustive SAT check during verify");

  CLI::App *project = app.add_subcommand(
      "project", "survivor-projection experiment and free-support sweep");
  add_common(project, proj_o);
  std::size_t proj_samples = 200;
  double gamma0 = 0.1;
  project->add_option("--samples", proj_samples, "projection trials");
  project->add_option("--gamma0", gamma0, "support threshold parameter");

  CLI::App *bound =
      app.add_subcommand("bound", "evaluate the size-aware success bound");
  xb::BoundParams params;
  std::vector<std::uint64_t> bound_n{250}, bound_m{300};
  double epsilon = 0.0;
  std::string bound_csv;
  bound->add_option("--d", params.d, "circuit depth");
  bound->add_option("--k", params.k, "size exponent, s(N) <= N^k");
  bound->add_option("--c", params.c, "exponent parameter in (0,1)");
  bound->add_option("--alpha0", params.alpha0, "universal constant in (0,1]");
  bound->add_option("--n", bound_n, "variable counts");
  bound->add_option("--m", bound_m, "clause counts");
  bound->add_option("--eps", epsilon, "error threshold for the K readings");
  bound->add_option("--csv", bound_csv, "also write a CSV over the grid");

  std::string twosat_file;
  CLI::App *twosat = app.add_subcommand("twosat", "decide a 2SAT DIMACS file");
  twosat->add_option("file", twosat_file, "2-literal DIMACS CNF")->required();

  CLI::App *adv = app.add_subcommand(
      "advantage", "Monte-Carlo advantage of baseline predictors");
  add_common(adv, adv_o, false);
  std::string pred_name;
  std::size_t adv_samples = 10000;
  adv->add_option("--pred", pred_name,
                  "predictor (const0, const1, coinflip, rhs-parity); default all");
  adv->add_option("--samples", adv_samples, "Monte-Carlo samples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_o);
    if (translate->parsed()) return cmd_translate(tr_in, tr_out);
    if (verify->parsed())
      return cmd_verify(verify_dir, verify_out, verify_threads,
                        verify_no_brute);
    if (diag->parsed()) {
      print_rows(xb::run_diagnostics(sweep_config(diag_o)));
      return 0;
    }
    if (ranksweep->parsed()) {
      xb::SweepConfig cfg;
      for (std::uint32_t n : rank_o.n_values)
        for (std::uint32_t t : t_values)
          cfg.cells.push_back({n, n + t, rank_o.reps});
      cfg.master_seed = rank_o.seed;
      cfg.out_dir = rank_o.out;
      const std::vector<xb::SweepRow> rows = xb::run_rank_sweep(cfg);
      std::printf("%6s %4s %6s %5s %10s %15s\n", "n", "t", "m", "reps",
                  "successes", "frac_full_rank");
      for (const xb::SweepRow &r : rows)
        std::printf("%6u %4u %6u %5u %10u %15.3f\n", r.n, r.m - r.n, r.m,
                    r.reps, r.successes, r.frac_full_rank);
      return 0;
    }
    if (exp->parsed()) {
      xb::SweepConfig cfg = sweep_config(export_o);
      cfg.brute_force_verify = !export_no_brute;
      const xb::ExportResult res = xb::run_full_export(cfg);
      print_rows(res.rows);
      std::printf("wrote %zu files, match rate %.3f\n", res.files_written,
                  res.verify.match_rate);
      return res.ok ? 0 : 1;
    }
    if (project->parsed()) return cmd_project(proj_o, proj_samples, gamma0);
    if (bound->parsed())
      return cmd_bound(params, bound_n, bound_m, epsilon, bound_csv);
    if (twosat->parsed()) return cmd_twosat(twosat_file);
    if (adv->parsed()) return cmd_advantage(adv_o, pred_name, adv_samples);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
