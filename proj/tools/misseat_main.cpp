// Command-line surface: exact misseating distributions, seeded
// simulation, brute-force verification, identity check suites, and
// histogram artifacts.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "misseat/checks.hpp"
#include "misseat/distribution.hpp"
#include "misseat/io.hpp"
#include "misseat/oracle.hpp"
#include "misseat/process.hpp"
#include "misseat/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;
constexpr int kExitVerification = 4;
constexpr int kExitIo = 5;

constexpr long kMaxN = 2000;

using misseat::RunManifest;

int emit(const std::string& artifact, const std::string& out_path,
         const RunManifest& manifest) {
  if (out_path.empty()) {
    std::cout << artifact;
    return kExitOk;
  }
  if (!misseat::write_file(out_path, artifact)) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitIo;
  }
  const std::string sidecar = out_path + ".manifest.json";
  if (!misseat::write_file(sidecar,
                           misseat::manifest_to_json(manifest, true) + "\n")) {
    std::cerr << "error: cannot write " << sidecar << "\n";
    return kExitIo;
  }
  return kExitOk;
}

misseat::Method parse_method(const std::string& name) {
  return name == "theorem2" ? misseat::Method::theorem2
                            : misseat::Method::theorem1;
}

int run_dist(long n, long k, const std::string& method,
             const std::string& format, const std::string& out) {
  if (n < 1 || n > kMaxN || k < 0 || k > n) {
    std::cerr << "error: requires 1 <= n <= " << kMaxN << " and 0 <= k <= n\n";
    return kExitUsage;
  }
  const misseat::ExactPmf pmf = misseat::distribution_full(
      static_cast<int>(n), static_cast<int>(k), parse_method(method));
  const RunManifest manifest = misseat::make_manifest(
      "dist", {{"n", std::to_string(n)},
               {"k", std::to_string(k)},
               {"method", method},
               {"format", format}});
  const std::string artifact = format == "csv"
                                   ? misseat::pmf_to_csv(pmf)
                                   : misseat::pmf_to_json(pmf, method, manifest);
  return emit(artifact, out, manifest);
}

int run_moments(long n, long k, const std::string& method,
                const std::string& out) {
  if (n < 1 || n > kMaxN || k < 0 || k > n) {
    std::cerr << "error: requires 1 <= n <= " << kMaxN << " and 0 <= k <= n\n";
    return kExitUsage;
  }
  const misseat::ExactPmf pmf = misseat::distribution_full(
      static_cast<int>(n), static_cast<int>(k), parse_method(method));
  const misseat::MomentSummary summary = misseat::moments(pmf);
  const RunManifest manifest = misseat::make_manifest(
      "moments", {{"n", std::to_string(n)},
                  {"k", std::to_string(k)},
                  {"method", method}});
  return emit(misseat::moments_to_json(pmf, summary, method, manifest), out,
              manifest);
}

int run_simulate(long n, long k, std::uint64_t trials, std::uint64_t seed,
                 bool report_threads, double z_threshold,
                 const std::string& out) {
  if (n < 1 || n > kMaxN || k < 0 || k > n || trials < 1) {
    std::cerr << "error: requires 1 <= n <= " << kMaxN
              << ", 0 <= k <= n, trials >= 1\n";
    return kExitUsage;
  }
  const misseat::BoardingConfig config{static_cast<int>(n),
                                       static_cast<int>(k)};
  misseat::ThreadTally tally;
  const misseat::EmpiricalPmf empirical =
      misseat::monte_carlo(config, trials, seed, misseat::Execution::parallel,
                           report_threads ? &tally : nullptr);
  const misseat::ExactPmf exact = misseat::distribution_full(
      static_cast<int>(n), static_cast<int>(k), misseat::Method::theorem1);
  const misseat::ComparisonReport report =
      misseat::compare_empirical(empirical, exact, z_threshold);
  const RunManifest manifest = misseat::make_manifest(
      "simulate",
      {{"n", std::to_string(n)},
       {"k", std::to_string(k)},
       {"trials", std::to_string(trials)},
       {"seed", std::to_string(seed)},
       {"report_threads", report_threads ? "true" : "false"},
       {"z_threshold", misseat::format_double(z_threshold)}},
      seed);
  const std::string artifact = misseat::simulation_to_json(
      empirical, report, report_threads ? &tally : nullptr, manifest);
  return emit(artifact, out, manifest);
}

int run_oracle(long n, long k, long bound, const std::string& format,
               const std::string& out) {
  if (bound > misseat::kOracleBoundDefault) {
    std::cerr << "warning: enumeration above n=" << misseat::kOracleBoundDefault
              << " grows factorially; this may take a while\n";
  }
  if (n < 1 || k < 1 || k > n) {
    std::cerr << "error: requires 1 <= k <= n\n";
    return kExitUsage;
  }
  if (n > bound) {
    std::cerr << "error: n=" << n << " exceeds the enumeration bound " << bound
              << " (raise with --max-n)\n";
    return kExitUsage;
  }
  misseat::OracleAgreement agreement;
  agreement.oracle = misseat::enumerate_process(
      static_cast<int>(n), static_cast<int>(k), static_cast<int>(bound));
  agreement.theorem1 = misseat::distribution_full(
      static_cast<int>(n), static_cast<int>(k), misseat::Method::theorem1);
  agreement.theorem2 = misseat::distribution_full(
      static_cast<int>(n), static_cast<int>(k), misseat::Method::theorem2);
  for (int m = 0; m <= agreement.oracle.n; ++m) {
    if (agreement.oracle.probs[m] != agreement.theorem1.probs[m] ||
        agreement.oracle.probs[m] != agreement.theorem2.probs[m]) {
      agreement.disagreeing_m.push_back(m);
    }
  }
  const RunManifest manifest = misseat::make_manifest(
      "oracle", {{"n", std::to_string(n)},
                 {"k", std::to_string(k)},
                 {"max_n", std::to_string(bound)},
                 {"format", format}});
  const std::string artifact =
      format == "json" ? misseat::oracle_report_to_json(agreement, manifest)
                       : misseat::oracle_report_to_text(agreement);
  const int rc = emit(artifact, out, manifest);
  if (rc != kExitOk) {
    return rc;
  }
  return agreement.disagreeing_m.empty() ? kExitOk : kExitVerification;
}

int run_check(long max_n) {
  if (max_n < 2) {
    std::cerr << "error: requires --max-n >= 2\n";
    return kExitUsage;
  }
  const std::vector<misseat::CheckResult> results =
      misseat::run_all_checks(static_cast<int>(max_n));
  std::string report = "check: max_n=" + std::to_string(max_n) + "\n";
  std::string first_failure;
  long total = 0;
  for (const auto& result : results) {
    total += result.cases;
    report += result.pass ? "[ok]   " : "[FAIL] ";
    report += result.name + " (" + std::to_string(result.cases) + " cases)";
    if (!result.pass) {
      report += ": " + result.detail;
      if (first_failure.empty()) {
        first_failure = result.name;
      }
    }
    report += "\n";
  }
  if (first_failure.empty()) {
    report += "all " + std::to_string(results.size()) + " suites passed (" +
              std::to_string(total) + " identities)\n";
  } else {
    report += "FAILED: first failing suite is " + first_failure + "\n";
  }
  std::cout << report;
  return first_failure.empty() ? kExitOk : kExitVerification;
}

int run_plot(long n, const std::vector<long>& ks, const std::string& format,
             const std::string& out) {
  if (n < 1 || n > kMaxN || ks.empty()) {
    std::cerr << "error: requires 1 <= n <= " << kMaxN
              << " and a non-empty --k list\n";
    return kExitUsage;
  }
  for (const long k : ks) {
    if (k < 1 || k > n) {
      std::cerr << "error: every k must satisfy 1 <= k <= n (got " << k
                << ")\n";
      return kExitUsage;
    }
  }
  std::vector<misseat::ExactPmf> pmfs;
  pmfs.reserve(ks.size());
  for (const long k : ks) {
    pmfs.push_back(misseat::distribution_full(static_cast<int>(n),
                                              static_cast<int>(k),
                                              misseat::Method::theorem1));
  }
  std::string k_list;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i > 0) {
      k_list += ',';
    }
    k_list += std::to_string(ks[i]);
  }
  const RunManifest manifest = misseat::make_manifest(
      "plot",
      {{"n", std::to_string(n)}, {"k", k_list}, {"format", format}});
  const std::string artifact = format == "dat"
                                   ? misseat::plot_to_dat(pmfs, manifest)
                                   : misseat::plot_to_svg(pmfs, manifest);
  return emit(artifact, out, manifest);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"misseat: exact and simulated misseated-passenger "
               "distributions for the absent-minded boarding process"};
  app.set_version_flag("--version", misseat::kVersion);
  app.require_subcommand(1);

  long n = 0;
  long k = 0;
  std::vector<long> k_list;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::string method = "theorem1";
  std::string format;
  std::string out;
  long oracle_bound = misseat::kOracleBoundDefault;
  long check_max_n = 8;
  bool report_threads = false;
  double z_threshold = 4.0;

  auto* dist = app.add_subcommand("dist", "Exact pmf of the misseated count");
  dist->add_option("--n", n, "passengers/seats")->required();
  dist->add_option("--k", k, "absent-minded passengers")->required();
  dist->add_option("--method", method, "evaluation route")
      ->check(CLI::IsMember({"theorem1", "theorem2"}));
  dist->add_option("--format", format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  dist->add_option("--out", out, "write to file instead of stdout");

  auto* moments_cmd =
      app.add_subcommand("moments", "Exact mean and variance of the pmf");
  moments_cmd->add_option("--n", n)->required();
  moments_cmd->add_option("--k", k)->required();
  moments_cmd->add_option("--method", method)
      ->check(CLI::IsMember({"theorem1", "theorem2"}));
  moments_cmd->add_option("--out", out);

  auto* simulate =
      app.add_subcommand("simulate", "Seeded Monte Carlo of the boarding "
                                     "process, compared against the exact pmf");
  simulate->add_option("--n", n)->required();
  simulate->add_option("--k", k)->required();
  simulate->add_option("--trials", trials)->required();
  simulate->add_option("--seed", seed, "64-bit stream seed");
  simulate->add_flag("--report-threads,--threads-report", report_threads,
                     "tally the (s, r, t) thread decomposition per trial");
  simulate->add_option("--z-threshold", z_threshold,
                       "pass threshold on |z| (default 4.0)");
  simulate->add_option("--out", out);

  auto* oracle = app.add_subcommand(
      "oracle", "Exhaustive enumeration cross-checked against both routes");
  oracle->add_option("--n", n)->required();
  oracle->add_option("--k", k)->required();
  oracle->add_option("--max-n", oracle_bound, "enumeration bound (default 9)");
  oracle->add_option("--format", format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  oracle->add_option("--out", out);

  auto* check =
      app.add_subcommand("check", "Run every identity verification suite");
  check->add_option("--max-n", check_max_n, "cap for the n-sweeping suites "
                                            "(default 8)");

  auto* plot = app.add_subcommand("plot", "Histogram artifact of the pmf");
  plot->add_option("--n", n)->required();
  plot->add_option("--k", k_list, "comma-separated k values")
      ->required()
      ->delimiter(',');
  plot->add_option("--format", format, "svg|dat")
      ->check(CLI::IsMember({"svg", "dat"}));
  plot->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (dist->parsed()) {
      return run_dist(n, k, method, format.empty() ? "json" : format, out);
    }
    if (moments_cmd->parsed()) {
      return run_moments(n, k, method, out);
    }
    if (simulate->parsed()) {
      return run_simulate(n, k, trials, seed, report_threads, z_threshold,
                          out);
    }
    if (oracle->parsed()) {
      return run_oracle(n, k, oracle_bound, format.empty() ? "text" : format,
                        out);
    }
    if (check->parsed()) {
      return run_check(check_max_n);
    }
    if (plot->parsed()) {
      return run_plot(n, k_list, format.empty() ? "svg" : format, out);
    }
  } catch (const misseat::InternalConsistencyError& e) {
    std::cerr << "internal consistency error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
