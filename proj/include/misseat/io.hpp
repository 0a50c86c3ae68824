#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "misseat/distribution.hpp"
#include "misseat/oracle.hpp"
#include "misseat/process.hpp"

namespace misseat {

/// Provenance record attached to every artifact. Embedded copies omit
/// the timestamp so seeded outputs stay byte-identical across reruns;
/// the timestamp is written to sidecar manifest files only.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<std::uint64_t> seed;
  std::string version;
  std::string timestamp;
};

RunManifest make_manifest(
    std::string command,
    std::vector<std::pair<std::string, std::string>> params,
    std::optional<std::uint64_t> seed = std::nullopt);

std::string manifest_to_json(const RunManifest& manifest,
                             bool include_timestamp);

std::string pmf_to_json(const ExactPmf& pmf, const std::string& method,
                        const RunManifest& manifest);

/// Columns m,num,den,approx with a mandatory header row.
std::string pmf_to_csv(const ExactPmf& pmf);

std::string moments_to_json(const ExactPmf& pmf, const MomentSummary& summary,
                            const std::string& method,
                            const RunManifest& manifest);

std::string simulation_to_json(const EmpiricalPmf& empirical,
                               const ComparisonReport& report,
                               const ThreadTally* tally,
                               const RunManifest& manifest);

struct OracleAgreement {
  ExactPmf oracle;
  ExactPmf theorem1;
  ExactPmf theorem2;
  std::vector<int> disagreeing_m;  // empty on full agreement
};

std::string oracle_report_to_text(const OracleAgreement& agreement);
std::string oracle_report_to_json(const OracleAgreement& agreement,
                                  const RunManifest& manifest);

/// Gnuplot-style blocks (two columns m, height; one block per k,
/// blocks separated by two blank lines).
std::string plot_to_dat(const std::vector<ExactPmf>& pmfs,
                        const RunManifest& manifest);

/// Self-contained SVG, one histogram panel per k.
std::string plot_to_svg(const std::vector<ExactPmf>& pmfs,
                        const RunManifest& manifest);

/// Returns false on any I/O failure. Never leaves a partial file
/// behind an earlier success report.
bool write_file(const std::string& path, const std::string& content);

}  // namespace misseat
