#include "misseat/io.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "misseat/version.hpp"

namespace misseat {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json manifest_json(const RunManifest& manifest,
                           bool include_timestamp) {
  ordered_json j;
  j["command"] = manifest.command;
  ordered_json params;
  for (const auto& [key, value] : manifest.params) {
    params[key] = value;
  }
  j["params"] = params;
  if (manifest.seed) {
    j["seed"] = std::to_string(*manifest.seed);
  }
  j["version"] = manifest.version;
  if (include_timestamp) {
    j["timestamp"] = manifest.timestamp;
  }
  return j;
}

ordered_json pmf_entries(const ExactPmf& pmf) {
  ordered_json rows = ordered_json::array();
  for (int m = 0; m <= pmf.n; ++m) {
    const Rational& p = pmf.probs[m];
    ordered_json row;
    row["m"] = m;
    row["num"] = p.get_num().get_str();
    row["den"] = p.get_den().get_str();
    row["approx"] = to_double(p);
    rows.push_back(row);
  }
  return rows;
}

ordered_json rational_json(const Rational& q) {
  ordered_json j;
  j["num"] = q.get_num().get_str();
  j["den"] = q.get_den().get_str();
  j["approx"] = to_double(q);
  return j;
}

}  // namespace

RunManifest make_manifest(
    std::string command,
    std::vector<std::pair<std::string, std::string>> params,
    std::optional<std::uint64_t> seed) {
  RunManifest manifest;
  manifest.command = std::move(command);
  manifest.params = std::move(params);
  manifest.seed = seed;
  manifest.version = kVersion;
  manifest.timestamp = utc_now();
  return manifest;
}

std::string manifest_to_json(const RunManifest& manifest,
                             bool include_timestamp) {
  return manifest_json(manifest, include_timestamp).dump();
}

std::string pmf_to_json(const ExactPmf& pmf, const std::string& method,
                        const RunManifest& manifest) {
  ordered_json j;
  j["manifest"] = manifest_json(manifest, false);
  j["n"] = pmf.n;
  j["k"] = pmf.k;
  j["method"] = method;
  j["pmf"] = pmf_entries(pmf);
  return j.dump(2) + "\n";
}

std::string pmf_to_csv(const ExactPmf& pmf) {
  std::string out = "m,num,den,approx\n";
  for (int m = 0; m <= pmf.n; ++m) {
    const Rational& p = pmf.probs[m];
    out += std::to_string(m);
    out += ',';
    out += p.get_num().get_str();
    out += ',';
    out += p.get_den().get_str();
    out += ',';
    out += format_double(to_double(p));
    out += '\n';
  }
  return out;
}

std::string moments_to_json(const ExactPmf& pmf, const MomentSummary& summary,
                            const std::string& method,
                            const RunManifest& manifest) {
  ordered_json j;
  j["manifest"] = manifest_json(manifest, false);
  j["n"] = pmf.n;
  j["k"] = pmf.k;
  j["method"] = method;
  j["mean"] = rational_json(summary.mean);
  j["variance"] = rational_json(summary.variance);
  return j.dump(2) + "\n";
}

std::string simulation_to_json(const EmpiricalPmf& empirical,
                               const ComparisonReport& report,
                               const ThreadTally* tally,
                               const RunManifest& manifest) {
  ordered_json j;
  j["manifest"] = manifest_json(manifest, false);
  j["n"] = empirical.config.n;
  j["k"] = empirical.config.k;
  j["trials"] = empirical.trials;
  j["seed"] = std::to_string(empirical.seed);
  ordered_json counts = ordered_json::array();
  for (const auto count : empirical.counts) {
    counts.push_back(count);
  }
  j["counts"] = counts;

  ordered_json comparison;
  comparison["threshold"] = report.threshold;
  comparison["max_abs_z"] = report.max_abs_z;
  comparison["pass"] = report.pass;
  comparison["impossible_outcomes"] = report.impossible;
  ordered_json zs = ordered_json::array();
  for (const auto& entry : report.entries) {
    ordered_json row;
    row["m"] = entry.m;
    row["exact"] = entry.exact;
    row["freq"] = entry.freq;
    row["z"] = entry.z;
    zs.push_back(row);
  }
  comparison["z"] = zs;
  j["comparison"] = comparison;

  if (tally) {
    ordered_json tallies = ordered_json::array();
    for (const auto& [key, count] : *tally) {
      ordered_json row;
      row["s"] = key[0];
      row["r"] = key[1];
      row["t"] = key[2];
      row["count"] = count;
      tallies.push_back(row);
    }
    j["thread_tallies"] = tallies;
  }
  return j.dump(2) + "\n";
}

std::string oracle_report_to_text(const OracleAgreement& agreement) {
  std::ostringstream out;
  out << "oracle enumeration vs closed forms: n=" << agreement.oracle.n
      << " k=" << agreement.oracle.k << "\n";
  out << "m\toracle\ttheorem1\ttheorem2\tequal\n";
  for (int m = 0; m <= agreement.oracle.n; ++m) {
    const bool equal =
        agreement.oracle.probs[m] == agreement.theorem1.probs[m] &&
        agreement.oracle.probs[m] == agreement.theorem2.probs[m];
    out << m << '\t' << agreement.oracle.probs[m].get_str() << '\t'
        << agreement.theorem1.probs[m].get_str() << '\t'
        << agreement.theorem2.probs[m].get_str() << '\t'
        << (equal ? "yes" : "NO") << '\n';
  }
  if (agreement.disagreeing_m.empty()) {
    out << "agreement: full (" << agreement.oracle.n + 1 << " masses)\n";
  } else {
    out << "agreement: FAILED at m =";
    for (const int m : agreement.disagreeing_m) {
      out << ' ' << m;
    }
    out << '\n';
  }
  return out.str();
}

std::string oracle_report_to_json(const OracleAgreement& agreement,
                                  const RunManifest& manifest) {
  ordered_json j;
  j["manifest"] = manifest_json(manifest, false);
  j["n"] = agreement.oracle.n;
  j["k"] = agreement.oracle.k;
  j["agreement"] = agreement.disagreeing_m.empty();
  j["disagreeing_m"] = agreement.disagreeing_m;
  j["oracle"] = pmf_entries(agreement.oracle);
  j["theorem1"] = pmf_entries(agreement.theorem1);
  j["theorem2"] = pmf_entries(agreement.theorem2);
  return j.dump(2) + "\n";
}

std::string plot_to_dat(const std::vector<ExactPmf>& pmfs,
                        const RunManifest& manifest) {
  std::string out = "# manifest: " + manifest_to_json(manifest, false) + "\n";
  out += "# columns: m probability (one block per k, blocks separated by "
         "blank lines)\n";
  bool first = true;
  for (const auto& pmf : pmfs) {
    if (!first) {
      out += "\n\n";
    }
    first = false;
    out += "# k=" + std::to_string(pmf.k) + "\n";
    for (int m = 0; m <= pmf.n; ++m) {
      out += std::to_string(m);
      out += ' ';
      out += format_double(to_double(pmf.probs[m]));
      out += '\n';
    }
  }
  return out;
}

std::string plot_to_svg(const std::vector<ExactPmf>& pmfs,
                        const RunManifest& manifest) {
  constexpr double kPanelWidth = 640.0;
  constexpr double kPanelHeight = 200.0;
  constexpr double kMarginLeft = 50.0;
  constexpr double kMarginBottom = 30.0;
  constexpr double kMarginTop = 28.0;
  constexpr double kGap = 24.0;

  const double total_height =
      static_cast<double>(pmfs.size()) * (kPanelHeight + kGap);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << format_double(kPanelWidth) << "\" height=\""
      << format_double(total_height) << "\">\n";
  out << "<!-- manifest: " << manifest_to_json(manifest, false) << " -->\n";

  double offset = 0.0;
  for (const auto& pmf : pmfs) {
    double peak = 0.0;
    for (const auto& p : pmf.probs) {
      peak = std::max(peak, to_double(p));
    }
    if (peak <= 0.0) {
      peak = 1.0;
    }
    const double plot_w = kPanelWidth - kMarginLeft - 10.0;
    const double plot_h = kPanelHeight - kMarginTop - kMarginBottom;
    const double x0 = kMarginLeft;
    const double y0 = offset + kMarginTop;
    const double bar_w = plot_w / static_cast<double>(pmf.n + 1);

    out << "<g>\n";
    out << "<text x=\"" << format_double(x0) << "\" y=\""
        << format_double(offset + 18.0) << "\" font-family=\"sans-serif\" "
        << "font-size=\"14\">n=" << pmf.n << ", k=" << pmf.k << "</text>\n";
    // axes
    out << "<line x1=\"" << format_double(x0) << "\" y1=\""
        << format_double(y0 + plot_h) << "\" x2=\""
        << format_double(x0 + plot_w) << "\" y2=\""
        << format_double(y0 + plot_h) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << format_double(x0) << "\" y1=\""
        << format_double(y0) << "\" x2=\"" << format_double(x0) << "\" y2=\""
        << format_double(y0 + plot_h) << "\" stroke=\"black\"/>\n";
    // scale labels
    out << "<text x=\"" << format_double(x0 - 6.0) << "\" y=\""
        << format_double(y0 + 4.0)
        << "\" font-family=\"sans-serif\" font-size=\"10\" "
        << "text-anchor=\"end\">" << format_double(peak) << "</text>\n";
    out << "<text x=\"" << format_double(x0 - 6.0) << "\" y=\""
        << format_double(y0 + plot_h)
        << "\" font-family=\"sans-serif\" font-size=\"10\" "
        << "text-anchor=\"end\">0</text>\n";
    out << "<text x=\"" << format_double(x0) << "\" y=\""
        << format_double(y0 + plot_h + 14.0)
        << "\" font-family=\"sans-serif\" font-size=\"10\">0</text>\n";
    out << "<text x=\"" << format_double(x0 + plot_w) << "\" y=\""
        << format_double(y0 + plot_h + 14.0)
        << "\" font-family=\"sans-serif\" font-size=\"10\" "
        << "text-anchor=\"end\">" << pmf.n << "</text>\n";
    // bars
    for (int m = 0; m <= pmf.n; ++m) {
      const double p = to_double(pmf.probs[m]);
      if (p <= 0.0) {
        continue;
      }
      const double h = p / peak * plot_h;
      out << "<rect x=\"" << format_double(x0 + m * bar_w) << "\" y=\""
          << format_double(y0 + plot_h - h) << "\" width=\""
          << format_double(std::max(bar_w - 0.5, 0.5)) << "\" height=\""
          << format_double(h) << "\" fill=\"#4682b4\"/>\n";
    }
    out << "</g>\n";
    offset += kPanelHeight + kGap;
  }
  out << "</svg>\n";
  return out.str();
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    return false;
  }
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  file.flush();
  return file.good();
}

}  // namespace misseat
