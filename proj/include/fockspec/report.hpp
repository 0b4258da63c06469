// report.hpp - versioned JSON and CSV serialization of analysis results
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fockspec/birman_schwinger.hpp"
#include "fockspec/exact_model.hpp"
#include "fockspec/friedrichs.hpp"
#include "fockspec/model.hpp"
#include "fockspec/spin_boson.hpp"
#include "fockspec/threshold.hpp"

namespace fockspec {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kReportFormat = "fockspec-report-v1";

// shortest round-trip decimal representation
std::string fmt_double(double v);

// report envelope: format version, command, model identity, grid size
ordered_json report_header(const std::string& command, const ModelSpec& model,
                           int grid_n);
ordered_json to_json(const ModelSpec& model);

ordered_json to_json(const EssentialSpectrumReport& r);
EssentialSpectrumReport ess_from_json(const ordered_json& j);

ordered_json to_json(const BSCount& c);
BSCount bscount_from_json(const ordered_json& j);

// one table row per (branch, k) of the constant-coefficient eigenvalue solve
struct ExactRow {
  int branch = 1;
  int k = 0;
  bool present = false;
  double xi = 0.0;
  int multiplicity = 0;
  double equation_residual = 0.0;
  std::optional<double> oracle_residual;
};

ordered_json to_json(const std::vector<ExactRow>& rows);
ordered_json to_json(const ThresholdReport& r);
ordered_json to_json(const A2Report& r);

// CSV bodies: '#' preamble assembled from the header object plus any extra
// metadata pairs, then one comma-separated table; list-valued cells join
// their entries with ';'
using MetaPairs = std::vector<std::pair<std::string, std::string>>;

std::string csv_ess(const EssentialSpectrumReport& r, const ordered_json& header);
std::string csv_counts(const std::vector<BSCount>& cs, const ordered_json& header);
std::string csv_exact(const std::vector<ExactRow>& rows, const ordered_json& header);
std::string csv_threshold(const ThresholdReport& r, const ordered_json& header,
                          const MetaPairs& extra = {});
std::string csv_app(const A2Report& r, const ordered_json& header);
std::string csv_oracle(double z, const std::vector<double>& eigenvalues,
                       const ordered_json& header);

}  // namespace fockspec
