// report.cpp - JSON and CSV emitters with deterministic float formatting
#include "fockspec/report.hpp"

#include <charconv>
#include <cmath>

#include "fockspec/errors.hpp"

namespace fockspec {

namespace {

ordered_json num_or_null(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

std::string preamble(const ordered_json& header) {
  std::string out;
  out += std::string("# ") + kReportFormat + "\n";
  for (auto it = header.begin(); it != header.end(); ++it) {
    if (it.key() == "format") continue;
    if (it.key() == "model") {
      const auto& m = it.value();
      std::string line = "# model: " + m.value("family", std::string("custom"));
      if (m.contains("params"))
        for (auto pt = m["params"].begin(); pt != m["params"].end(); ++pt)
          line += " " + pt.key() + "=" + fmt_double(pt.value().get<double>());
      if (m.contains("functions"))
        for (auto ft = m["functions"].begin(); ft != m["functions"].end(); ++ft)
          line += " " + ft.key() + "=" + ft.value().get<std::string>();
      out += line + "\n";
      continue;
    }
    out += "# " + it.key() + ": " +
           (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) +
           "\n";
  }
  return out;
}

template <class T>
std::string join(const std::vector<T>& vals, const std::string& sep,
                 std::string (*fmt)(const T&)) {
  std::string out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out += sep;
    out += fmt(vals[i]);
  }
  return out;
}

std::string fmt_d(const double& v) { return fmt_double(v); }

}  // namespace

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ordered_json to_json(const ModelSpec& model) {
  ordered_json j;
  j["family"] = model.family.empty() ? "custom" : model.family;
  ordered_json params;
  for (const auto& [k, v] : model.params) params[k] = v;
  j["params"] = std::move(params);
  if (!model.fnames.empty()) {
    ordered_json fns;
    for (const auto& [k, v] : model.fnames) fns[k] = v;
    j["functions"] = std::move(fns);
  }
  return j;
}

ordered_json report_header(const std::string& command, const ModelSpec& model,
                           int grid_n) {
  ordered_json j;
  j["format"] = kReportFormat;
  j["command"] = command;
  j["model"] = to_json(model);
  j["grid_n"] = grid_n;
  return j;
}

ordered_json to_json(const EssentialSpectrumReport& r) {
  ordered_json j;
  ordered_json iv = ordered_json::array();
  for (const auto& ab : r.sigma_intervals) iv.push_back({ab[0], ab[1]});
  j["sigma_intervals"] = std::move(iv);
  j["band"] = {r.m, r.M};
  j["e_min"] = r.e_min;
  j["e_max"] = r.e_max;
  j["classification"] = to_string(r.classification);
  j["min_delta_at_m"] = num_or_null(r.min_delta_at_m);
  j["grid_n"] = r.grid_n;
  return j;
}

EssentialSpectrumReport ess_from_json(const ordered_json& j) {
  EssentialSpectrumReport r;
  for (const auto& ab : j.at("sigma_intervals"))
    r.sigma_intervals.push_back({ab.at(0).get<double>(), ab.at(1).get<double>()});
  r.m = j.at("band").at(0).get<double>();
  r.M = j.at("band").at(1).get<double>();
  r.e_min = j.at("e_min").get<double>();
  r.e_max = j.at("e_max").get<double>();
  std::string c = j.at("classification").get<std::string>();
  bool matched = false;
  for (auto cls : {Classification::CaseI_v1_nonzero, Classification::CaseII_negative_min,
                   Classification::CaseIII_nonneg_min, Classification::Boundary_zero_min}) {
    if (c == to_string(cls)) {
      r.classification = cls;
      matched = true;
    }
  }
  if (!matched) throw DomainError("unknown classification tag: " + c);
  if (!j.at("min_delta_at_m").is_null())
    r.min_delta_at_m = j.at("min_delta_at_m").get<double>();
  r.grid_n = j.at("grid_n").get<int>();
  return r;
}

ordered_json to_json(const BSCount& c) {
  ordered_json j;
  j["z"] = c.z;
  j["count"] = c.count;
  j["borderline_flags"] = c.borderline;
  j["top_eigenvalues"] = c.top_eigenvalues;
  return j;
}

BSCount bscount_from_json(const ordered_json& j) {
  BSCount c;
  c.z = j.at("z").get<double>();
  c.count = j.at("count").get<int>();
  c.borderline = j.at("borderline_flags").get<std::vector<double>>();
  c.top_eigenvalues = j.at("top_eigenvalues").get<std::vector<double>>();
  return c;
}

ordered_json to_json(const std::vector<ExactRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["branch"] = r.branch;
    j["k"] = r.k;
    j["present"] = r.present;
    if (r.present) {
      j["xi"] = r.xi;
      j["multiplicity"] = r.multiplicity;
      j["equation_residual"] = r.equation_residual;
      j["oracle_residual"] = num_or_null(r.oracle_residual);
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

ordered_json to_json(const ThresholdReport& r) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json j;
    j["n"] = row.n;
    j["dim"] = row.dim;
    j["count"] = row.count;
    j["min_eig"] = row.min_eig;
    arr.push_back(std::move(j));
  }
  ordered_json out;
  out["rows"] = std::move(arr);
  return out;
}

ordered_json to_json(const A2Report& r) {
  ordered_json j;
  j["alpha"] = r.alpha;
  j["alpha0"] = num_or_null(r.alpha0_value);
  j["e_min_plus"] = r.e_min_plus;
  j["e_min_minus"] = r.e_min_minus;
  j["e_min"] = r.e_min;
  ordered_json iv = ordered_json::array();
  for (const auto& ab : r.ess_intervals) iv.push_back({ab[0], ab[1]});
  j["ess_intervals"] = std::move(iv);
  auto counts = [](const std::vector<std::pair<double, int>>& cs) {
    ordered_json arr = ordered_json::array();
    for (const auto& [z, c] : cs) {
      ordered_json e;
      e["z"] = z;
      e["count"] = c;
      arr.push_back(std::move(e));
    }
    return arr;
  };
  j["counts_plus"] = counts(r.counts_plus);
  j["counts_minus"] = counts(r.counts_minus);
  j["flags"] = r.flags;
  return j;
}

std::string csv_ess(const EssentialSpectrumReport& r, const ordered_json& header) {
  std::string out = preamble(header);
  out += "# e_min: " + fmt_double(r.e_min) + "\n";
  out += "# e_max: " + fmt_double(r.e_max) + "\n";
  out += std::string("# classification: ") + to_string(r.classification) + "\n";
  out += "# min_delta_at_m: " +
         (r.min_delta_at_m ? fmt_double(*r.min_delta_at_m) : std::string("absent")) + "\n";
  out += "component,lo,hi\n";
  for (const auto& ab : r.sigma_intervals)
    out += "sigma," + fmt_double(ab[0]) + "," + fmt_double(ab[1]) + "\n";
  out += "band," + fmt_double(r.m) + "," + fmt_double(r.M) + "\n";
  return out;
}

std::string csv_counts(const std::vector<BSCount>& cs, const ordered_json& header) {
  std::string out = preamble(header);
  out += "z,count,borderline,top_eigenvalues\n";
  for (const auto& c : cs) {
    out += fmt_double(c.z) + "," + std::to_string(c.count) + "," +
           join(c.borderline, ";", fmt_d) + "," + join(c.top_eigenvalues, ";", fmt_d) +
           "\n";
  }
  return out;
}

std::string csv_exact(const std::vector<ExactRow>& rows, const ordered_json& header) {
  std::string out = preamble(header);
  out += "branch,k,present,xi,multiplicity,equation_residual,oracle_residual\n";
  for (const auto& r : rows) {
    out += std::to_string(r.branch) + "," + std::to_string(r.k) + ",";
    if (!r.present) {
      out += "0,,,,\n";
      continue;
    }
    out += "1," + fmt_double(r.xi) + "," + std::to_string(r.multiplicity) + "," +
           fmt_double(r.equation_residual) + "," +
           (r.oracle_residual ? fmt_double(*r.oracle_residual) : std::string()) + "\n";
  }
  return out;
}

std::string csv_threshold(const ThresholdReport& r, const ordered_json& header,
                          const MetaPairs& extra) {
  std::string out = preamble(header);
  for (const auto& [k, v] : extra) out += "# " + k + ": " + v + "\n";
  out += "n,dim,count,min_eig\n";
  for (const auto& row : r.rows)
    out += std::to_string(row.n) + "," + std::to_string(row.dim) + "," +
           std::to_string(row.count) + "," + fmt_double(row.min_eig) + "\n";
  return out;
}

std::string csv_app(const A2Report& r, const ordered_json& header) {
  std::string out = preamble(header);
  auto ivcell = [](const std::vector<std::array<double, 2>>& iv) {
    std::string s;
    for (std::size_t i = 0; i < iv.size(); ++i) {
      if (i) s += ";";
      s += fmt_double(iv[i][0]) + ":" + fmt_double(iv[i][1]);
    }
    return s;
  };
  auto ctcell = [](const std::vector<std::pair<double, int>>& cs) {
    std::string s;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (i) s += ";";
      s += fmt_double(cs[i].first) + ":" + std::to_string(cs[i].second);
    }
    return s;
  };
  std::string flags;
  for (std::size_t i = 0; i < r.flags.size(); ++i) {
    if (i) flags += ";";
    flags += r.flags[i];
  }
  out += "alpha,alpha0,e_min_plus,e_min_minus,e_min,ess_intervals,counts_plus,counts_minus,flags\n";
  out += fmt_double(r.alpha) + "," +
         (r.alpha0_value ? fmt_double(*r.alpha0_value) : std::string()) + "," +
         fmt_double(r.e_min_plus) + "," + fmt_double(r.e_min_minus) + "," +
         fmt_double(r.e_min) + "," + ivcell(r.ess_intervals) + "," +
         ctcell(r.counts_plus) + "," + ctcell(r.counts_minus) + "," + flags + "\n";
  return out;
}

std::string csv_oracle(double z, const std::vector<double>& eigenvalues,
                       const ordered_json& header) {
  std::string out = preamble(header);
  out += "z,count,eigenvalues\n";
  out += fmt_double(z) + "," + std::to_string(eigenvalues.size()) + "," +
         join(eigenvalues, ";", fmt_d) + "\n";
  return out;
}

}  // namespace fockspec
