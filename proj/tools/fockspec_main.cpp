// fockspec_main.cpp - command-line front end emitting versioned reports
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fockspec/birman_schwinger.hpp"
#include "fockspec/direct_oracle.hpp"
#include "fockspec/errors.hpp"
#include "fockspec/exact_model.hpp"
#include "fockspec/friedrichs.hpp"
#include "fockspec/grid.hpp"
#include "fockspec/report.hpp"
#include "fockspec/spin_boson.hpp"
#include "fockspec/threshold.hpp"

namespace {

using fockspec::ordered_json;

struct Options {
  std::string model = "section6";
  std::map<std::string, std::string> params;
  int grid_n = 64;
  std::vector<double> zs;
  std::string out;
  std::string format = "json";
  std::map<std::string, std::string> tols;
  std::string config;
  int case_id = 1;
  double l = 2.0;
  int kmax = 8;
  std::vector<int> growth_grids;
};

using fockspec::ConfigError;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::pair<std::string, std::string> split_kv(const std::string& s, const std::string& what) {
  auto pos = s.find('=');
  if (pos == std::string::npos) throw ConfigError(what + " expects key=value, got '" + s + "'");
  return {trim(s.substr(0, pos)), trim(s.substr(pos + 1))};
}

double parse_num(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": not a number: '" + s + "'");
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ';') {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

// plain key=value config file; command-line flags win on conflicts
void apply_config(Options& o, const std::map<std::string, bool>& flag_given) {
  std::ifstream in(o.config);
  if (!in) throw ConfigError("cannot read config file: " + o.config);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto [key, value] = split_kv(line, "config line " + std::to_string(lineno));
    auto skip = [&](const std::string& flag) {
      auto it = flag_given.find(flag);
      return it != flag_given.end() && it->second;
    };
    if (key == "model") {
      if (!skip("model")) o.model = value;
    } else if (key == "grid_n" || key == "grid-n") {
      if (!skip("grid-n")) o.grid_n = static_cast<int>(parse_num(value, key));
    } else if (key == "format") {
      if (!skip("format")) o.format = value;
    } else if (key == "out") {
      if (!skip("out")) o.out = value;
    } else if (key == "z") {
      if (!skip("z")) {
        o.zs.clear();
        for (const auto& t : split_list(value)) o.zs.push_back(parse_num(t, "z"));
      }
    } else if (key == "case") {
      if (!skip("case")) o.case_id = static_cast<int>(parse_num(value, key));
    } else if (key == "l") {
      if (!skip("l")) o.l = parse_num(value, key);
    } else if (key == "kmax") {
      if (!skip("kmax")) o.kmax = static_cast<int>(parse_num(value, key));
    } else if (key == "growth_n" || key == "growth-n") {
      if (!skip("growth-n")) {
        o.growth_grids.clear();
        for (const auto& t : split_list(value))
          o.growth_grids.push_back(static_cast<int>(parse_num(t, "growth_n")));
      }
    } else if (key.rfind("param.", 0) == 0) {
      o.params.emplace(key.substr(6), value);  // flags already present win
    } else if (key.rfind("tol.", 0) == 0) {
      o.tols.emplace(key.substr(4), value);
    } else {
      throw ConfigError("unknown config key '" + key + "' (line " +
                        std::to_string(lineno) + ")");
    }
  }
}

fockspec::Tolerances build_tolerances(const std::map<std::string, std::string>& kv) {
  fockspec::Tolerances t;
  for (const auto& [k, v] : kv) {
    double x = parse_num(v, "tolerance " + k);
    if (k == "root_tol") t.root_tol = x;
    else if (k == "sign_tol") t.sign_tol = x;
    else if (k == "v_tol") t.v_tol = x;
    else if (k == "adaptive_tol") t.adaptive_tol = x;
    else if (k == "quad_rel_tol") t.quad_rel_tol = x;
    else if (k == "refine_tol") t.refine_tol = x;
    else if (k == "eig_tol") t.eig_tol = x;
    else if (k == "count_margin") t.count_margin = x;
    else throw ConfigError("unknown tolerance key '" + k + "'");
  }
  return t;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file: " + o.out);
  f << text;
}

void emit_json(const Options& o, ordered_json header, ordered_json data) {
  header["data"] = std::move(data);
  emit(o, header.dump(2) + "\n");
}

double model_param(const fockspec::ModelSpec& m, const std::string& key) {
  auto it = m.params.find(key);
  if (it == m.params.end()) throw ConfigError("model lacks parameter '" + key + "'");
  return it->second;
}

int run_ess(const Options& o, bool classify_only) {
  fockspec::ModelSpec model = fockspec::make_model(o.model, o.params);
  fockspec::TorusGrid g = fockspec::make_grid(o.grid_n);
  fockspec::DeltaEvaluator ev(model, g, build_tolerances(o.tols));
  fockspec::EssentialSpectrumReport rep = fockspec::essential_spectrum(ev);
  ordered_json header =
      fockspec::report_header(classify_only ? "classify" : "ess", model, o.grid_n);
  if (classify_only) {
    ordered_json data;
    data["classification"] = fockspec::to_string(rep.classification);
    data["e_min"] = rep.e_min;
    data["band_bottom"] = rep.m;
    data["min_delta_at_m"] =
        rep.min_delta_at_m ? ordered_json(*rep.min_delta_at_m) : ordered_json(nullptr);
    if (o.format == "json") {
      emit_json(o, std::move(header), std::move(data));
    } else {
      std::string out = "# fockspec-report-v1\n# command: classify\n";
      out += "classification,e_min,band_bottom,min_delta_at_m\n";
      out += std::string(fockspec::to_string(rep.classification)) + "," +
             fockspec::fmt_double(rep.e_min) + "," + fockspec::fmt_double(rep.m) + "," +
             (rep.min_delta_at_m ? fockspec::fmt_double(*rep.min_delta_at_m)
                                 : std::string("absent")) +
             "\n";
      emit(o, out);
    }
    return 0;
  }
  if (o.format == "json")
    emit_json(o, std::move(header), fockspec::to_json(rep));
  else
    emit(o, fockspec::csv_ess(rep, header));
  return 0;
}

int run_count(const Options& o) {
  if (o.zs.empty()) throw ConfigError("count requires at least one --z");
  fockspec::ModelSpec model = fockspec::make_model(o.model, o.params);
  fockspec::TorusGrid g = fockspec::make_grid(o.grid_n);
  fockspec::Tolerances tol = build_tolerances(o.tols);
  fockspec::DeltaEvaluator ev(model, g, tol);
  fockspec::EssentialSpectrumReport rep = fockspec::essential_spectrum(ev);
  std::vector<fockspec::BSCount> counts;
  for (double z : o.zs) {
    if (z >= rep.e_min)
      throw fockspec::DomainError("z = " + fockspec::fmt_double(z) +
                                  " is not strictly below e_min = " +
                                  fockspec::fmt_double(rep.e_min));
    counts.push_back(fockspec::bs_count(model, g, z, tol));
  }
  ordered_json header = fockspec::report_header("count", model, o.grid_n);
  if (o.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& c : counts) arr.push_back(fockspec::to_json(c));
    ordered_json data;
    data["e_min"] = rep.e_min;
    data["counts"] = std::move(arr);
    emit_json(o, std::move(header), std::move(data));
  } else {
    emit(o, fockspec::csv_counts(counts, header));
  }
  return 0;
}

int run_exact(const Options& o) {
  fockspec::ModelSpec model = fockspec::make_model(o.model, o.params);
  if (model.family != "section6")
    throw ConfigError("exact requires --model section6");
  fockspec::ExactParams p;
  p.a = model_param(model, "a");
  p.b = model_param(model, "b");
  p.w0 = model_param(model, "w0");
  fockspec::TorusGrid g = fockspec::make_grid(o.grid_n);
  Eigen::MatrixXd H = fockspec::assemble_H(model, g);
  fockspec::FockGridBasis basis(g.n);

  std::vector<fockspec::ExactRow> rows;
  for (int branch = 1; branch <= 3; ++branch) {
    for (int k = 0; k <= o.kmax; ++k) {
      fockspec::ExactRow row;
      row.branch = branch;
      row.k = k;
      auto ev = fockspec::solve_branch(p, k, branch);
      if (ev) {
        row.present = true;
        row.xi = ev->xi;
        row.multiplicity = ev->multiplicity;
        row.equation_residual = ev->equation_residual;
        auto [f1, f2] = fockspec::exact_eigenvector(p, k, ev->xi);
        Eigen::VectorXd v = fockspec::embed_state(basis, g, 0.0, f1, f2);
        row.oracle_residual = fockspec::eig_residual(H, ev->xi, v);
      }
      rows.push_back(std::move(row));
    }
  }
  ordered_json header = fockspec::report_header("exact", model, o.grid_n);
  if (o.format == "json")
    emit_json(o, std::move(header), fockspec::to_json(rows));
  else
    emit(o, fockspec::csv_exact(rows, header));
  return 0;
}

int run_thresholds(const Options& o) {
  fockspec::ModelSpec model;
  double mu = 0.0;
  if (o.case_id == 1) {
    mu = fockspec::mu_critical(1, o.l);
    model = fockspec::model_case1(o.l, mu);
  } else if (o.case_id == 2) {
    mu = fockspec::mu_critical(2);
    model = fockspec::model_case2(mu);
  } else {
    throw ConfigError("--case must be 1 or 2");
  }
  std::vector<int> grids = o.growth_grids;
  if (grids.empty()) grids = {48, 96, 144};
  fockspec::Tolerances tol = build_tolerances(o.tols);
  fockspec::ThresholdReport rep = fockspec::growth_scan(model, grids, tol.count_margin);

  ordered_json header = fockspec::report_header("thresholds", model, o.grid_n);
  std::optional<double> lim;
  if (o.case_id == 1) lim = fockspec::lambda_limit(o.l);
  if (o.format == "json") {
    ordered_json data;
    data["case"] = o.case_id;
    data["mu_critical"] = mu;
    if (lim) data["lambda_limit"] = *lim;
    data["growth"] = fockspec::to_json(rep)["rows"];
    emit_json(o, std::move(header), std::move(data));
  } else {
    fockspec::MetaPairs extra = {{"case", std::to_string(o.case_id)},
                                 {"mu_critical", fockspec::fmt_double(mu)}};
    if (lim) extra.emplace_back("lambda_limit", fockspec::fmt_double(*lim));
    emit(o, fockspec::csv_threshold(rep, header, extra));
  }
  return 0;
}

int run_app(const Options& o) {
  fockspec::SpinBosonParams p;
  for (const auto& [k, v] : o.params) {
    if (k == "eps") p.epsilon = parse_num(v, k);
    else if (k == "alpha") p.alpha = parse_num(v, k);
    else if (k == "w") p.w_name = v;
    else if (k == "v") p.v_name = v;
    else throw ConfigError("app: unknown parameter '" + k + "' (use eps, alpha, w, v)");
  }
  fockspec::TorusGrid g = fockspec::make_grid(o.grid_n);
  fockspec::A2Report rep = fockspec::a2_spectrum_report(p, g);
  fockspec::ModelSpec display = fockspec::to_model(p, +1);
  display.params.erase("sigma");  // the report covers both blocks
  ordered_json header = fockspec::report_header("app", display, o.grid_n);
  if (o.format == "json")
    emit_json(o, std::move(header), fockspec::to_json(rep));
  else
    emit(o, fockspec::csv_app(rep, header));
  return 0;
}

int run_oracle(const Options& o) {
  if (o.zs.size() != 1) throw ConfigError("oracle requires exactly one --z");
  fockspec::ModelSpec model = fockspec::make_model(o.model, o.params);
  fockspec::TorusGrid g = fockspec::make_grid(o.grid_n);
  Eigen::MatrixXd H = fockspec::assemble_H(model, g);
  std::vector<double> vals = fockspec::eigs_below(H, o.zs[0]);
  ordered_json header = fockspec::report_header("oracle", model, o.grid_n);
  if (o.format == "json") {
    ordered_json data;
    data["z"] = o.zs[0];
    data["count"] = static_cast<int>(vals.size());
    data["eigenvalues"] = vals;
    emit_json(o, std::move(header), std::move(data));
  } else {
    emit(o, fockspec::csv_oracle(o.zs[0], vals, header));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral analysis of tridiagonal block operator matrices on the torus"};
  app.require_subcommand(1);

  Options o;
  std::vector<std::string> raw_params, raw_tols;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", o.model, "model family (section6, case1, case2, spinboson)");
    sub->add_option("--param", raw_params, "model parameter key=value (repeatable)");
    sub->add_option("--grid-n", o.grid_n, "grid size (even, at least 16)");
    sub->add_option("--z", o.zs, "spectral parameter (repeatable)");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", raw_tols, "tolerance override key=value (repeatable)");
    sub->add_option("--config", o.config, "key=value config file; flags win");
  };

  CLI::App* ess = app.add_subcommand("ess", "essential spectrum: branch plus band");
  CLI::App* classify = app.add_subcommand("classify", "ground-energy trichotomy");
  CLI::App* count = app.add_subcommand("count", "eigenvalues below z via the kernel test");
  CLI::App* exact = app.add_subcommand("exact", "closed-form eigenvalue table (csv: branch, k, xi, multiplicity, equation residual, oracle residual)");
  CLI::App* thresholds = app.add_subcommand("thresholds", "critical couplings and growth table (csv: n, dim, count, min_eig)");
  CLI::App* appcmd = app.add_subcommand("app", "doubled two-level model report");
  CLI::App* oracle = app.add_subcommand("oracle", "dense-matrix eigenvalues below z");
  for (CLI::App* sub : {ess, classify, count, exact, thresholds, appcmd, oracle})
    add_common(sub);
  exact->add_option("--kmax", o.kmax, "largest mode index per branch");
  thresholds->add_option("--case", o.case_id, "boundary family, 1 or 2");
  thresholds->add_option("--l", o.l, "case-1 parameter l");
  thresholds->add_option("--growth-n", o.growth_grids, "grid ladder (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    auto given = [&](const std::string& name) {
      auto* opt = sub->get_option_no_throw("--" + name);
      return opt && opt->count() > 0;
    };
    for (const auto& s : raw_params) o.params.insert(split_kv(s, "--param"));
    for (const auto& s : raw_tols) o.tols.insert(split_kv(s, "--tol"));
    if (!o.config.empty()) {
      std::map<std::string, bool> flag_given;
      for (const char* f : {"model", "grid-n", "z", "out", "format", "case", "l",
                            "kmax", "growth-n"})
        flag_given[f] = given(f);
      apply_config(o, flag_given);
    }
    if (o.grid_n < 16) throw ConfigError("--grid-n must be at least 16");

    const std::string& cmd = sub->get_name();
    if (cmd == "ess") return run_ess(o, false);
    if (cmd == "classify") return run_ess(o, true);
    if (cmd == "count") return run_count(o);
    if (cmd == "exact") return run_exact(o);
    if (cmd == "thresholds") return run_thresholds(o);
    if (cmd == "app") return run_app(o);
    return run_oracle(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fockspec::ResourceError& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 4;
  } catch (const fockspec::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const fockspec::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
