// acceptance_main.cpp - end-to-end gate: one pass/fail line per criterion
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fockspec/birman_schwinger.hpp"
#include "fockspec/direct_oracle.hpp"
#include "fockspec/eig.hpp"
#include "fockspec/errors.hpp"
#include "fockspec/exact_model.hpp"
#include "fockspec/friedrichs.hpp"
#include "fockspec/grid.hpp"
#include "fockspec/model.hpp"
#include "fockspec/spin_boson.hpp"
#include "fockspec/threshold.hpp"

using namespace fockspec;

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// mixed error: relative for O(1) values with an absolute floor for tiny ones
double mixed_err(double got, double want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

// ---------------------------------------------------------------- criterion 1
bool c1_closed_forms(std::string& detail) {
  const TorusGrid g = make_grid(2048);
  const ExactParams p{1.0, 1.0, 0.0};
  double worst = 0.0;
  for (double z : {-2.0, -1.0, -0.1, 2.5, 3.0, 5.0}) {
    const double dq = quad(g, [z](double t) { return 1.0 / (1.0 - std::cos(t) - z); });
    const double delta_quad = p.a - z - 0.5 * p.b * p.b * dq;
    worst = std::max(worst, mixed_err(delta_quad, delta_closed(p, z)));
    for (int k = 0; k <= 10; ++k) {
      const double q = quad(g, [k, z](double t) {
        return std::cos(k * t) / (1.0 - std::cos(t) - z);
      });
      worst = std::max(worst, mixed_err(q, dk_closed(k, z)));
    }
  }
  detail = "max deviation " + fmt(worst) + " (tol 1e-9)";
  return worst <= 1e-9;
}

// ---------------------------------------------------------------- criterion 2
struct LadderData {
  std::vector<double> cluster_err;  // |cluster mean - xi_k|, k = 0..4
  std::vector<int> mults;
  std::vector<double> vec_residuals;
  double top_below_cut = -1e300;
};

LadderData ladder_at(const ExactParams& p, int n, const std::vector<double>& xis) {
  const TorusGrid g = make_grid(n);
  const ModelSpec m = to_model(p);
  const Eigen::MatrixXd H = assemble_H(m, g);
  const FockGridBasis b(n);

  LadderData out;
  const std::vector<double> vals = eigs_below(H, -0.02);
  for (double v : vals) out.top_below_cut = std::max(out.top_below_cut, v);
  const auto clusters = cluster_eigenvalues(vals, 1e-7);
  for (std::size_t k = 0; k < 5 && k < clusters.size(); ++k) {
    out.cluster_err.push_back(std::abs(clusters[k].first - xis[k]));
    out.mults.push_back(clusters[k].second);
  }

  const std::array<std::pair<int, bool>, 4> modes{{{0, false}, {1, false}, {1, true}, {2, false}}};
  for (auto [k, sine] : modes) {
    const auto [f1, f2] = exact_eigenvector(p, k, xis[k], sine);
    const Eigen::VectorXd v = embed_state(b, g, 0.0, f1, f2);
    out.vec_residuals.push_back(eig_residual(H, xis[k], v));
  }
  return out;
}

bool c2_constant_model_ladder(std::string& detail) {
  const ExactParams p{1.0, 1.0, 0.0};
  const auto edges = band_edges(p);
  const double sum_err = std::abs(edges[0] + edges[1] - 2.0);
  bool ok = sum_err <= 1e-10;

  std::vector<double> xis;
  double max_res = 0.0;
  for (int k = 0; k <= 8; ++k) {
    const auto root = solve_branch(p, k, 1);
    if (!root) {
      detail = "branch-1 root k=" + std::to_string(k) + " missing";
      return false;
    }
    if (k > 0 && root->xi <= xis.back()) ok = false;
    xis.push_back(root->xi);
    max_res = std::max(max_res, root->equation_residual);
  }
  ok = ok && max_res <= 1e-10;

  const LadderData coarse = ladder_at(p, 64, xis);
  const LadderData fine = ladder_at(p, 128, xis);

  const std::vector<int> want_mults{1, 2, 2, 2, 2};
  bool mults_ok = fine.mults.size() == 5 && coarse.mults.size() == 5;
  for (std::size_t k = 0; mults_ok && k < 5; ++k)
    mults_ok = fine.mults[k] == want_mults[k] && coarse.mults[k] == want_mults[k];

  double err64 = 0.0, err128 = 0.0;
  for (std::size_t k = 0; k < fine.cluster_err.size(); ++k) {
    err64 = std::max(err64, coarse.cluster_err[k]);
    err128 = std::max(err128, fine.cluster_err[k]);
  }
  const bool cluster_ok =
      mults_ok && err128 <= 5e-3 && (err128 <= err64 / 3.0 || err128 <= 1e-10);

  const bool gap_ok = fine.top_below_cut <= edges[0] + 0.02;

  bool vec_ok = true;
  double worst_r = 0.0;
  for (std::size_t i = 0; i < fine.vec_residuals.size(); ++i) {
    const double r128 = fine.vec_residuals[i], r64 = coarse.vec_residuals[i];
    worst_r = std::max(worst_r, r128);
    vec_ok = vec_ok && r128 <= 5e-3 && (r128 <= r64 / 3.0 || r128 <= 1e-10);
  }

  detail = "edge sum err " + fmt(sum_err) + ", root residual " + fmt(max_res) +
           ", cluster err " + fmt(err128) + " (n=64: " + fmt(err64) +
           "), vec residual " + fmt(worst_r);
  return ok && cluster_ok && gap_ok && vec_ok;
}

// ---------------------------------------------------------------- criterion 3
bool c3_count_identity(std::string& detail) {
  struct Probe {
    ModelSpec model;
    const char* name;
  };
  const std::vector<Probe> probes{{model_section6(1.0, 1.0), "section6"},
                                  {model_case2(0.9 / kPi), "case2"},
                                  {model_spinboson(+1, 1.0, 0.5), "spinboson+"}};
  int disagreements = 0;
  int checks = 0;
  for (const Probe& pr : probes) {
    const double e_min =
        essential_spectrum(DeltaEvaluator(pr.model, make_grid(64))).e_min;
    for (int n : {32, 64}) {
      const TorusGrid g = make_grid(n);
      const Eigen::MatrixXd H = assemble_H(pr.model, g);
      for (double d : {0.05, 0.2, 0.5}) {
        const double z = e_min - d;
        const BSCount c = bs_count(pr.model, g, z);
        const int oracle = count_below(H, z);
        ++checks;
        if (c.count == oracle) continue;
        // borderline exemption: an eigenvalue within 1e-4 of z on either side
        const std::vector<double> near = eigs_below(H, z + 1e-4);
        int nb = 0;
        for (double v : near)
          if (std::abs(v - z) <= 1e-4) ++nb;
        nb = std::max<int>(nb, (int)c.borderline.size());
        if (std::abs(c.count - oracle) > nb) {
          ++disagreements;
          detail = std::string(pr.name) + " n=" + std::to_string(n) +
                   " z=" + fmt(z) + ": kernel " + std::to_string(c.count) +
                   " vs dense " + std::to_string(oracle);
        }
      }
    }
  }
  if (disagreements == 0)
    detail = std::to_string(checks) + " matched counts across 3 models x 2 grids";
  return disagreements == 0;
}

// ---------------------------------------------------------------- criterion 4
bool c4_trichotomy(std::string& detail) {
  const EssentialSpectrumReport above =
      essential_spectrum(DeltaEvaluator(model_case2(1.2 / kPi), make_grid(64)));
  const EssentialSpectrumReport below =
      essential_spectrum(DeltaEvaluator(model_case2(0.9 / kPi), make_grid(64)));
  const ModelSpec nz = model_spinboson(+1, 1.0, 0.7, "one_minus_cos", "one_plus_sin");
  const EssentialSpectrumReport coupled =
      essential_spectrum(DeltaEvaluator(nz, make_grid(64)));

  const bool ii = above.classification == Classification::CaseII_negative_min &&
                  above.e_min < -1e-6 && above.min_delta_at_m &&
                  *above.min_delta_at_m <= -1e-6;
  const bool iii = below.classification == Classification::CaseIII_nonneg_min &&
                   std::abs(below.e_min) <= 1e-12 && below.min_delta_at_m &&
                   *below.min_delta_at_m >= 1e-6;
  const bool i = coupled.classification == Classification::CaseI_v1_nonzero &&
                 std::abs(nz.v1(0.0)) >= 1e-6 && coupled.e_min < coupled.m;

  detail = std::string("margins: ") +
           (above.min_delta_at_m ? fmt(*above.min_delta_at_m) : "absent") + " / " +
           (below.min_delta_at_m ? fmt(*below.min_delta_at_m) : "absent") +
           ", coupled v1(0) = " + fmt(nz.v1(0.0));
  return ii && iii && i;
}

// ---------------------------------------------------------------- criterion 5
bool c5_critical_boundary(std::string& detail) {
  const double mu0 = mu_critical(1, 2.0);
  const bool mu_ok = std::abs(mu0 - 3.0 / kPi) <= 1e-12;

  const TorusGrid g = make_grid(256);
  const double d_above = DeltaEvaluator(model_case1(2.0, 1.1 * mu0), g)(0.0, 0.0);
  const double d_below = DeltaEvaluator(model_case1(2.0, 0.9 * mu0), g)(0.0, 0.0);
  const bool flip_ok = d_above <= -1e-6 && d_below >= 1e-6;

  const bool limit_ok = std::abs(lambda_limit(2.0) - 9.0) <= 1e-12;

  const ThresholdReport inf_scan = growth_scan(model_case1(2.0, mu0), {48, 96, 144});
  const bool growing = inf_scan.rows[0].count < inf_scan.rows[1].count &&
                       inf_scan.rows[1].count < inf_scan.rows[2].count;

  const ThresholdReport fin_scan = growth_scan(model_case2(1.0 / kPi), {96, 144});
  const bool stable = fin_scan.rows[0].count == fin_scan.rows[1].count;

  detail = "mu0 err " + fmt(std::abs(mu0 - 3.0 / kPi)) + ", critical counts " +
           std::to_string(inf_scan.rows[0].count) + "/" +
           std::to_string(inf_scan.rows[1].count) + "/" +
           std::to_string(inf_scan.rows[2].count) +
           (growing ? " strictly increase" : " do not strictly increase") +
           ", finite-case counts " + std::to_string(fin_scan.rows[0].count) + "=" +
           std::to_string(fin_scan.rows[1].count);
  if (!growing)
    detail += "; the next bound state sits near -1e-5 and needs n ~ 1e3 "
              "(dim ~ 1e6, beyond the resource guard), so the count is "
              "resolution-limited at these grids";
  return mu_ok && flip_ok && limit_ok && growing && stable;
}

// ---------------------------------------------------------------- criterion 6
bool c6_application(std::string& detail) {
  SpinBosonParams p;
  const auto a0 = alpha0(p);
  if (!a0) {
    detail = "critical coupling unexpectedly divergent";
    return false;
  }
  const bool a0_ok = std::abs(*a0 - 2.0 / std::sqrt(2.0 * kPi)) <= 1e-10;

  auto minus_class = [&](double alpha) {
    SpinBosonParams q;
    q.alpha = alpha;
    return essential_spectrum(DeltaEvaluator(to_model(q, -1), make_grid(64)))
        .classification;
  };
  const bool flip_ok = minus_class(0.95 * *a0) == Classification::CaseIII_nonneg_min &&
                       minus_class(1.05 * *a0) == Classification::CaseII_negative_min;

  const bool phi_ok = phi_decomposition_check(p, make_grid(8)) == 0.0;

  bool counts_ok = true, emin_ok = true;
  for (double alpha : {0.3, 1.0, 3.0}) {
    SpinBosonParams q;
    q.alpha = alpha;
    const A2Report coarse = a2_spectrum_report(q, make_grid(32));
    const A2Report fine = a2_spectrum_report(q, make_grid(64));
    for (std::size_t i = 0; i < 3; ++i) {
      counts_ok = counts_ok &&
                  coarse.counts_plus[i].second == fine.counts_plus[i].second &&
                  coarse.counts_minus[i].second == fine.counts_minus[i].second;
    }
    emin_ok = emin_ok && fine.e_min < -1.0;
  }

  detail = "alpha0 err " + fmt(std::abs(*a0 - 2.0 / std::sqrt(2.0 * kPi))) +
           ", flip at +-5%: " + (flip_ok ? "yes" : "no") +
           ", counts stable: " + (counts_ok ? "yes" : "no");
  return a0_ok && flip_ok && phi_ok && counts_ok && emin_ok;
}

// ---------------------------------------------------------------- criterion 7
bool c7_determinant_identity(std::string& detail) {
  const std::vector<ModelSpec> models{model_section6(1.0, 1.0), model_case1(2.0, 0.7),
                                      model_case2(0.9 / kPi),
                                      model_spinboson(+1, 1.0, 0.5)};
  std::mt19937 rng(12345u);
  std::uniform_real_distribution<double> ux(-kPi, kPi);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  const TorusGrid g = make_grid(512);
  double worst = 0.0;
  for (const ModelSpec& m : models) {
    const DeltaEvaluator ev(m, g);
    ModelSpec unit = m;
    const double norm2 = quad_refined(g, [&m](double t) {
      const double v = m.v1(t);
      return v * v;
    });
    const double s = 1.0 / std::sqrt(norm2);
    unit.v1 = [f = m.v1, s](double t) { return s * f(t); };
    const DeltaEvaluator evn(unit, g);
    const double bottom = ev.extrema().m;
    for (int trial = 0; trial < 20; ++trial) {
      const double x = ux(rng);
      double z = 0.0;
      do {
        z = bottom - (0.1 + 2.9 * u01(rng));
      } while (std::abs(z) < 0.05);
      const double pd = perturbation_determinant(ev, x, z);
      const double want = -evn(x, z) / z;
      worst = std::max(worst, mixed_err(pd, want));
    }
  }
  detail = "80 samples, max deviation " + fmt(worst) + " (tol 1e-9)";
  return worst <= 1e-9;
}

// ---------------------------------------------------------------- criterion 8
bool c8_asymptotics(std::string& detail) {
  CaseIParams p;
  p.l = 2.0;
  p.mu = mu_critical(1, 2.0);
  std::vector<double> ratios;
  for (int j = 0; j <= 8; ++j) {
    const double x = 0.1 * std::pow(2.0, -j);
    const double z = -0.01 * std::pow(4.0, -j);
    ratios.push_back(delta_asymptotic_check(p, {{x, z}}));
  }
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  const double worst = sorted.back();
  const bool ladder_ok = worst <= 10.0 * median;

  const QuadraticBounds qb =
      case2_quadratic_bounds(1.0 / kPi, {0.2, 0.1, 0.05, 0.025, 0.0125});
  const bool quad_ok = !qb.divergent && qb.c1 > 0.0 && qb.c2 / qb.c1 <= 50.0;

  detail = "ratio max/median " + fmt(worst) + "/" + fmt(median) +
           ", quadratic spread " + fmt(qb.c2 / qb.c1);
  return ladder_ok && quad_ok;
}

struct Criterion {
  const char* name;
  bool (*run)(std::string&);
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"closed-form quadrature agreement", c1_closed_forms},
      {"constant-model eigenvalue ladder", c2_constant_model_ladder},
      {"kernel count vs dense count", c3_count_identity},
      {"trichotomy with sign margins", c4_trichotomy},
      {"critical boundary and growth scans", c5_critical_boundary},
      {"two-level application pipeline", c6_application},
      {"determinant identity on random probes", c7_determinant_identity},
      {"boundary asymptotics bounds", c8_asymptotics},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("%s  %zu %s: %s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].name,
                detail.c_str());
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
