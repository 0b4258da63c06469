// threshold.cpp - critical couplings, decomposition asymptotics, growth signals
#include "fockspec/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fockspec/direct_oracle.hpp"
#include "fockspec/eig.hpp"
#include "fockspec/errors.hpp"
#include "fockspec/friedrichs.hpp"
#include "fockspec/grid.hpp"

namespace fockspec {

namespace {


// Delta(0; 0) by direct quadrature, used to certify critical couplings
double delta00(const ModelSpec& model) {
  TorusGrid g = make_grid(512);
  auto integrand = [&](double t) {
    double v = model.v1(t);
    return v * v / model.w2(0.0, t);
  };
  return model.w1(0.0) - 0.5 * quad_refined(g, integrand);
}

double decomposition_coefficient(double l, double mu) {
  return mu * kPi * (1.0 + 2.0 * l - l * l) /
         ((1.0 + l) * (1.0 + l) * std::sqrt(1.0 + 2.0 * l));
}

}  // namespace

double mu_critical(int case_id, std::optional<double> l) {
  double mu = 0.0;
  ModelSpec model;
  if (case_id == 1) {
    if (!l) throw DomainError("case 1 requires the parameter l");
    if (*l <= 0.0) throw DomainError("l must be positive");
    mu = (1.0 + *l) / kPi;
    model = model_case1(*l, mu);
  } else if (case_id == 2) {
    mu = 1.0 / kPi;
    model = model_case2(mu);
  } else {
    throw DomainError("case must be 1 or 2");
  }
  double d = delta00(model);
  if (std::abs(d) > 1e-8)
    throw NumericError("critical coupling failed the quadrature cross-check");
  return mu;
}

double delta_asymptotic_check(const CaseIParams& p,
                              const std::vector<std::pair<double, double>>& samples) {
  if (p.l <= 0.0 || p.mu <= 0.0) throw DomainError("l and mu must be positive");
  ModelSpec model = model_case1(p.l, p.mu);
  DeltaEvaluator ev(model, make_grid(512));
  double c = decomposition_coefficient(p.l, p.mu);
  double worst = 0.0;
  for (auto [x, z] : samples) {
    if (std::abs(x) > 0.1 + 1e-12 || z > 0.0 || z < -0.01 - 1e-12)
      throw DomainError("sample outside |x| <= 0.1, -0.01 <= z <= 0");
    double lead = c * std::sqrt(x * x - 2.0 * (1.0 + p.l) * z / (1.0 + 2.0 * p.l));
    double e = ev(x, z) - lead;
    double ratio = std::abs(e) / (x * x + std::sqrt(std::abs(z)) + 1e-30);
    worst = std::max(worst, ratio);
  }
  return worst;
}

QuadraticBounds case2_quadratic_bounds(double mu, const std::vector<double>& x_ladder) {
  if (mu <= 0.0) throw DomainError("mu must be positive");
  if (x_ladder.empty()) throw DomainError("empty ladder");
  ModelSpec model = model_case2(mu);
  DeltaEvaluator ev(model, make_grid(512));
  QuadraticBounds out;
  out.divergent = ev(0.0, 0.0) > 1e-8;
  out.c1 = std::numeric_limits<double>::infinity();
  out.c2 = -std::numeric_limits<double>::infinity();
  for (double x : x_ladder) {
    if (x == 0.0 || std::abs(x) > 0.2)
      throw DomainError("ladder points must satisfy 0 < |x| <= 0.2");
    double ratio = ev(x, 0.0) / (x * x);
    out.c1 = std::min(out.c1, ratio);
    out.c2 = std::max(out.c2, ratio);
  }
  return out;
}

double lambda_k_S(const CaseIParams& p, int k, double z) {
  double pref = lambda_limit(p.l);
  if (z >= 0.0) throw DomainError("z must be negative");
  if (std::abs(z) >= p.delta_cut * p.delta_cut)
    throw DomainError("|z| must be below delta_cut^2");
  double r = -std::log(std::sqrt(std::abs(z)) / p.delta_cut);
  if (r <= 0.0) throw DomainError("R(z) must be positive");
  if (k == 0) return pref;
  double theta = std::acos(p.l / (1.0 + p.l));
  double u = 2.0 * std::abs(k) * kPi / r;
  // sinh ratios rewritten with nonpositive exponents so large u cannot overflow
  double num = std::exp((theta - kPi) * u) * (-std::expm1(-2.0 * theta * u)) +
               std::exp(-theta * u) * (-std::expm1(-2.0 * (kPi - theta) * u));
  double den = -std::expm1(-2.0 * kPi * u);
  return pref * num / den;
}

double lambda_limit(double l) {
  if (l <= 0.0) throw DomainError("l must be positive");
  double q = 1.0 + 2.0 * l - l * l;
  if (std::abs(q) < 1e-12)
    throw DomainError("decomposition coefficient degenerates at 1 + 2l - l^2 = 0");
  double theta = std::acos(l / (1.0 + l));
  return (1.0 + l) * (1.0 + l) * std::sqrt(1.0 + 2.0 * l) /
         (q * (1.0 + l) * std::sin(theta));
}

ThresholdReport growth_scan(const ModelSpec& model, const std::vector<int>& grids,
                            double count_margin) {
  ThresholdReport rep;
  for (int n : grids) {
    FockGridBasis basis(n);
    TorusGrid g = make_grid(n);
    Eigen::MatrixXd H = assemble_H(model, g);
    GrowthRow row;
    row.n = n;
    row.dim = basis.dim;
    row.min_eig = min_eig_estimate(H);
    row.count = inertia_count_below(H, -count_margin);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace fockspec
