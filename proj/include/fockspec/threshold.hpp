// threshold.hpp - critical couplings and boundary-case spectral signals
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fockspec/model.hpp"

namespace fockspec {

// first boundary family: w2(x,y) = eps(x) + l eps(x+y) + eps(y), v1 = sqrt(mu) sin
struct CaseIParams {
  double l = 2.0;
  double mu = 0.0;
  double delta_cut = 0.1;  // localization radius entering R(z)
};

// coupling at which Delta(0; 0) = 0: (1+l)/pi for case 1, 1/pi for case 2;
// the returned value is cross-checked by quadrature to 1e-8
double mu_critical(int case_id, std::optional<double> l = std::nullopt);

// worst normalized deviation of quadrature Delta(x; z) from the square-root
// leading term c sqrt(x^2 - 2(1+l) z / (1+2l)) over the given (x, z) samples,
// normalized by x^2 + sqrt(|z|); boundedness over a shrinking ladder is the test
double delta_asymptotic_check(const CaseIParams& p,
                              const std::vector<std::pair<double, double>>& samples);

struct QuadraticBounds {
  double c1 = 0.0;        // min of Delta(x; 0) / x^2 over the ladder
  double c2 = 0.0;        // max of the same ratio
  bool divergent = false; // Delta(0; 0) > 0, so the ratio grows as x -> 0
};

// two-sided quadratic bounds for the second boundary family at z = 0
QuadraticBounds case2_quadratic_bounds(double mu, const std::vector<double>& x_ladder);

// explicit eigenvalues of the comparison operator S(z), z < 0, |z| < delta_cut^2
double lambda_k_S(const CaseIParams& p, int k, double z);

// their common z -> 0- limit, independent of k
double lambda_limit(double l);

struct GrowthRow {
  int n = 0;
  int dim = 0;
  int count = 0;          // eigenvalues below -count_margin
  double min_eig = 0.0;
};

struct ThresholdReport {
  std::vector<GrowthRow> rows;
};

// eigenvalue counts of the dense discretization across grids; a growing
// sequence signals an infinite discrete spectrum, a stabilizing one finiteness
ThresholdReport growth_scan(const ModelSpec& model, const std::vector<int>& grids,
                            double count_margin = 1e-6);

}  // namespace fockspec
