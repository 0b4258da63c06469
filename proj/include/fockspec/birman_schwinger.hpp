// birman_schwinger.hpp - discrete Birman-Schwinger operator and eigenvalue counting
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fockspec/friedrichs.hpp"
#include "fockspec/model.hpp"

namespace fockspec {

// Birman-Schwinger matrix T(z) on vacuum + one-particle coordinates.  With the
// plain midpoint Schur complements Delta_j(z) = w1(x_j) - z
// - (h/2) sum_t v1(x_t)^2 / (w2(x_j, x_t) - z), all positive, the count of
// eigenvalues of the discrete operator below z equals the number of
// eigenvalues of T(z) strictly above 1; the identity is exact at every grid
// size, not an approximation.  Requires z below every w2 grid value and every
// Delta_j(z) > 0.
Eigen::MatrixXd assemble_T(const ModelSpec& model, const TorusGrid& g, double z);

struct BSCount {
  double z = 0.0;
  int count = 0;                        // eigenvalues of T(z) strictly above 1
  std::vector<double> borderline;      // eigenvalues within eig_tol of 1
  std::vector<double> top_eigenvalues; // largest eigenvalues, descending
};

BSCount bs_count(const ModelSpec& model, const TorusGrid& g, double z,
                 const Tolerances& tol = {});

}  // namespace fockspec
