// exact_model.hpp - constant-coefficient model with closed-form spectral data
#pragma once

#include <array>
#include <optional>
#include <utility>

#include "fockspec/model.hpp"

namespace fockspec {

// w1 = a, v1 = b, v0 = 0, w2 = 1 - cos(x - y), vacuum level w0
struct ExactParams {
  double a = 1.0;
  double b = 1.0;
  double w0 = 0.0;
};

ModelSpec to_model(const ExactParams& p);

// Delta(z) = a - z -+ pi b^2 / sqrt(z^2 - 2z)  (- below the band, + above)
double delta_closed(const ExactParams& p, double z);

// d_k(z) = int cos(kt) / (1 - cos t - z) dt in closed form.  For z > 2 the
// value is -2 pi r^k / sqrt(z^2 - 2z) with r = 1 - z + sqrt(z^2 - 2z); the
// leading sign follows from the derivation and matches direct quadrature.
double dk_closed(int k, double z);

// roots of Delta below 0 and above 2: {E_min, E_max}
std::array<double, 2> band_edges(const ExactParams& p);

// left side of the rational eigenvalue equation,
// pi b^2 r^k / (Delta(z) sqrt(z^2 - 2z)), with r = 1 - z - sqrt(z^2 - 2z)
// below the band and 1 - z + sqrt(z^2 - 2z) above.  Below the band this is
// the k-th eigenvalue of the integral operator; above it differs from
// b^2 d_k / (2 Delta) by sign (see dk_closed), which is why whole parity
// classes of the equation have no solution there.
double lambda_k(const ExactParams& p, int k, double z);

struct ExactEigenvalue {
  int branch = 1;            // 1: below E_min, 2: above E_max, 3: in (2, E_max)
  int k = 0;                 // angular mode index
  double xi = 0.0;
  int multiplicity = 1;      // 1 for k = 0, else 2 (modes +-k coincide)
  double equation_residual = 0.0;  // |lambda_k(xi) - 1|
};

// Root of lambda_k(z) = 1 on the branch interval: (-inf, E_min) for branch 1,
// (E_max, inf) for branch 2, ((E_max+2)/2, E_max) for branch 3.  Absent when
// the equation has no sign change there; entire parity classes are absent on
// branches 2 and 3.
std::optional<ExactEigenvalue> solve_branch(const ExactParams& p, int k, int branch);

// Fredholm determinant D(z) = (1 - lambda_0) prod_{k>=1} (1 - lambda_k)^2 for
// z below the band; factors are truncated once |lambda_k| < trunc_tol
double d_product(const ExactParams& p, double z, double trunc_tol = 1e-14);

// eigenvector of the mode-k eigenvalue xi: f1 = cos(kx) (sin(kx) for the
// degenerate partner), f2(x,y) = -b (f1(x) + f1(y)) / (2 (eps(x-y) - xi))
std::pair<Fn1, Fn2> exact_eigenvector(const ExactParams& p, int k, double xi,
                                      bool sine = false);

}  // namespace fockspec
