// grid.hpp - midpoint grid on the torus [-pi, pi) and quadrature rules
#pragma once

#include <functional>
#include <vector>

namespace fockspec {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Uniform midpoint grid x_j = -pi + (j + 1/2) h, h = 2 pi / n.
// n must be even so that no node lands on 0 or +-pi, where the model
// integrands degenerate at the band edge.
struct TorusGrid {
  int n = 0;                  // node count, even, >= 2
  double h = 0.0;             // cell width = quadrature weight
  std::vector<double> nodes;  // ascending in [-pi, pi)
};

TorusGrid make_grid(int n);

// reduce an angle to [-pi, pi)
double wrap_angle(double x);

// plain midpoint rule, fixed left-to-right summation
double quad(const TorusGrid& g, const std::function<double(double)>& f);

// Midpoint rule with dyadic grid doubling: the node count doubles until two
// successive estimates agree to rel_tol times the integrand scale (or the
// doubling/node budget runs out, returning the finest estimate).  Spectrally
// accurate for periodic integrands; resolves integrable band-edge peaks
// between nodes after a few doublings.
double quad_refined(const TorusGrid& g, const std::function<double(double)>& f,
                    double rel_tol = 5e-13, int max_depth = 42);

}  // namespace fockspec
