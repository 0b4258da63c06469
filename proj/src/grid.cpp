// grid.cpp - torus midpoint grid and plain plus adaptive quadrature
#include "fockspec/grid.hpp"

#include <cmath>
#include <string>

#include "fockspec/errors.hpp"

namespace fockspec {

TorusGrid make_grid(int n) {
  if (n < 2 || n % 2 != 0)
    throw DomainError("make_grid: n must be even and >= 2, got " + std::to_string(n));
  TorusGrid g;
  g.n = n;
  g.h = kTwoPi / n;
  g.nodes.resize(n);
  for (int j = 0; j < n; ++j) g.nodes[j] = -kPi + (j + 0.5) * g.h;
  return g;
}

double wrap_angle(double x) {
  double y = std::fmod(x + kPi, kTwoPi);
  if (y < 0) y += kTwoPi;
  return y - kPi;
}

double quad(const TorusGrid& g, const std::function<double(double)>& f) {
  double s = 0.0;
  for (int j = 0; j < g.n; ++j) {
    const double v = f(g.nodes[j]);
    if (!std::isfinite(v))
      throw NumericError("quad: non-finite integrand at x = " + std::to_string(g.nodes[j]));
    s += v;
  }
  return g.h * s;
}

namespace {

// midpoint sum on n equispaced cells; also reports the L1 size of f
double midpoint_sum(const std::function<double(double)>& f, int n, double* l1) {
  const double h = kTwoPi / n;
  double s = 0.0;
  double a = 0.0;
  for (int j = 0; j < n; ++j) {
    const double x = -kPi + (j + 0.5) * h;
    const double v = f(x);
    if (!std::isfinite(v))
      throw NumericError("quad_refined: non-finite integrand at x = " + std::to_string(x));
    s += v;
    a += std::abs(v);
  }
  *l1 = h * a;
  return h * s;
}

}  // namespace

double quad_refined(const TorusGrid& g, const std::function<double(double)>& f,
                    double rel_tol, int max_depth) {
  // dyadically double the midpoint grid until two successive estimates agree;
  // the midpoint rule is spectrally accurate for periodic integrands, so a few
  // doublings suffice once any near-band peak is resolved
  constexpr int kMaxNodes = 1 << 18;
  int n = g.n;
  double scale = 0.0;
  double prev = midpoint_sum(f, n, &scale);
  for (int d = 0; d < max_depth && n <= kMaxNodes / 2; ++d) {
    n *= 2;
    double l1 = 0.0;
    const double cur = midpoint_sum(f, n, &l1);
    scale = std::max(scale, l1);
    const bool converged = std::abs(cur - prev) <= rel_tol * scale + 1e-300;
    prev = cur;
    if (converged) break;
  }
  return prev;
}

}  // namespace fockspec
