// exact_model.cpp - closed forms and branch solves for the constant-coefficient model
#include "fockspec/exact_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fockspec/errors.hpp"

namespace fockspec {

namespace {


void require_off_band(double z) {
  if (z >= 0.0 && z <= 2.0)
    throw DomainError("z must lie outside the band [0, 2]");
}

double sqrt_s(double z) { return std::sqrt(z * z - 2.0 * z); }

// r ratio of the geometric d_k sequence; |r| < 1 off the band
double r_of(double z) {
  double s = sqrt_s(z);
  return z < 0.0 ? 1.0 - z - s : 1.0 - z + s;
}

struct Bisection {
  double x = 0.0;
  double residual = 0.0;
};

// root of g on [a, b] given g(a), g(b) of opposite sign
template <class G>
Bisection bisect(G&& g, double a, double b, double ga) {
  bool neg_at_a = ga < 0.0;
  double mid = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (a + b);
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(mid)))
      break;
    double gm = g(mid);
    if ((gm < 0.0) == neg_at_a)
      a = mid;
    else
      b = mid;
  }
  return {mid, std::abs(g(mid))};
}

}  // namespace

ModelSpec to_model(const ExactParams& p) { return model_section6(p.a, p.b, p.w0); }

double delta_closed(const ExactParams& p, double z) {
  require_off_band(z);
  double s = sqrt_s(z);
  double corr = kPi * p.b * p.b / s;
  return z < 0.0 ? p.a - z - corr : p.a - z + corr;
}

double dk_closed(int k, double z) {
  require_off_band(z);
  k = std::abs(k);
  double s = sqrt_s(z);
  double base = 2.0 * kPi / s;
  double r = r_of(z);
  return z < 0.0 ? base * std::pow(r, k) : -base * std::pow(r, k);
}

std::array<double, 2> band_edges(const ExactParams& p) {
  auto dlt = [&](double z) { return delta_closed(p, z); };
  double reach = std::abs(p.a) + kPi * p.b * p.b + 2.0;

  double lo = -reach;
  for (int it = 0; it < 200 && dlt(lo) <= 0.0; ++it) lo *= 2.0;
  if (dlt(lo) <= 0.0) throw NumericError("no sign change below the band");
  double hi = -1e-15;
  if (dlt(hi) >= 0.0) throw NumericError("Delta does not diverge at the lower band edge");
  double e_min = bisect(dlt, lo, hi, dlt(lo)).x;

  double lo2 = 2.0 + 1e-15;
  if (dlt(lo2) <= 0.0) throw NumericError("Delta does not diverge at the upper band edge");
  double hi2 = 2.0 + reach;
  for (int it = 0; it < 200 && dlt(hi2) >= 0.0; ++it) hi2 = 2.0 + 2.0 * (hi2 - 2.0);
  if (dlt(hi2) >= 0.0) throw NumericError("no sign change above the band");
  double e_max = bisect(dlt, lo2, hi2, dlt(lo2)).x;

  return {e_min, e_max};
}

double lambda_k(const ExactParams& p, int k, double z) {
  require_off_band(z);
  k = std::abs(k);
  double s = sqrt_s(z);
  return kPi * p.b * p.b * std::pow(r_of(z), k) / (delta_closed(p, z) * s);
}

std::optional<ExactEigenvalue> solve_branch(const ExactParams& p, int k, int branch) {
  if (k < 0) throw DomainError("mode index k must be nonnegative");
  if (branch < 1 || branch > 3) throw DomainError("branch must be 1, 2, or 3");
  auto edges = band_edges(p);
  double e_min = edges[0], e_max = edges[1];
  auto g = [&](double z) { return lambda_k(p, k, z) - 1.0; };
  double reach = 2.0 * (std::abs(p.a) + p.b * p.b + 1.0);

  double lo = 0.0, hi = 0.0;
  if (branch == 1) {
    // the equation blows up at E_min-, so walk a delta ladder toward the edge
    double near = std::numeric_limits<double>::quiet_NaN();
    for (double d = 1e-6; d >= 0.5e-13; d *= 0.1) {
      if (g(e_min - d) > 0.0) { near = e_min - d; break; }
    }
    if (!std::isfinite(near)) return std::nullopt;
    lo = e_min - reach;
    for (int it = 0; it < 60 && g(lo) >= 0.0; ++it) lo = e_min - 2.0 * (e_min - lo);
    if (g(lo) >= 0.0) return std::nullopt;
    hi = near;
  } else if (branch == 2) {
    double near = std::numeric_limits<double>::quiet_NaN();
    for (double d = 1e-6; d >= 0.5e-13; d *= 0.1) {
      if (g(e_max + d) > 0.0) { near = e_max + d; break; }
    }
    if (!std::isfinite(near)) return std::nullopt;
    hi = e_max + reach;
    for (int it = 0; it < 60 && g(hi) >= 0.0; ++it) hi = e_max + 2.0 * (hi - e_max);
    if (g(hi) >= 0.0) return std::nullopt;
    lo = near;
  } else {
    // scan ((E_max + 2) / 2, E_max) for the leftmost sign change
    double a = 0.5 * (e_max + 2.0), b = e_max;
    std::vector<double> zs;
    for (int i = 1; i <= 256; ++i) zs.push_back(a + (b - a) * i / 257.0);
    for (double d = 1e-6; d >= 0.5e-13; d *= 0.1) zs.push_back(e_max - d);
    std::sort(zs.begin(), zs.end());
    bool found = false;
    double prev_z = zs.front(), prev_g = g(prev_z);
    for (std::size_t i = 1; i < zs.size(); ++i) {
      double gz = g(zs[i]);
      if (std::isfinite(prev_g) && std::isfinite(gz) && (prev_g < 0.0) != (gz < 0.0)) {
        lo = prev_z;
        hi = zs[i];
        found = true;
        break;
      }
      prev_z = zs[i];
      prev_g = gz;
    }
    if (!found) return std::nullopt;
  }

  auto root = bisect(g, lo, hi, g(lo));
  ExactEigenvalue ev;
  ev.branch = branch;
  ev.k = k;
  ev.xi = root.x;
  ev.multiplicity = (k == 0) ? 1 : 2;
  ev.equation_residual = root.residual;
  return ev;
}

double d_product(const ExactParams& p, double z, double trunc_tol) {
  require_off_band(z);
  double prod = 1.0 - lambda_k(p, 0, z);
  for (int k = 1; k <= 200000; ++k) {
    double lam = lambda_k(p, k, z);
    if (std::abs(lam) < trunc_tol) break;
    double f = 1.0 - lam;
    prod *= f * f;
  }
  return prod;
}

std::pair<Fn1, Fn2> exact_eigenvector(const ExactParams& p, int k, double xi, bool sine) {
  if (k == 0 && sine) throw DomainError("sine partner absent for k = 0");
  double kk = static_cast<double>(k);
  Fn1 f1 = sine ? Fn1([kk](double x) { return std::sin(kk * x); })
                : Fn1([kk](double x) { return std::cos(kk * x); });
  double b = p.b;
  Fn2 f2 = [f1, b, xi](double x, double y) {
    return -b * (f1(x) + f1(y)) / (2.0 * (epsilon1(x - y) - xi));
  };
  return {std::move(f1), std::move(f2)};
}

}  // namespace fockspec
