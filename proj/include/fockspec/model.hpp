// model.hpp - operator data (w0, w1, v0, v1, w2), built-in families, band extrema
#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fockspec/grid.hpp"

namespace fockspec {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

// Data of the 3x3 block operator: vacuum level w0, one-particle potential w1,
// couplings v0 (vacuum<->one) and v1 (one<->two), two-particle potential w2.
// w2 must be symmetric and even; v's real.
struct ModelSpec {
  double w0 = 0.0;
  Fn1 w1, v0, v1;
  Fn2 w2;
  std::string family;                        // tag for reports ("custom" if hand-built)
  std::map<std::string, double> params;      // numeric parameters as given
  std::map<std::string, std::string> fnames; // named profile choices, if any
};

// dispersion e(x) = 1 - cos x
double epsilon1(double x);

// ---------- built-in families ----------

// constant coefficients, rank-one kernel band: w1 = a, v1 = b, w2 = 1 - cos(x-y)
ModelSpec model_section6(double a, double b, double w0 = 0.0);
// v1 = sqrt(mu) sin x, w1 = 1 + sin^2 x, w2 = e(x) + l e(x+y) + e(y), l in (0, infty)
ModelSpec model_case1(double l, double mu);
// v1 = sqrt(mu)(1 - cos x), w1 = 2 - cos x, w2 = 2 - cos x - cos y
ModelSpec model_case2(double mu);
// truncated spin-boson half: w0 = sigma*eps, w1 = -sigma*eps + w, v0 = v1 = alpha*v,
// w2 = sigma*eps + w(x) + w(y); sigma in {+1, -1}
ModelSpec model_spinboson(int sigma, double eps, double alpha,
                          const std::string& w_name = "one_minus_cos",
                          const std::string& v_name = "sin");

// named 1-d profiles usable from config files / CLI: one, sin, cos,
// one_minus_cos, one_plus_sin
Fn1 named_fn(const std::string& name);
std::vector<std::string> named_fn_list();

// build any family from a key=value parameter map (CLI / config path)
ModelSpec make_model(const std::string& family, const std::map<std::string, std::string>& kv);

// ---------- band extrema ----------

struct FiberBand {
  double m = 0.0, M = 0.0;   // min/max of w2(x, .)
  double tmin = 0.0, tmax = 0.0;  // their locations
};

struct BandExtrema {
  double m = 0.0, M = 0.0;                       // global band edges
  std::vector<FiberBand> fiber;                  // per grid node
  std::vector<std::pair<double, double>> argmin; // refined minimizer(s) (x, y)
  bool argmin_curve = false;                     // min attained along every fiber
};

// min/max of w2(x, .) over the torus: grid scan (at least 64 points) plus
// golden-section refinement to refine_tol in the angle
FiberBand fiber_band(const ModelSpec& model, const TorusGrid& g, double x,
                     double refine_tol = 1e-12);

BandExtrema band_extrema(const ModelSpec& model, const TorusGrid& g,
                         double refine_tol = 1e-12);

// order of the zero of f at 0 from log2 slopes on x = 2^-j, j = 4..20;
// 0 when |f(0)| > tol.  Throws NumericError when the slope is not within 0.1
// of an integer.
int vanishing_order(const Fn1& f, double tol = 1e-9);

// ---------- small search helpers (shared by several modules) ----------
namespace detail {
// golden-section minimum of f on [a, b] to x-tolerance xtol
std::pair<double, double> golden_min(const std::function<double(double)>& f,
                                     double a, double b, double xtol,
                                     int max_iter = 200);
}  // namespace detail

}  // namespace fockspec
