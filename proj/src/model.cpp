// model.cpp - operator families, named functions, band extrema scans
#include "fockspec/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "fockspec/errors.hpp"

namespace fockspec {

double epsilon1(double x) {
  // 2 sin^2(x/2) equals 1 - cos x without cancellation near the minimum
  double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

namespace detail {

std::pair<double, double> golden_min(const std::function<double(double)>& f,
                                     double a, double b, double xtol, int max_iter) {
  const double gr = 0.6180339887498948482;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  double xbest = fc <= fd ? c : d, fbest = std::min(fc, fd);
  int it = 0;
  while (b - a > xtol && it++ < max_iter) {
    if (fc <= fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a); fd = f(d);
    }
    if (fc < fbest) { fbest = fc; xbest = c; }
    if (fd < fbest) { fbest = fd; xbest = d; }
  }
  return {xbest, fbest};
}

}  // namespace detail

// ---------- named profiles ----------

Fn1 named_fn(const std::string& name) {
  if (name == "one") return [](double) { return 1.0; };
  if (name == "sin") return [](double x) { return std::sin(x); };
  if (name == "cos") return [](double x) { return std::cos(x); };
  if (name == "one_minus_cos") return [](double x) { return 1.0 - std::cos(x); };
  if (name == "one_plus_sin") return [](double x) { return 1.0 + std::sin(x); };
  throw ConfigError("named_fn: unknown profile '" + name + "'");
}

std::vector<std::string> named_fn_list() {
  return {"one", "sin", "cos", "one_minus_cos", "one_plus_sin"};
}

// ---------- built-in families ----------

ModelSpec model_section6(double a, double b, double w0) {
  ModelSpec m;
  m.w0 = w0;
  m.w1 = [a](double) { return a; };
  m.v0 = [](double) { return 0.0; };
  m.v1 = [b](double) { return b; };
  m.w2 = [](double x, double y) { return 1.0 - std::cos(x - y); };
  m.family = "section6";
  m.params = {{"a", a}, {"b", b}, {"w0", w0}};
  return m;
}

ModelSpec model_case1(double l, double mu) {
  if (!(l > 0.0)) throw DomainError("case1: l must be positive");
  if (!(mu >= 0.0)) throw DomainError("case1: mu must be nonnegative");
  ModelSpec m;
  m.w0 = 0.0;
  m.w1 = [](double x) { const double s = std::sin(x); return 1.0 + s * s; };
  m.v0 = [](double) { return 0.0; };
  const double c = std::sqrt(mu);
  m.v1 = [c](double x) { return c * std::sin(x); };
  m.w2 = [l](double x, double y) {
    return epsilon1(x) + l * epsilon1(x + y) + epsilon1(y);
  };
  m.family = "case1";
  m.params = {{"l", l}, {"mu", mu}};
  return m;
}

ModelSpec model_case2(double mu) {
  if (!(mu >= 0.0)) throw DomainError("case2: mu must be nonnegative");
  ModelSpec m;
  m.w0 = 0.0;
  m.w1 = [](double x) { return 2.0 - std::cos(x); };
  m.v0 = [](double) { return 0.0; };
  const double c = std::sqrt(mu);
  m.v1 = [c](double x) { return c * (1.0 - std::cos(x)); };
  m.w2 = [](double x, double y) { return 2.0 - std::cos(x) - std::cos(y); };
  m.family = "case2";
  m.params = {{"mu", mu}};
  return m;
}

ModelSpec model_spinboson(int sigma, double eps, double alpha,
                          const std::string& w_name, const std::string& v_name) {
  if (sigma != 1 && sigma != -1) throw DomainError("spinboson: sigma must be +1 or -1");
  if (!(eps > 0.0)) throw DomainError("spinboson: eps must be positive");
  if (!(alpha >= 0.0)) throw DomainError("spinboson: alpha must be nonnegative");
  Fn1 w = named_fn(w_name), v = named_fn(v_name);
  ModelSpec m;
  m.w0 = sigma * eps;
  m.w1 = [sigma, eps, w](double x) { return -sigma * eps + w(x); };
  m.v0 = [alpha, v](double x) { return alpha * v(x); };
  m.v1 = m.v0;
  m.w2 = [sigma, eps, w](double x, double y) { return sigma * eps + w(x) + w(y); };
  m.family = "spinboson";
  m.params = {{"sigma", double(sigma)}, {"eps", eps}, {"alpha", alpha}};
  m.fnames = {{"w", w_name}, {"v", v_name}};
  return m;
}

namespace {

double parse_double(const std::string& key, const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
    throw ConfigError("parameter '" + key + "': cannot parse number from '" + s + "'");
  return v;
}

void check_keys(const std::map<std::string, std::string>& kv,
                const std::set<std::string>& allowed) {
  for (const auto& [k, _] : kv)
    if (!allowed.count(k)) throw ConfigError("unknown parameter '" + k + "'");
}

std::string get_or(const std::map<std::string, std::string>& kv,
                   const std::string& key, const std::string& dflt) {
  auto it = kv.find(key);
  return it == kv.end() ? dflt : it->second;
}

}  // namespace

ModelSpec make_model(const std::string& family,
                     const std::map<std::string, std::string>& kv) {
  if (family == "section6") {
    check_keys(kv, {"a", "b", "w0"});
    return model_section6(parse_double("a", get_or(kv, "a", "1")),
                          parse_double("b", get_or(kv, "b", "1")),
                          parse_double("w0", get_or(kv, "w0", "0")));
  }
  if (family == "case1") {
    check_keys(kv, {"l", "mu"});
    const double l = parse_double("l", get_or(kv, "l", "2"));
    const double mu0 = (1.0 + l) / kPi;
    const double mu = kv.count("mu") ? parse_double("mu", kv.at("mu")) : mu0;
    return model_case1(l, mu);
  }
  if (family == "case2") {
    check_keys(kv, {"mu"});
    const double mu = kv.count("mu") ? parse_double("mu", kv.at("mu")) : 1.0 / kPi;
    return model_case2(mu);
  }
  if (family == "spinboson") {
    check_keys(kv, {"sigma", "eps", "alpha", "w", "v"});
    const double sig = parse_double("sigma", get_or(kv, "sigma", "1"));
    if (sig != 1.0 && sig != -1.0) throw DomainError("spinboson: sigma must be +1 or -1");
    return model_spinboson(int(sig),
                           parse_double("eps", get_or(kv, "eps", "1")),
                           parse_double("alpha", get_or(kv, "alpha", "0.5")),
                           get_or(kv, "w", "one_minus_cos"),
                           get_or(kv, "v", "sin"));
  }
  throw ConfigError("unknown model family '" + family + "'");
}

// ---------- band extrema ----------

namespace {

// scan f over a midpoint grid of at least 64 points, golden-refine around the
// best cell; returns (argmin, min)
// three-point parabolic polish; golden section stalls on the roundoff
// plateau around a smooth minimum, the parabola vertex does not
double polish_min(const std::function<double(double)>& f, double c) {
  for (double d : {1e-3, 3e-5, 3e-6}) {
    const double fm = f(c - d), f0 = f(c), fp = f(c + d);
    const double den = fm - 2.0 * f0 + fp;
    if (!(den > 0.0)) continue;
    double step = 0.5 * (fm - fp) * d / den;
    if (std::abs(step) > d) step = std::copysign(d, step);
    const double cand = c + step;
    if (f(cand) <= f0) c = cand;
  }
  return c;
}

std::pair<double, double> periodic_min(const std::function<double(double)>& f,
                                       int n_hint, double xtol) {
  const int n = std::max(n_hint, 64);
  const double h = kTwoPi / n;
  int jbest = 0;
  double fbest = f(-kPi + 0.5 * h);
  for (int j = 1; j < n; ++j) {
    const double v = f(-kPi + (j + 0.5) * h);
    if (v < fbest) { fbest = v; jbest = j; }
  }
  const double c = -kPi + (jbest + 0.5) * h;
  auto [x, fx] = detail::golden_min(f, c - h, c + h, xtol);
  const double xp = polish_min(f, x);
  const double fp = f(xp);
  if (fp <= fx) { x = xp; fx = fp; }
  if (fbest < fx) return {c, fbest};
  return {x, fx};
}

}  // namespace

FiberBand fiber_band(const ModelSpec& model, const TorusGrid& g, double x,
                     double refine_tol) {
  FiberBand fb;
  auto fmin = [&](double t) { return model.w2(x, t); };
  auto fmax = [&](double t) { return -model.w2(x, t); };
  std::tie(fb.tmin, fb.m) = periodic_min(fmin, g.n, refine_tol);
  auto [tmax, negM] = periodic_min(fmax, g.n, refine_tol);
  fb.tmax = tmax;
  fb.M = -negM;
  return fb;
}

BandExtrema band_extrema(const ModelSpec& model, const TorusGrid& g, double refine_tol) {
  BandExtrema be;
  be.fiber.resize(g.n);
  int jmin = 0, jmax = 0;
  for (int j = 0; j < g.n; ++j) {
    be.fiber[j] = fiber_band(model, g, g.nodes[j], refine_tol);
    if (be.fiber[j].m < be.fiber[jmin].m) jmin = j;
    if (be.fiber[j].M > be.fiber[jmax].M) jmax = j;
  }
  auto fiber_min = [&](double x) { return fiber_band(model, g, x, refine_tol).m; };
  auto fiber_max = [&](double x) { return -fiber_band(model, g, x, refine_tol).M; };
  auto [xmin, m] = detail::golden_min(fiber_min, g.nodes[jmin] - g.h,
                                      g.nodes[jmin] + g.h, refine_tol);
  auto [xmax, negM] = detail::golden_min(fiber_max, g.nodes[jmax] - g.h,
                                         g.nodes[jmax] + g.h, refine_tol);
  be.m = std::min(m, be.fiber[jmin].m);
  be.M = std::max(-negM, be.fiber[jmax].M);

  const double curve_tol = 1e-8 * (1.0 + std::abs(be.m));
  int hits = 0;
  for (int j = 0; j < g.n; ++j)
    if (be.fiber[j].m <= be.m + curve_tol) ++hits;
  be.argmin_curve = (hits == g.n);
  if (be.argmin_curve) {
    for (int j = 0; j < g.n; ++j)
      be.argmin.emplace_back(g.nodes[j], be.fiber[j].tmin);
  } else {
    be.argmin.emplace_back(wrap_angle(xmin),
                           fiber_band(model, g, xmin, refine_tol).tmin);
  }
  return be;
}

int vanishing_order(const Fn1& f, double tol) {
  if (std::abs(f(0.0)) > tol) return 0;
  std::vector<double> v;
  for (int j = 4; j <= 20; ++j) v.push_back(std::abs(f(std::ldexp(1.0, -j))));
  std::vector<double> slopes;
  for (size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] < 1e-290 || v[i + 1] < 1e-290) continue;
    slopes.push_back(std::log2(v[i] / v[i + 1]));
  }
  if (slopes.size() < 4)
    throw NumericError("vanishing_order: function is numerically zero on the probe ladder");
  std::sort(slopes.begin(), slopes.end());
  const double med = slopes[slopes.size() / 2];
  const double rounded = std::round(med);
  if (std::abs(med - rounded) > 0.1)
    throw NumericError("vanishing_order: slope " + std::to_string(med) +
                       " is not within 0.1 of an integer");
  if (rounded < 0.0)
    throw NumericError("vanishing_order: negative slope estimate");
  return int(rounded);
}

}  // namespace fockspec
