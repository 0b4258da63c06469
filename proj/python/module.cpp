// module.cpp - python bindings for the spectral toolkit
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fockspec/birman_schwinger.hpp"
#include "fockspec/direct_oracle.hpp"
#include "fockspec/errors.hpp"
#include "fockspec/exact_model.hpp"
#include "fockspec/friedrichs.hpp"
#include "fockspec/grid.hpp"
#include "fockspec/model.hpp"
#include "fockspec/spin_boson.hpp"
#include "fockspec/threshold.hpp"

namespace py = pybind11;
using namespace fockspec;

namespace {

Tolerances tol_from_dict(const std::map<std::string, double>& kv) {
  Tolerances t;
  for (const auto& [k, v] : kv) {
    if (k == "root_tol") t.root_tol = v;
    else if (k == "sign_tol") t.sign_tol = v;
    else if (k == "v_tol") t.v_tol = v;
    else if (k == "adaptive_tol") t.adaptive_tol = v;
    else if (k == "quad_rel_tol") t.quad_rel_tol = v;
    else if (k == "refine_tol") t.refine_tol = v;
    else if (k == "eig_tol") t.eig_tol = v;
    else if (k == "count_margin") t.count_margin = v;
    else throw DomainError("unknown tolerance key '" + k + "'");
  }
  return t;
}

py::dict ess_to_dict(const EssentialSpectrumReport& r) {
  py::dict d;
  py::list iv;
  for (const auto& ab : r.sigma_intervals) iv.append(py::make_tuple(ab[0], ab[1]));
  d["sigma_intervals"] = iv;
  d["band"] = py::make_tuple(r.m, r.M);
  d["e_min"] = r.e_min;
  d["e_max"] = r.e_max;
  d["classification"] = std::string(to_string(r.classification));
  if (r.min_delta_at_m)
    d["min_delta_at_m"] = *r.min_delta_at_m;
  else
    d["min_delta_at_m"] = py::none();
  d["grid_n"] = r.grid_n;
  return d;
}

py::dict a2_to_dict(const A2Report& r) {
  py::dict d;
  d["alpha"] = r.alpha;
  if (r.alpha0_value)
    d["alpha0"] = *r.alpha0_value;
  else
    d["alpha0"] = py::none();
  d["e_min_plus"] = r.e_min_plus;
  d["e_min_minus"] = r.e_min_minus;
  d["e_min"] = r.e_min;
  d["classification_plus"] = std::string(to_string(r.class_plus));
  d["classification_minus"] = std::string(to_string(r.class_minus));
  py::list iv;
  for (const auto& ab : r.ess_intervals) iv.append(py::make_tuple(ab[0], ab[1]));
  d["ess_intervals"] = iv;
  auto counts = [](const std::vector<std::pair<double, int>>& cs) {
    py::list out;
    for (const auto& [z, c] : cs) out.append(py::make_tuple(z, c));
    return out;
  };
  d["counts_plus"] = counts(r.counts_plus);
  d["counts_minus"] = counts(r.counts_minus);
  d["flags"] = r.flags;
  return d;
}

}  // namespace

PYBIND11_MODULE(_fockspec, m) {
  m.doc() = "spectral analysis of tridiagonal block operator matrices on the torus";

  py::register_exception<ConfigError>(m, "FockspecConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "FockspecDomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "FockspecResourceError", PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "FockspecNumericError", PyExc_RuntimeError);

  py::class_<ModelSpec>(m, "Model")
      .def_readonly("family", &ModelSpec::family)
      .def_readonly("params", &ModelSpec::params)
      .def("w1", [](const ModelSpec& s, double x) { return s.w1(x); })
      .def("v0", [](const ModelSpec& s, double x) { return s.v0 ? s.v0(x) : 0.0; })
      .def("v1", [](const ModelSpec& s, double x) { return s.v1(x); })
      .def("w2", [](const ModelSpec& s, double x, double y) { return s.w2(x, y); });

  m.def("make_model", &make_model, py::arg("family"), py::arg("params"),
        "built-in model family from key=value parameters");
  m.def(
      "custom_model",
      [](double w0, Fn1 w1, Fn1 v0, Fn1 v1, Fn2 w2) {
        ModelSpec s;
        s.w0 = w0;
        s.w1 = std::move(w1);
        s.v0 = std::move(v0);
        s.v1 = std::move(v1);
        s.w2 = std::move(w2);
        s.family = "custom";
        return s;
      },
      py::arg("w0"), py::arg("w1"), py::arg("v0"), py::arg("v1"), py::arg("w2"),
      "model from python callables (w2 must be symmetric and even)");

  m.def(
      "essential_spectrum",
      [](const ModelSpec& model, int n, const std::map<std::string, double>& tol) {
        DeltaEvaluator ev(model, make_grid(n), tol_from_dict(tol));
        return ess_to_dict(essential_spectrum(ev));
      },
      py::arg("model"), py::arg("n") = 64,
      py::arg("tol") = std::map<std::string, double>{});

  m.def(
      "delta",
      [](const ModelSpec& model, int n, double x, double z) {
        DeltaEvaluator ev(model, make_grid(n));
        return ev(x, z);
      },
      py::arg("model"), py::arg("n"), py::arg("x"), py::arg("z"),
      "fiber determinant Delta(x; z)");

  m.def(
      "bs_count",
      [](const ModelSpec& model, int n, double z) {
        BSCount c = bs_count(model, make_grid(n), z);
        py::dict d;
        d["z"] = c.z;
        d["count"] = c.count;
        d["borderline"] = c.borderline;
        d["top_eigenvalues"] = c.top_eigenvalues;
        return d;
      },
      py::arg("model"), py::arg("n"), py::arg("z"),
      "eigenvalues below z counted through the kernel test");

  m.def(
      "oracle_eigs_below",
      [](const ModelSpec& model, int n, double z) {
        TorusGrid g = make_grid(n);
        return eigs_below(assemble_H(model, g), z);
      },
      py::arg("model"), py::arg("n"), py::arg("z"));
  m.def(
      "oracle_count_below",
      [](const ModelSpec& model, int n, double z) {
        TorusGrid g = make_grid(n);
        return count_below(assemble_H(model, g), z);
      },
      py::arg("model"), py::arg("n"), py::arg("z"));

  m.def(
      "perturbation_determinant",
      [](const ModelSpec& model, int n, double x, double z) {
        DeltaEvaluator ev(model, make_grid(n));
        return perturbation_determinant(ev, x, z);
      },
      py::arg("model"), py::arg("n"), py::arg("x"), py::arg("z"));

  // constant-coefficient closed forms
  m.def(
      "band_edges",
      [](double a, double b, double w0) {
        ExactParams p{a, b, w0};
        auto e = band_edges(p);
        return py::make_tuple(e[0], e[1]);
      },
      py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("w0") = 0.0);
  m.def(
      "delta_closed",
      [](double a, double b, double w0, double z) {
        return delta_closed(ExactParams{a, b, w0}, z);
      },
      py::arg("a"), py::arg("b"), py::arg("w0"), py::arg("z"));
  m.def("dk_closed", &dk_closed, py::arg("k"), py::arg("z"));
  m.def(
      "lambda_k",
      [](double a, double b, double w0, int k, double z) {
        return lambda_k(ExactParams{a, b, w0}, k, z);
      },
      py::arg("a"), py::arg("b"), py::arg("w0"), py::arg("k"), py::arg("z"));
  m.def(
      "solve_branch",
      [](double a, double b, double w0, int k, int branch) -> py::object {
        auto ev = solve_branch(ExactParams{a, b, w0}, k, branch);
        if (!ev) return py::none();
        py::dict d;
        d["branch"] = ev->branch;
        d["k"] = ev->k;
        d["xi"] = ev->xi;
        d["multiplicity"] = ev->multiplicity;
        d["equation_residual"] = ev->equation_residual;
        return d;
      },
      py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("w0") = 0.0, py::arg("k") = 0,
      py::arg("branch") = 1);
  m.def(
      "d_product",
      [](double a, double b, double w0, double z, double trunc_tol) {
        return d_product(ExactParams{a, b, w0}, z, trunc_tol);
      },
      py::arg("a"), py::arg("b"), py::arg("w0"), py::arg("z"),
      py::arg("trunc_tol") = 1e-14);

  // boundary-case toolkit
  m.def(
      "mu_critical",
      [](int case_id, py::object l) -> double {
        if (l.is_none()) return mu_critical(case_id);
        return mu_critical(case_id, l.cast<double>());
      },
      py::arg("case_id"), py::arg("l") = py::none());
  m.def("lambda_limit", &lambda_limit, py::arg("l"));
  m.def(
      "lambda_k_S",
      [](double l, double mu, double delta_cut, int k, double z) {
        return lambda_k_S(CaseIParams{l, mu, delta_cut}, k, z);
      },
      py::arg("l"), py::arg("mu"), py::arg("delta_cut"), py::arg("k"), py::arg("z"));
  m.def(
      "growth_scan",
      [](const ModelSpec& model, const std::vector<int>& grids, double margin) {
        py::list out;
        for (const auto& row : growth_scan(model, grids, margin).rows) {
          py::dict d;
          d["n"] = row.n;
          d["dim"] = row.dim;
          d["count"] = row.count;
          d["min_eig"] = row.min_eig;
          out.append(d);
        }
        return out;
      },
      py::arg("model"), py::arg("grids"), py::arg("count_margin") = 1e-6);

  // doubled two-level application
  m.def(
      "alpha0",
      [](double eps, double alpha, const std::string& w, const std::string& v)
          -> py::object {
        auto a0 = alpha0(SpinBosonParams{eps, alpha, w, v});
        if (!a0) return py::none();
        return py::float_(*a0);
      },
      py::arg("eps") = 1.0, py::arg("alpha") = 1.0,
      py::arg("w") = "one_minus_cos", py::arg("v") = "sin");
  m.def(
      "a2_report",
      [](double eps, double alpha, const std::string& w, const std::string& v, int n) {
        return a2_to_dict(
            a2_spectrum_report(SpinBosonParams{eps, alpha, w, v}, make_grid(n)));
      },
      py::arg("eps") = 1.0, py::arg("alpha") = 1.0,
      py::arg("w") = "one_minus_cos", py::arg("v") = "sin", py::arg("n") = 32);
  m.def(
      "phi_check",
      [](double eps, double alpha, const std::string& w, const std::string& v, int n) {
        return phi_decomposition_check(SpinBosonParams{eps, alpha, w, v}, make_grid(n));
      },
      py::arg("eps") = 1.0, py::arg("alpha") = 1.0,
      py::arg("w") = "one_minus_cos", py::arg("v") = "sin", py::arg("n") = 8);
}
