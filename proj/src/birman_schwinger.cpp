// birman_schwinger.cpp - T(z) assembly and counting of eigenvalues above 1
#include "fockspec/birman_schwinger.hpp"

#include <algorithm>
#include <cmath>

#include "fockspec/eig.hpp"
#include "fockspec/errors.hpp"

namespace fockspec {

Eigen::MatrixXd assemble_T(const ModelSpec& model, const TorusGrid& g, double z) {
  const int n = g.n;
  const double h = g.h;

  std::vector<double> v0(n), v1(n), w1(n);
  for (int j = 0; j < n; ++j) {
    v0[j] = model.v0 ? model.v0(g.nodes[j]) : 0.0;
    v1[j] = model.v1(g.nodes[j]);
    w1[j] = model.w1(g.nodes[j]);
  }

  // z has to sit below the whole discrete two-particle layer
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (model.w2(g.nodes[i], g.nodes[j]) - z <= 0.0)
        throw DomainError("assemble_T: z is not below the two-particle grid values");

  std::vector<double> del(n);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int t = 0; t < n; ++t)
      s += v1[t] * v1[t] / (model.w2(g.nodes[j], g.nodes[t]) - z);
    del[j] = w1[j] - z - 0.5 * h * s;
    if (del[j] <= 0.0)
      throw DomainError("assemble_T: Delta_j(z) <= 0, z is not below the one-particle branch");
  }

  Eigen::MatrixXd T(n + 1, n + 1);
  T(0, 0) = 1.0 + z - model.w0;
  for (int j = 0; j < n; ++j) {
    const double c = -std::sqrt(h) * v0[j] / std::sqrt(del[j]);
    T(0, j + 1) = c;
    T(j + 1, 0) = c;
  }
  for (int i = 0; i < n; ++i) {
    const double si = std::sqrt(del[i]);
    for (int j = 0; j < n; ++j) {
      const double den = model.w2(g.nodes[i], g.nodes[j]) - z;
      T(i + 1, j + 1) = 0.5 * h * v1[i] * v1[j] / (si * den * std::sqrt(del[j]));
    }
  }
  return T;
}

BSCount bs_count(const ModelSpec& model, const TorusGrid& g, double z,
                 const Tolerances& tol) {
  const Eigen::MatrixXd T = assemble_T(model, g, z);
  const Eigen::VectorXd ev = symmetric_eigenvalues(T);

  BSCount out;
  out.z = z;
  for (int k = 0; k < ev.size(); ++k) {
    if (ev[k] > 1.0) ++out.count;
    if (std::abs(ev[k] - 1.0) <= tol.eig_tol) out.borderline.push_back(ev[k]);
  }
  const int keep = std::min<int>(8, static_cast<int>(ev.size()));
  for (int k = 0; k < keep; ++k)
    out.top_eigenvalues.push_back(ev[ev.size() - 1 - k]);
  return out;
}

}  // namespace fockspec
