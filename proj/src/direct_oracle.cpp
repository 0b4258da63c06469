// direct_oracle.cpp - dense Fock-grid matrix, exact counts and spectra
#include "fockspec/direct_oracle.hpp"

#include <cmath>

#include "fockspec/eig.hpp"
#include "fockspec/errors.hpp"

namespace fockspec {

FockGridBasis::FockGridBasis(int n_points) : n(n_points) {
  if (n < 2) throw DomainError("FockGridBasis: need at least two grid points");
  dim = 1 + n + n * (n + 1) / 2;
  if (dim > 20000)
    throw ResourceError("FockGridBasis: dimension " + std::to_string(dim) +
                        " exceeds the dense-solver budget (20000)");
}

int FockGridBasis::pair(int i, int j) const {
  if (i > j || i < 0 || j >= n) throw DomainError("FockGridBasis::pair: need 0 <= i <= j < n");
  return 1 + n + i * n - i * (i - 1) / 2 + (j - i);
}

Eigen::MatrixXd assemble_H(const ModelSpec& model, const TorusGrid& g) {
  const FockGridBasis b(g.n);
  const int n = g.n;
  const double sh = std::sqrt(g.h);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(b.dim, b.dim);
  H(b.vac(), b.vac()) = model.w0;
  for (int j = 0; j < n; ++j) {
    const double c = sh * (model.v0 ? model.v0(g.nodes[j]) : 0.0);
    H(b.vac(), b.one(j)) = c;
    H(b.one(j), b.vac()) = c;
    H(b.one(j), b.one(j)) = model.w1(g.nodes[j]);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const int p = b.pair(i, j);
      H(p, p) = model.w2(g.nodes[i], g.nodes[j]);
      if (i == j) {
        const double c = sh * model.v1(g.nodes[i]);
        H(b.one(i), p) = c;
        H(p, b.one(i)) = c;
      } else {
        const double ci = sh * model.v1(g.nodes[j]) * inv_sqrt2;  // partner at x_j
        H(b.one(i), p) = ci;
        H(p, b.one(i)) = ci;
        const double cj = sh * model.v1(g.nodes[i]) * inv_sqrt2;
        H(b.one(j), p) = cj;
        H(p, b.one(j)) = cj;
      }
    }
  }
  return H;
}

std::vector<double> eigs_below(const Eigen::MatrixXd& H, double z) {
  const Eigen::VectorXd ev = symmetric_eigenvalues(H);
  std::vector<double> out;
  for (int k = 0; k < ev.size() && ev[k] < z; ++k) out.push_back(ev[k]);
  return out;
}

int count_below(const Eigen::MatrixXd& H, double z) {
  return inertia_count_below(H, z);
}

double eig_residual(const Eigen::MatrixXd& H, double lambda, const Eigen::VectorXd& v) {
  const double nv = v.norm();
  if (nv <= 0.0) throw DomainError("eig_residual: zero vector");
  return (H * v - lambda * v).norm() / nv;
}

Eigen::VectorXd embed_state(const FockGridBasis& b, const TorusGrid& g, double f0,
                            const Fn1& f1, const Fn2& f2) {
  if (b.n != g.n) throw DomainError("embed_state: basis and grid sizes differ");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(b.dim);
  v[b.vac()] = f0;
  const double sh = std::sqrt(g.h);
  if (f1)
    for (int j = 0; j < g.n; ++j) v[b.one(j)] = sh * f1(g.nodes[j]);
  if (f2) {
    const double s2h = std::sqrt(2.0) * g.h;
    for (int i = 0; i < g.n; ++i) {
      v[b.pair(i, i)] = g.h * f2(g.nodes[i], g.nodes[i]);
      for (int j = i + 1; j < g.n; ++j)
        v[b.pair(i, j)] = s2h * f2(g.nodes[i], g.nodes[j]);
    }
  }
  return v;
}

}  // namespace fockspec
