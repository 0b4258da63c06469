// direct_oracle.hpp - dense truncated Fock-space discretization (ground truth)
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fockspec/model.hpp"

namespace fockspec {

// Basis of the discretized truncated Fock space: vacuum, one particle on a
// grid node, and unordered node pairs (i <= j) for the symmetric two-particle
// sector.  dim = 1 + n + n(n+1)/2.
struct FockGridBasis {
  int n = 0;
  int dim = 0;

  explicit FockGridBasis(int n_points);

  int vac() const { return 0; }
  int one(int i) const { return 1 + i; }
  int pair(int i, int j) const;  // i <= j
};

// Dense symmetric matrix of the operator in weight-scaled coordinates
// (f0, sqrt(h) f1(x_j), h f2(x_j,x_j), sqrt(2) h f2(x_j,x_k)), which turn the
// quadrature inner products into the plain Euclidean one.  Couplings:
// vacuum <-> one(j):      sqrt(h) v0(x_j)
// one(i) <-> pair(i,i):   sqrt(h) v1(x_i)
// one(i) <-> pair{i,t}:   sqrt(h) v1(x_t) / sqrt(2),  t != i
Eigen::MatrixXd assemble_H(const ModelSpec& model, const TorusGrid& g);

// eigenvalues strictly below z, ascending (full decomposition)
std::vector<double> eigs_below(const Eigen::MatrixXd& H, double z);

// number of eigenvalues strictly below z via matrix inertia (no spectrum)
int count_below(const Eigen::MatrixXd& H, double z);

// relative residual |H v - lambda v| / |v|
double eig_residual(const Eigen::MatrixXd& H, double lambda, const Eigen::VectorXd& v);

// pack a function triple into the weight-scaled basis coordinates
Eigen::VectorXd embed_state(const FockGridBasis& b, const TorusGrid& g, double f0,
                            const Fn1& f1, const Fn2& f2);

}  // namespace fockspec
