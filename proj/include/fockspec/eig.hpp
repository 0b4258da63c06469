// eig.hpp - dense symmetric eigenvalue backend (LAPACK-accelerated when available)
#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace fockspec {

// ascending eigenvalues, values only
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& A);

// ascending eigenvalues with eigenvectors in columns
void symmetric_eigensystem(const Eigen::MatrixXd& A, Eigen::VectorXd& evals,
                           Eigen::MatrixXd& evecs);

// number of eigenvalues strictly below tau via Bunch-Kaufman inertia;
// exact up to factorization roundoff, much cheaper than a full decomposition
int inertia_count_below(const Eigen::MatrixXd& A, double tau);

// smallest eigenvalue via Lanczos with full reorthogonalization and a fixed
// deterministic start vector; diagnostic-grade (extremal values converge fast)
double min_eig_estimate(const Eigen::MatrixXd& A, int iters = 160);

// group ascending values into clusters: a gap > rel_tol * (1 + |v|) splits;
// returns (cluster mean, multiplicity)
std::vector<std::pair<double, int>> cluster_eigenvalues(const std::vector<double>& vals,
                                                        double rel_tol = 1e-7);

}  // namespace fockspec
