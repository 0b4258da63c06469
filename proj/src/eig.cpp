// eig.cpp - symmetric eigensolves, inertia counts, Lanczos bound
#include "fockspec/eig.hpp"

#include <cmath>
#include <string>

#include "fockspec/errors.hpp"

#ifdef FOCKSPEC_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace fockspec {

#ifdef FOCKSPEC_HAVE_LAPACKE

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& A) {
  const lapack_int n = lapack_int(A.rows());
  Eigen::MatrixXd a = A;
  Eigen::VectorXd w(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
  if (info != 0)
    throw NumericError("symmetric_eigenvalues: dsyevd failed, info = " + std::to_string(info));
  return w;
}

void symmetric_eigensystem(const Eigen::MatrixXd& A, Eigen::VectorXd& evals,
                           Eigen::MatrixXd& evecs) {
  const lapack_int n = lapack_int(A.rows());
  evecs = A;
  evals.resize(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, evecs.data(), n, evals.data());
  if (info != 0)
    throw NumericError("symmetric_eigensystem: dsyevd failed, info = " + std::to_string(info));
}

int inertia_count_below(const Eigen::MatrixXd& A, double tau) {
  const lapack_int n = lapack_int(A.rows());
  Eigen::MatrixXd a = A;
  a.diagonal().array() -= tau;
  std::vector<lapack_int> ipiv(n);
  const lapack_int info =
      LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, a.data(), n, ipiv.data());
  if (info < 0)
    throw NumericError("inertia_count_below: dsytrf failed, info = " + std::to_string(info));
  int neg = 0;
  for (lapack_int i = 0; i < n;) {
    if (ipiv[i] > 0) {
      if (a(i, i) < 0.0) ++neg;
      ++i;
    } else {
      // 2x2 pivot block; signs from trace and determinant
      const double p = a(i, i), q = a(i + 1, i), r = a(i + 1, i + 1);
      const double det = p * r - q * q;
      if (det < 0.0) ++neg;          // one of each sign
      else if (p + r < 0.0) neg += 2;
      i += 2;
    }
  }
  return neg;
}

#else  // Eigen fallback

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericError("symmetric_eigenvalues: eigensolver did not converge");
  return es.eigenvalues();
}

void symmetric_eigensystem(const Eigen::MatrixXd& A, Eigen::VectorXd& evals,
                           Eigen::MatrixXd& evecs) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success)
    throw NumericError("symmetric_eigensystem: eigensolver did not converge");
  evals = es.eigenvalues();
  evecs = es.eigenvectors();
}

int inertia_count_below(const Eigen::MatrixXd& A, double tau) {
  const Eigen::VectorXd w = symmetric_eigenvalues(A);
  int c = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w[i] < tau) ++c;
  return c;
}

#endif

double min_eig_estimate(const Eigen::MatrixXd& A, int iters) {
  const Eigen::Index n = A.rows();
  const int m = int(std::min<Eigen::Index>(iters, n));
  Eigen::MatrixXd Q(n, m);
  Eigen::VectorXd alpha(m), beta(m);
  Eigen::VectorXd q(n);
  for (Eigen::Index j = 0; j < n; ++j) q[j] = 1.0 + 0.5 * std::cos(double(j));
  q.normalize();
  Q.col(0) = q;
  int k = 0;
  Eigen::VectorXd r;
  for (; k < m; ++k) {
    r = A * Q.col(k);
    alpha[k] = Q.col(k).dot(r);
    r -= alpha[k] * Q.col(k);
    if (k > 0) r -= beta[k - 1] * Q.col(k - 1);
    r -= Q.leftCols(k + 1) * (Q.leftCols(k + 1).transpose() * r);  // full reorth
    const double nr = r.norm();
    if (k + 1 == m || nr < 1e-13) { ++k; break; }
    beta[k] = nr;
    Q.col(k + 1) = r / nr;
  }
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    T(i, i) = alpha[i];
    if (i + 1 < k) T(i + 1, i) = T(i, i + 1) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

std::vector<std::pair<double, int>> cluster_eigenvalues(const std::vector<double>& vals,
                                                        double rel_tol) {
  std::vector<std::pair<double, int>> out;
  size_t i = 0;
  while (i < vals.size()) {
    size_t j = i + 1;
    double sum = vals[i];
    while (j < vals.size() &&
           vals[j] - vals[j - 1] <= rel_tol * (1.0 + std::abs(vals[j]))) {
      sum += vals[j];
      ++j;
    }
    out.emplace_back(sum / double(j - i), int(j - i));
    i = j;
  }
  return out;
}

}  // namespace fockspec
