// test_birman_schwinger.cpp - kernel counting against the dense discretization
#include <cmath>

#include "doctest.h"
#include "fockspec/birman_schwinger.hpp"
#include "fockspec/direct_oracle.hpp"
#include "fockspec/eig.hpp"
#include "fockspec/errors.hpp"
#include "fockspec/friedrichs.hpp"

using namespace fockspec;

TEST_SUITE("birman_schwinger") {

TEST_CASE("T(z) is symmetric with the pinned vacuum entry") {
  const ModelSpec m = model_spinboson(+1, 1.0, 0.5);
  const TorusGrid g = make_grid(16);
  const double z = -2.0;
  const Eigen::MatrixXd T = assemble_T(m, g, z);
  REQUIRE(T.rows() == 17);
  REQUIRE(T.cols() == 17);
  CHECK((T - T.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(T(0, 0) == doctest::Approx(1.0 + z - m.w0).epsilon(1e-15));
}

TEST_CASE("counting identity holds at every grid size, not asymptotically") {
  // eigenvalues of T(z) above 1 must match the dense count exactly
  const ModelSpec m = model_section6(1.0, 1.0);
  for (int n : {16, 32}) {
    const TorusGrid g = make_grid(n);
    const Eigen::MatrixXd H = assemble_H(m, g);
    for (double z : {-2.0, -1.2, -1.0, -0.95}) {
      const BSCount c = bs_count(m, g, z);
      CHECK(c.count == count_below(H, z));
    }
  }
  // frozen counts on the fine grid: the modes enter one k at a time, the
  // k >= 1 levels twice
  const TorusGrid g = make_grid(32);
  CHECK(bs_count(m, g, -2.0).count == 0);
  CHECK(bs_count(m, g, -1.2).count == 1);
  CHECK(bs_count(m, g, -1.0).count == 3);
  CHECK(bs_count(m, g, -0.95).count == 5);
}

TEST_CASE("counting identity for the boundary and two-level families") {
  {
    const ModelSpec m = model_case2(0.9 / kPi);
    const TorusGrid g = make_grid(32);
    const Eigen::MatrixXd H = assemble_H(m, g);
    for (double z : {-0.05, -0.1, -0.3}) {
      CHECK(bs_count(m, g, z).count == count_below(H, z));
    }
  }
  {
    const ModelSpec m = model_spinboson(+1, 1.0, 0.5);
    const TorusGrid g = make_grid(32);
    const Eigen::MatrixXd H = assemble_H(m, g);
    const double e_min =
        essential_spectrum(DeltaEvaluator(m, make_grid(64))).e_min;
    for (double dz : {0.05, 0.1, 0.3}) {
      const double z = e_min - dz;
      CHECK(bs_count(m, g, z).count == count_below(H, z));
    }
  }
}

TEST_CASE("z above the admissible region is rejected") {
  const ModelSpec m = model_section6(1.0, 1.0);
  const TorusGrid g = make_grid(16);
  // w2 vanishes on the diagonal, so any z >= 0 fails the two-particle layer
  CHECK_THROWS_AS(assemble_T(m, g, 0.0), DomainError);
  CHECK_THROWS_AS(assemble_T(m, g, 0.1), DomainError);
  // z = -0.5 sits above the one-particle branch: some Delta_j(z) <= 0
  CHECK_THROWS_AS(assemble_T(m, g, -0.5), DomainError);
  CHECK_NOTHROW(assemble_T(m, g, -1.0));
}

TEST_CASE("report fields are internally consistent") {
  const ModelSpec m = model_section6(1.0, 1.0);
  const TorusGrid g = make_grid(32);
  const BSCount c = bs_count(m, g, -1.0);
  CHECK(c.z == -1.0);
  REQUIRE_FALSE(c.top_eigenvalues.empty());
  CHECK(c.top_eigenvalues.size() <= 8);
  for (std::size_t i = 0; i + 1 < c.top_eigenvalues.size(); ++i)
    CHECK(c.top_eigenvalues[i] >= c.top_eigenvalues[i + 1]);
  // recount from the full spectrum of T
  const Eigen::VectorXd ev = symmetric_eigenvalues(assemble_T(m, g, -1.0));
  int above = 0;
  for (int k = 0; k < ev.size(); ++k)
    if (ev[k] > 1.0) ++above;
  CHECK(c.count == above);
  CHECK(c.borderline.empty());  // -1.0 is far from any level crossing
}

}  // TEST_SUITE
