// test_spin_boson.cpp - doubled-operator reports, critical coupling, permutation identity
#include <algorithm>
#include <cmath>
#include <string>

#include "doctest.h"
#include "fockspec/errors.hpp"
#include "fockspec/friedrichs.hpp"
#include "fockspec/grid.hpp"
#include "fockspec/spin_boson.hpp"

using namespace fockspec;

namespace {

bool has_flag(const A2Report& rep, const std::string& s) {
  return std::find(rep.flags.begin(), rep.flags.end(), s) != rep.flags.end();
}

}  // namespace

TEST_SUITE("spin_boson") {

TEST_CASE("block models carry the sign structure of the two-level index") {
  SpinBosonParams p;
  p.epsilon = 1.5;
  p.alpha = 0.7;
  const ModelSpec plus = to_model(p, +1);
  const ModelSpec minus = to_model(p, -1);

  CHECK(plus.w0 == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(minus.w0 == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(plus.w1(0.0) == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(minus.w1(0.0) == doctest::Approx(1.5).epsilon(1e-15));
  // v0 and v1 are the same scaled profile
  CHECK(plus.v0(0.9) == doctest::Approx(0.7 * std::sin(0.9)).epsilon(1e-15));
  CHECK(plus.v1(0.9) == plus.v0(0.9));
  CHECK(plus.w2(0.0, 0.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(minus.w2(0.0, 0.0) == doctest::Approx(-1.5).epsilon(1e-15));
}

TEST_CASE("parameter validation rejects bad dispersions and couplings") {
  SpinBosonParams p;
  p.w_name = "sin";  // vanishes at 0 but goes negative
  CHECK_THROWS_AS(to_model(p, +1), DomainError);
  p.w_name = "one";  // positive but does not vanish at 0
  CHECK_THROWS_AS(to_model(p, +1), DomainError);
  p.w_name = "one_minus_cos";
  p.epsilon = 0.0;
  CHECK_THROWS_AS(to_model(p, +1), DomainError);
  p.epsilon = 1.0;
  p.alpha = 0.0;
  CHECK_THROWS_AS(to_model(p, +1), DomainError);
  p.alpha = 1.0;
  p.v_name = "bogus";
  CHECK_THROWS_AS(to_model(p, +1), ConfigError);
}

TEST_CASE("critical coupling: closed value, scaling, and divergent cases") {
  SpinBosonParams p;
  // int sin^2 / (1 - cos) dt = int (1 + cos) dt = 2 pi
  const double ref = 2.0 / std::sqrt(2.0 * kPi);
  auto a = alpha0(p);
  REQUIRE(a.has_value());
  CHECK(*a == doctest::Approx(ref).epsilon(1e-12));

  p.epsilon = 4.0;
  CHECK(*alpha0(p) == doctest::Approx(2.0 * ref).epsilon(1e-12));

  p.alpha = 17.0;  // the critical value does not depend on alpha
  CHECK(*alpha0(p) == doctest::Approx(2.0 * ref).epsilon(1e-12));

  p.epsilon = 1.0;
  p.alpha = 1.0;
  p.v_name = "one";  // order 0 against order 2: v^2 / w is not integrable
  CHECK_FALSE(alpha0(p).has_value());
  p.v_name = "one_plus_sin";
  CHECK_FALSE(alpha0(p).has_value());
  p.v_name = "one_minus_cos";  // order 2 against order 2 converges again
  CHECK(alpha0(p).has_value());
}

TEST_CASE("subcritical report: trichotomy split, merged spectrum, oracle match") {
  SpinBosonParams p;
  p.alpha = 0.5;
  const TorusGrid g = make_grid(32);
  const A2Report rep = a2_spectrum_report(p, g);

  CHECK(rep.alpha == 0.5);
  CHECK(rep.grid_n == 32);
  REQUIRE(rep.alpha0_value.has_value());
  CHECK(*rep.alpha0_value == doctest::Approx(2.0 / std::sqrt(2.0 * kPi)).epsilon(1e-12));

  // the minus block is subcritical (nonnegative minimum pinned to the band
  // edge -1); the plus block always binds and dips below it
  CHECK(rep.class_minus == Classification::CaseIII_nonneg_min);
  CHECK(rep.class_plus == Classification::CaseII_negative_min);
  CHECK(rep.e_min_minus == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(rep.e_min_plus < -1.0);
  CHECK(rep.e_min == rep.e_min_plus);

  // the plus-block curve bridges every gap: one merged interval up to M+ = 5
  REQUIRE(rep.ess_intervals.size() == 1);
  CHECK(rep.ess_intervals.front()[0] == doctest::Approx(rep.e_min).epsilon(1e-12));
  CHECK(rep.ess_intervals.front()[1] == doctest::Approx(5.0).epsilon(1e-9));

  REQUIRE(rep.counts_plus.size() == 3);
  REQUIRE(rep.counts_minus.size() == 3);
  CHECK(rep.counts_plus[0].first == rep.e_min - 0.05);
  CHECK(rep.counts_plus[1].first == rep.e_min - 0.1);
  CHECK(rep.counts_plus[2].first == rep.e_min - 0.2);
  CHECK(rep.counts_plus[0].second >= rep.counts_plus[1].second);
  CHECK(rep.counts_plus[1].second >= rep.counts_plus[2].second);
  CHECK(rep.counts_minus[0].second >= rep.counts_minus[1].second);
  CHECK(rep.counts_minus[1].second >= rep.counts_minus[2].second);

  CHECK(has_flag(rep, "classification_plus=CaseII_negative_min"));
  CHECK(has_flag(rep, "classification_minus=CaseIII_nonneg_min"));
  CHECK(has_flag(rep, "doubled_oracle_match"));
  CHECK_FALSE(has_flag(rep, "alpha0_divergent"));
  // no mismatch, no leaked eigenvalues: exactly the three flags above
  CHECK(rep.flags.size() == 3);
}

TEST_CASE("supercritical minus block binds below the band") {
  SpinBosonParams p;
  p.alpha = 1.0;
  const ModelSpec mm = to_model(p, -1);
  const EssentialSpectrumReport rm = essential_spectrum(DeltaEvaluator(mm, make_grid(64)));
  CHECK(rm.classification == Classification::CaseII_negative_min);
  CHECK(rm.e_min < -1.0 - 1e-6);
}

TEST_CASE("large grids skip the doubled oracle but keep the spectral data") {
  SpinBosonParams p;
  p.alpha = 0.5;
  const A2Report fine = a2_spectrum_report(p, make_grid(64));
  CHECK(fine.grid_n == 64);
  CHECK(has_flag(fine, "doubled_oracle_skipped"));
  CHECK_FALSE(has_flag(fine, "doubled_oracle_match"));

  // grid refinement moves the reported bottom only at quadrature accuracy
  const A2Report coarse = a2_spectrum_report(p, make_grid(32));
  CHECK(fine.e_min == doctest::Approx(coarse.e_min).epsilon(1e-6));
}

TEST_CASE("permutation identity block-diagonalizes the doubled matrix exactly") {
  SpinBosonParams p;
  CHECK(phi_decomposition_check(p, make_grid(8)) == 0.0);
  CHECK(phi_decomposition_check(p, make_grid(16)) == 0.0);
  CHECK_THROWS_AS(phi_decomposition_check(p, make_grid(64)), ResourceError);
}

}  // TEST_SUITE
