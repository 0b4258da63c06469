// test_model.cpp - model families, named profiles, band extrema, vanishing orders
#include <cmath>

#include "doctest.h"
#include "fockspec/errors.hpp"
#include "fockspec/model.hpp"

using namespace fockspec;

TEST_SUITE("model") {

TEST_CASE("epsilon1 equals 1 - cos without cancellation") {
  CHECK(epsilon1(0.0) == 0.0);
  CHECK(epsilon1(kPi) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(epsilon1(1.0) == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-15));
  // 1 - cos(1e-8) rounds to 0 in double arithmetic; the stable form keeps
  // the leading x^2/2 term
  const double x = 1e-8;
  CHECK(epsilon1(x) == doctest::Approx(0.5 * x * x).epsilon(1e-12));
  CHECK(epsilon1(x) > 4e-17);
}

TEST_CASE("named profiles and their vanishing orders at 0") {
  CHECK(named_fn("one")(0.37) == 1.0);
  CHECK(named_fn("sin")(0.5) == doctest::Approx(std::sin(0.5)).epsilon(1e-15));
  CHECK(named_fn("one_minus_cos")(0.5) == doctest::Approx(epsilon1(0.5)).epsilon(1e-15));
  CHECK(named_fn("one_plus_sin")(0.0) == 1.0);
  CHECK_THROWS_AS(named_fn("bogus"), ConfigError);
  const auto names = named_fn_list();
  CHECK(names.size() == 5);
  for (const auto& n : names) CHECK_NOTHROW(named_fn(n));

  CHECK(vanishing_order(named_fn("one")) == 0);
  CHECK(vanishing_order(named_fn("sin")) == 1);
  CHECK(vanishing_order(named_fn("one_minus_cos")) == 2);
  CHECK(vanishing_order([](double x) { return std::sin(x) * std::sin(x) * std::sin(x); }) == 3);
  CHECK_THROWS_AS(vanishing_order([](double) { return 0.0; }), NumericError);
}

TEST_CASE("constant-coefficient family data") {
  const ModelSpec m = model_section6(1.5, 0.7, 0.25);
  CHECK(m.w1(0.37) == 1.5);
  CHECK(m.v1(-2.0) == 0.7);
  CHECK(m.v0(1.0) == 0.0);
  CHECK(m.w0 == 0.25);
  CHECK(m.w2(0.5, 0.2) == doctest::Approx(1.0 - std::cos(0.3)).epsilon(1e-15));
  CHECK(m.w2(0.5, 0.2) == doctest::Approx(m.w2(0.2, 0.5)).epsilon(1e-15));
  CHECK(m.family == "section6");
  CHECK(m.params.at("a") == 1.5);
}

TEST_CASE("boundary families match their formulas") {
  const ModelSpec c1 = model_case1(2.0, 3.0 / kPi);
  CHECK(c1.w1(0.4) == doctest::Approx(1.0 + std::sin(0.4) * std::sin(0.4)).epsilon(1e-15));
  CHECK(c1.v1(0.4) == doctest::Approx(std::sqrt(3.0 / kPi) * std::sin(0.4)).epsilon(1e-15));
  CHECK(c1.w2(0.4, -0.1) ==
        doctest::Approx(epsilon1(0.4) + 2.0 * epsilon1(0.3) + epsilon1(-0.1)).epsilon(1e-15));
  CHECK_THROWS_AS(model_case1(-1.0, 0.5), DomainError);
  CHECK_THROWS_AS(model_case1(2.0, -0.5), DomainError);

  const ModelSpec c2 = model_case2(0.5);
  CHECK(c2.w1(0.4) == doctest::Approx(2.0 - std::cos(0.4)).epsilon(1e-15));
  CHECK(c2.v1(0.4) == doctest::Approx(std::sqrt(0.5) * (1.0 - std::cos(0.4))).epsilon(1e-15));
  CHECK(c2.w2(0.4, 0.1) == doctest::Approx(2.0 - std::cos(0.4) - std::cos(0.1)).epsilon(1e-15));
}

TEST_CASE("two-level family carries the sigma signs") {
  const ModelSpec p = model_spinboson(+1, 1.0, 0.5);
  CHECK(p.w0 == 1.0);
  CHECK(p.w1(0.3) == doctest::Approx(-1.0 + epsilon1(0.3)).epsilon(1e-14));
  CHECK(p.v0(0.3) == doctest::Approx(0.5 * std::sin(0.3)).epsilon(1e-15));
  CHECK(p.v1(0.3) == p.v0(0.3));
  CHECK(p.w2(0.3, 0.1) == doctest::Approx(1.0 + epsilon1(0.3) + epsilon1(0.1)).epsilon(1e-14));

  const ModelSpec q = model_spinboson(-1, 2.0, 0.5);
  CHECK(q.w0 == -2.0);
  CHECK(q.w1(0.3) == doctest::Approx(2.0 + epsilon1(0.3)).epsilon(1e-14));
  CHECK(q.w2(0.3, 0.1) == doctest::Approx(-2.0 + epsilon1(0.3) + epsilon1(0.1)).epsilon(1e-14));

  CHECK_THROWS_AS(model_spinboson(0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(model_spinboson(+1, -1.0, 0.5), DomainError);
  CHECK_THROWS_AS(model_spinboson(+1, 1.0, -0.5), DomainError);
}

TEST_CASE("make_model parses parameters and rejects junk") {
  const ModelSpec m = make_model("section6", {{"a", "1.5"}, {"b", "0.7"}});
  CHECK(m.w1(0.0) == 1.5);
  CHECK(m.v1(0.0) == 0.7);
  CHECK(m.w0 == 0.0);

  const ModelSpec c1 = make_model("case1", {});  // defaults l = 2, mu = critical
  CHECK(c1.params.at("l") == 2.0);
  CHECK(c1.params.at("mu") == doctest::Approx(3.0 / kPi).epsilon(1e-15));

  const ModelSpec sb = make_model("spinboson", {{"sigma", "-1"}, {"alpha", "0.25"}});
  CHECK(sb.w0 == -1.0);
  CHECK(sb.fnames.at("w") == "one_minus_cos");

  CHECK_THROWS_AS(make_model("bogus", {}), ConfigError);
  CHECK_THROWS_AS(make_model("section6", {{"q", "1"}}), ConfigError);
  CHECK_THROWS_AS(make_model("section6", {{"a", "zebra"}}), ConfigError);
  CHECK_THROWS_AS(make_model("case1", {{"l", "-2"}}), DomainError);
  CHECK_THROWS_AS(make_model("spinboson", {{"sigma", "3"}}), DomainError);
}

TEST_CASE("band extrema of the difference kernel") {
  const ModelSpec m = model_section6(1.0, 1.0);
  const TorusGrid g = make_grid(64);
  const BandExtrema ex = band_extrema(m, g);
  CHECK(ex.m == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(ex.m) < 1e-12);
  CHECK(ex.M == doctest::Approx(2.0).epsilon(1e-12));
  // every fiber of 1 - cos(x - y) attains 0 (at y = x), so the minimum runs
  // along a curve rather than sitting at isolated points
  CHECK(ex.argmin_curve);
  const FiberBand fb = fiber_band(m, g, 0.77);
  CHECK(fb.m == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(fb.m) < 1e-12);
  CHECK(fb.M == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fb.tmin == doctest::Approx(0.77).epsilon(1e-8));
}

TEST_CASE("band extrema of the two-level kernel") {
  const ModelSpec m = model_spinboson(+1, 1.0, 0.5);
  const BandExtrema ex = band_extrema(m, make_grid(64));
  CHECK(ex.m == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ex.M == doctest::Approx(5.0).epsilon(1e-10));
  CHECK_FALSE(ex.argmin_curve);
  REQUIRE_FALSE(ex.argmin.empty());
  CHECK(std::abs(ex.argmin.front().first) < 1e-6);
  CHECK(std::abs(ex.argmin.front().second) < 1e-6);
}

}  // TEST_SUITE
