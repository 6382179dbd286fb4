// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/constants.hpp"
#include "htype/errors.hpp"
#include "htype/sharpness.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace htype;
using namespace htype::testing;

namespace {

SearchOptions small(int budget = 50) {
  SearchOptions o;
  o.budget = budget;
  return o;
}

}  // namespace

TEST_SUITE("sharpness") {

TEST_CASE("family builders produce admissible fields across the box") {
  const GroupSpec G(1, 1);
  for (const char* name : {"a", "b", "c", "rescale"}) {
    const TrialFamily F = make_family(G, 0.5, name);
    CAPTURE(name);
    REQUIRE(F.lower.size() == F.start.size());
    for (const auto& th : {F.lower, F.upper, F.start}) {
      const ScalarField f = F.build(th);
      CHECK(f.decay * 2 + 2 * 0.5 > G.Q());
      CHECK(std::isfinite(f(G.identity())));
    }
  }
  CHECK_THROWS_AS(make_family(G, 0.5, "z"), PreconditionError);
}

TEST_CASE("exponent family contains U at (Q-2s)/4") {
  const GroupSpec G(2, 1);
  const double s = 0.3;
  const TrialFamily F = exponent_family(G, s);
  const ScalarField f = F.build({(G.Q() - 2 * s) / 4}), U = extremal_U(G, s);
  Gen g(61);
  for (int i = 0; i < 20; ++i) {
    const GroupPoint p = random_point(G, g);
    CHECK(f(p) == doctest::Approx(U(p)).epsilon(1e-14));
  }
}

TEST_CASE("rescale family: the quotient does not depend on the parameter") {
  const GroupSpec G(1, 1);
  const OptimizationResult r =
      minimize_quotient(G, 0.5, rescale_family(G, 0.5), small(), mc(4000));
  REQUIRE(r.trace.size() > 5);
  for (const auto& row : r.trace) CHECK(row.value == doctest::Approx(r.trace[0].value).epsilon(1e-12));
}

TEST_CASE("searches are deterministic and respect the budget") {
  const GroupSpec G(1, 1);
  const TrialFamily F = exponent_family(G, 0.5);
  const OptimizationResult a = minimize_quotient(G, 0.5, F, small(), mc(4000));
  const OptimizationResult b = minimize_quotient(G, 0.5, F, small(), mc(4000));
  CHECK(a.evaluations <= 50);
  CHECK(a.theta == b.theta);
  CHECK(a.value == b.value);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) CHECK(a.trace[i].value == b.trace[i].value);
}

TEST_CASE("one-sided bound holds along every search") {
  const GroupSpec G(1, 1);
  for (const char* name : {"a", "b"}) {
    const OptimizationResult r = minimize_quotient(G, 0.5, make_family(G, 0.5, name), small(), mc(8000));
    CAPTURE(name);
    CHECK_FALSE(r.violation);
    CHECK(r.min_margin >= -2);
    for (const auto& row : r.trace) CHECK(row.value >= r.sharp_constant - 2 * row.error);
  }
}

TEST_CASE("omega family returns toward zero perturbation") {
  const GroupSpec G(1, 1);
  const TrialFamily F = omega_family(G, 0.5);
  const double start = minimize_quotient(G, 0.5, F, small(), mc(8000)).trace.front().value;
  const OptimizationResult r = minimize_quotient(G, 0.5, F, small(80), mc(8000));
  CHECK(r.value <= start);
  CHECK(std::abs(r.theta[0]) < 0.3);
}

TEST_CASE("search preconditions") {
  const GroupSpec G(1, 1);
  const TrialFamily F = exponent_family(G, 0.5);
  CHECK_THROWS_AS(minimize_quotient(G, 0.5, F, small(10), mc(1000)), PreconditionError);
  CHECK_THROWS_AS(subcritical_lambda(G, 0.5, 1.5, F, small(), mc(1000)), PreconditionError);
  CHECK_THROWS_AS(subcritical_lambda(G, 0.5, 8.0 / 3.0, F, small(), mc(1000)), PreconditionError);
  TrialFamily bad = F;
  bad.lower = {1.0};
  bad.upper = {0.5};
  CHECK_THROWS_AS(minimize_quotient(G, 0.5, bad, small(), mc(1000)), PreconditionError);
}

TEST_CASE("moment residuals vanish for U and not for a translate") {
  const GroupSpec G(1, 1);
  const double s = 0.5;
  const IntegrationSpec spec = mc(100000);
  for (double p : {2.0, 2.5}) {
    const auto res = moment_residual(G, s, p, extremal_U(G, s), spec);
    REQUIRE(res.size() == 4u);
    for (const auto& e : res) CHECK(std::abs(e.value) <= 4 * e.error + 1e-12);
  }
  GroupPoint eta = G.identity();
  eta.z[0] = 0.8;
  const auto moved = moment_residual(G, s, 2.0, transform(G, extremal_U(G, s), eta, 1.0, 0.0), spec);
  CHECK(std::abs(moved[0].value) > 5 * moved[0].error);
}

}
