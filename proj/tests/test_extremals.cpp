// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/constants.hpp"
#include "htype/errors.hpp"
#include "htype/extremals.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace htype;
using namespace htype::testing;

TEST_SUITE("extremals") {

TEST_CASE("sum of omega_j squared is one") {
  for (auto [n, m] : {std::pair{1, 1}, {2, 1}, {2, 3}, {4, 7}}) {
    const GroupSpec G(n, m);
    Gen g(41 + n * 10 + m);
    double worst = 0;
    std::vector<double> w(omega_count(G));
    for (int i = 0; i < 1000; ++i) {
      omega_all(G, random_point(G, g), w.data());
      double s2 = 0;
      for (double x : w) s2 += x * x;
      worst = std::max(worst, std::abs(s2 - 1));
    }
    CAPTURE(n);
    CAPTURE(m);
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("single omega fields agree with omega_all") {
  const GroupSpec G(2, 3);
  Gen g(42);
  std::vector<double> w(omega_count(G));
  for (int i = 0; i < 50; ++i) {
    const GroupPoint p = random_point(G, g);
    omega_all(G, p, w.data());
    for (int j = 1; j <= omega_count(G); ++j) CHECK(omega(G, 0.5, j)(p) == doctest::Approx(w[j - 1]));
  }
}

TEST_CASE("cayley transform lands on the unit sphere") {
  for_all(43, 200, [](Gen& g, int) {
    const auto [n, m] = random_dims(g, 4);
    const GroupSpec G(n, m);
    const auto c = cayley(G, random_point(G, g));
    double s2 = 0;
    for (double x : c) s2 += x * x;
    CHECK(s2 == doctest::Approx(1.0).epsilon(1e-12));
  });
}

TEST_CASE("cayley jacobian is U^(2Q/(Q-2s)) for every s") {
  for_all(44, 100, [](Gen& g, int) {
    const auto [n, m] = random_dims(g, 3);
    const GroupSpec G(n, m);
    const double s = uniform(g, 0.05, 0.95);
    const double Q = G.Q();
    const GroupPoint p = random_point(G, g);
    CHECK(cayley_jacobian(G)(p) ==
          doctest::Approx(std::pow(extremal_U(G, s)(p), 2 * Q / (Q - 2 * s))).epsilon(1e-12));
  });
}

TEST_CASE("U is 1 at the identity and radially decreasing") {
  const GroupSpec G(2, 1);
  const ScalarField U = extremal_U(G, 0.3);
  CHECK(U(G.identity()) == 1.0);
  GroupPoint p = G.identity();
  double prev = 1;
  for (double r : {0.5, 1.0, 2.0, 4.0}) {
    p.z[0] = r;
    CHECK(U(p) < prev);
    prev = U(p);
  }
}

TEST_CASE("orbit at mu = 1, eta = 0 is U; transform follows its definition") {
  const GroupSpec G(1, 1);
  Gen g(45);
  ConformalParams id;
  id.s = 0.4;
  const ScalarField U = extremal_U(G, 0.4), O = conformal_orbit(G, id);
  GroupPoint eta = random_point(G, g);
  const double mu = 1.7;
  const ScalarField T = transform(G, U, eta, mu, 2.5);
  for (int i = 0; i < 50; ++i) {
    const GroupPoint p = random_point(G, g);
    CHECK(O(p) == doctest::Approx(U(p)).epsilon(1e-15));
    const double expect = std::pow(mu, 2.5) * U(dilate(mu, multiply(G, inverse(G, eta), p)));
    CHECK(T(p) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("f_epsilon is sqrt(1-eps^2) + eps omega_1") {
  const GroupSpec G(1, 1);
  const ScalarField f = f_epsilon(G, 0.1), w1 = omega(G, 0.5, 1);
  const FEpsilon fe = f_epsilon_normalized(G, 0.1, polar(32, 24));
  CHECK(fe.c_eps == doctest::Approx(1.0).epsilon(1e-2));
  Gen g(46);
  for (int i = 0; i < 20; ++i) {
    const GroupPoint p = random_point(G, g);
    CHECK(f(p) == doctest::Approx(fe.c_eps * (std::sqrt(0.99) + 0.1 * w1(p))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(f_epsilon(G, 0.7), PreconditionError);
}

TEST_CASE("perturbed U with zero coefficients is U") {
  const GroupSpec G(2, 1);
  const ScalarField U = extremal_U(G, 0.5);
  const ScalarField P = perturbed_U(G, 0.5, std::vector<double>(omega_count(G), 0.0));
  Gen g(47);
  for (int i = 0; i < 20; ++i) {
    const GroupPoint p = random_point(G, g);
    CHECK(P(p) == doctest::Approx(U(p)).epsilon(1e-15));
  }
}

TEST_CASE("combinators keep decay metadata consistent") {
  const GroupSpec G(1, 1);
  const ScalarField U = extremal_U(G, 0.5);
  CHECK(U.decay == doctest::Approx(3.0));
  CHECK(power(U, 2).decay == doctest::Approx(6.0));
  CHECK(product(U, U).decay == doctest::Approx(6.0));
  CHECK(sum(U, phi(G, 0.5, 1.0)).decay == doctest::Approx(3.0));
  CHECK(scaled(U, 3.0).decay == doctest::Approx(3.0));
}

TEST_CASE("bump integral matches the polar grid") {
  const GroupSpec G(1, 1);
  IntegrationSpec spec;
  spec.method = Method::polar_grid;
  spec.nodes = 24;
  spec.radial_nodes = 16;
  for (double width : {0.5, 1.0, 2.0}) {
    const Estimate e = integrate_G(G, bump(G, G.identity(), width), spec);
    CHECK(rel(e.value, bump_integral(1, 1, width)) <= 1e-4);
  }
}

TEST_CASE("invalid parameters are rejected") {
  const GroupSpec G(1, 1);
  CHECK_THROWS_AS(phi(G, 0.5, -1.0), PreconditionError);
  CHECK_THROWS_AS(omega(G, 0.5, 0), PreconditionError);
  CHECK_THROWS_AS(omega(G, 0.5, 5), PreconditionError);
  ConformalParams p;
  p.mu = -1;
  CHECK_THROWS_AS(conformal_orbit(G, p), PreconditionError);
}

}
