// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/constants.hpp"
#include "htype/errors.hpp"
#include "htype/functionals.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace htype;
using namespace htype::testing;

namespace {

ScalarField constant(const GroupSpec& G, double c) {
  ScalarField f;
  f.name = "const";
  f.eval = [c](const GroupPoint&) { return c; };
  f.gradient = [](const GroupPoint& p, GroupPoint& g) { g = GroupPoint(p.nz, p.nw); };
  f.decay = 0;
  f.center = G.identity();
  f.symmetry = Symmetry::cylindrical;
  return f;
}

}  // namespace

TEST_SUITE("functionals") {

TEST_CASE("quotients are invariant under f -> c f, sample for sample") {
  const GroupSpec G(1, 1);
  const ScalarField U = extremal_U(G, 0.5);
  const IntegrationSpec spec = mc(20000);
  for (double c : {0.3, 2.0, 17.0}) {
    CHECK(sobolev_quotient(G, scaled(U, c), 0.5, spec).value ==
          doctest::Approx(sobolev_quotient(G, U, 0.5, spec).value).epsilon(1e-12));
    CHECK(hardy_quotient(G, scaled(U, c), 0.5, spec).value ==
          doctest::Approx(hardy_quotient(G, U, 0.5, spec).value).epsilon(1e-12));
  }
}

TEST_CASE("weighted quotient interpolates hardy (p = 2) and sobolev (p = q)") {
  const GroupSpec G(2, 1);
  const double s = 0.5, q = 2.0 * G.Q() / (G.Q() - 2 * s);
  const ScalarField f = perturbed_U(G, s, {0.1, 0, 0, 0, 0, 0});
  const IntegrationSpec spec = mc(20000);
  CHECK(weighted_quotient(G, f, s, 2, spec).value ==
        doctest::Approx(hardy_quotient(G, f, s, spec).value).epsilon(1e-12));
  CHECK(weighted_quotient(G, f, s, q, spec).value ==
        doctest::Approx(sobolev_quotient(G, f, s, spec).value).epsilon(1e-12));
  CHECK(weighted_quotient(G, f, s, 2, spec).sharp_constant ==
        doctest::Approx(constants::hardy_const(2, 1, s)).epsilon(1e-14));
  CHECK(weighted_quotient(G, f, s, q, spec).sharp_constant ==
        doctest::Approx(constants::sharp_sobolev(2, 1, s)).epsilon(1e-12));
  CHECK_THROWS_AS(weighted_quotient(G, f, s, 1.5, spec), PreconditionError);
}

TEST_CASE("U attains the hardy constant at modest sample counts") {
  const GroupSpec G(1, 1);
  for (double s : {0.3, 0.7}) {
    const QuotientReport r = hardy_quotient(G, extremal_U(G, s), s, mc(50000));
    CHECK(std::abs(r.deficit) <= 4 * r.error);
    CHECK(r.error / r.sharp_constant < 0.01);
  }
}

TEST_CASE("hls value is symmetric in f and g and below the bound for bumps") {
  const GroupSpec G(1, 1);
  const double s = 0.5;
  GroupPoint c = G.identity();
  c.z[0] = 1.0;
  const ScalarField a = bump(G, G.identity(), 1.0), b = bump(G, c, 0.6);
  const IntegrationSpec spec = mc(20000);
  const QuotientReport ab = hls_value(G, a, b, s, spec), ba = hls_value(G, b, a, s, spec);
  CHECK(ab.value == doctest::Approx(ba.value).epsilon(0.05));
  CHECK(ab.deficit > 2 * ab.error);
}

TEST_CASE("poisson kernel has unit mass: extension of a constant is that constant") {
  const GroupSpec G(2, 1);
  const ExtensionField u = poisson_extension(G, constant(G, 3.0), 0.4);
  Gen g(51);
  for (int i = 0; i < 5; ++i) {
    const GroupPoint p = random_point(G, g);
    const double rho = std::exp(uniform(g, -3, 3));
    CHECK(u.eval(p, rho, mc(2000)).value == doctest::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("the rho-score of the poisson kernel has zero mean") {
  // d/drho of a probability density integrates to zero: int phi (2s - (Q+2s) A/B) = 0
  const GroupSpec G(1, 1);
  IntegrationSpec spec;
  spec.method = Method::polar_grid;
  spec.nodes = 24;
  spec.radial_nodes = 16;
  for (double s : {0.25, 0.5, 0.75}) {
    const double Q = G.Q();
    ScalarField h;
    h.eval = [s, Q](const GroupPoint& y) {
      const double A = 1 + 0.25 * y.z2(), B = A * A + y.w2();
      return std::pow(B, -(Q + 2 * s) / 4) * (2 * s - (Q + 2 * s) * A / B);
    };
    h.decay = Q + 2 * s;
    h.symmetry = Symmetry::cylindrical;
    const double mass = constants::cylinder_mass(1, 1, (Q + 2 * s) / 4);
    CHECK(std::abs(integrate_G(G, h, spec).value / mass) <= 1e-8);
  }
}

TEST_CASE("extension tends to the boundary data and its neumann trace to the operator") {
  const GroupSpec G(1, 1);
  const double s = 0.5;
  const ScalarField U = extremal_U(G, s);
  const ExtensionField u = poisson_extension(G, U, s);
  GroupPoint p = G.identity();
  p.z[0] = 0.4;
  const Estimate e = u.eval(p, 1e-3, mc(20000));
  CHECK(e.value == doctest::Approx(U(p)).epsilon(2e-3));
  // at the identity: L_s U = N U^((Q+2s)/(Q-2s)) = N
  const Estimate nm = u.neumann(G.identity(), 1e-3, mc(200000));
  const double target = constants::extension_factor(s) * constants::hardy_const(1, 1, s);
  CHECK(std::abs(nm.value - target) <= 4 * nm.error + 0.02 * target);
}

TEST_CASE("trace energy of P(U) equals the extension factor times N V") {
  const GroupSpec G(1, 1);
  const double s = 0.5;
  const ExtensionField u = poisson_extension(G, extremal_U(G, s), s);
  IntegrationSpec spec = mc(40000);
  spec.radial_nodes = 8;
  const Estimate E = trace_energy(G, u, spec);
  const double target = constants::extension_factor(s) * constants::hardy_const(1, 1, s) *
                        constants::sphere_volume(1, 1);
  CHECK(std::abs(E.value - target) <= 4 * E.error);
}

TEST_CASE("log-sobolev pair vanishes on constants") {
  const GroupSpec G(1, 1);
  const LogSobPair L = logsob_pair(G, constant(G, 2.0), mc(5000));
  CHECK(L.lhs.value == doctest::Approx(0.0));
  CHECK(std::abs(L.rhs.value) <= 1e-6);
  CHECK(L.factor * 2.0 == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("preconditions are enforced") {
  const GroupSpec G(1, 1);
  const ScalarField U = extremal_U(G, 0.5);
  CHECK_THROWS_AS(sobolev_quotient(G, U, 1.2, mc(100)), PreconditionError);
  CHECK_THROWS_AS(sobolev_quotient(G, cylinder_power(G, 1, 0.2), 0.5, mc(100)), PreconditionError);
  ScalarField neg = scaled(constant(G, 1.0), -1.0);
  CHECK_THROWS_AS(logsob_pair(G, neg, mc(100)), PreconditionError);
}

}
