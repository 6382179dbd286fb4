// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/constants.hpp"
#include "htype/errors.hpp"
#include "htype/extremals.hpp"
#include "htype/integrate.hpp"
#include "htype/quadrature.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace htype;
using namespace htype::testing;

TEST_SUITE("integrate") {

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const auto r = quad::gauss_legendre(8, 0.0, 2.0);
  double s = 0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], 15);
  CHECK(s == doctest::Approx(std::pow(2.0, 16) / 16).epsilon(1e-13));
}

TEST_CASE("cylinder sampler density integrates to one") {
  const GroupSpec G(1, 1);
  const quad::CylinderSampler S(G, 1.5);
  ScalarField dens;
  dens.eval = [&S](const GroupPoint& p) { return std::exp(S.log_density(p)); };
  dens.decay = 6;
  dens.symmetry = Symmetry::cylindrical;
  CHECK(integrate_G(G, dens, polar(24, 16)).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("int J = V by every method") {
  for (auto [n, m] : {std::pair{1, 1}, {2, 1}}) {
    const GroupSpec G(n, m);
    const double V = constants::sphere_volume(n, m);
    const ScalarField J = cayley_jacobian(G);
    const Estimate e = integrate_G(G, J, mc(200000));
    CHECK(std::abs(e.value - V) <= 4 * e.error);
    CHECK(e.error / V < 0.01);
    if (n == 1) {
      CHECK(rel(integrate_G(G, J, polar(24, 16)).value, V) <= 1e-8);
      IntegrationSpec t;
      t.method = Method::tensor_grid;
      t.nodes = 40;
      CHECK(rel(integrate_G(G, J, t).value, V) <= 1e-3);
    }
  }
}

TEST_CASE("monte carlo error bars are calibrated") {
  // z-scores of 40 independent runs: mean near 0, rms near 1
  const GroupSpec G(1, 1);
  // a cylinder power alone is sampled with zero variance; add a translate
  const double exact = 2 * constants::cylinder_mass(1, 1, 1.4);
  const ScalarField c = cylinder_power(G, 1.0, 1.4);
  GroupPoint eta = G.identity();
  eta.z[0] = 1.5;
  eta.w[0] = -0.8;
  const ScalarField f = sum(c, transform(G, c, eta, 1.0, 0.0));
  double sum = 0, sum2 = 0;
  for (int k = 0; k < 40; ++k) {
    const Estimate e = integrate_G(G, f, mc(4000, 1000 + k));
    const double z = (e.value - exact) / e.error;
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / 40) < 0.6);
  CHECK(std::sqrt(sum2 / 40) == doctest::Approx(1.0).epsilon(0.35));
}

TEST_CASE("same seed gives identical results; thread count does not matter") {
  const GroupSpec G(2, 1);
  const ScalarField U = extremal_U(G, 0.5);
  IntegrationSpec a = mc(20000), b = mc(20000);
  a.threads = 1;
  b.threads = 3;
  const Estimate ea = dirichlet_form(G, U, 0.5, a), eb = dirichlet_form(G, U, 0.5, b);
  CHECK(ea.value == eb.value);
  CHECK(ea.error == eb.error);
  const Estimate ec = dirichlet_form(G, U, 0.5, mc(20000, 8));
  CHECK(ec.value != ea.value);
}

TEST_CASE("dirichlet form obeys the scaling law D(f o delta_mu) = mu^(2s-Q) D(f)") {
  const GroupSpec G(1, 1);
  const double s = 0.5, mu = 1.6;
  const ScalarField U = extremal_U(G, s);
  const ScalarField Ud = transform(G, U, G.identity(), mu, 0.0);
  const IntegrationSpec spec = polar(12, 8);
  const double D = dirichlet_form(G, U, s, spec).value;
  const double Dd = dirichlet_form(G, Ud, s, spec).value;
  CHECK(Dd == doctest::Approx(std::pow(mu, 2 * s - G.Q()) * D).epsilon(2e-3));
}

TEST_CASE("dirichlet pairing is symmetric and matches the form on the diagonal") {
  const GroupSpec G(1, 1);
  const ScalarField U = extremal_U(G, 0.5), P = phi(G, 0.5, 2.0);
  const IntegrationSpec spec = mc(20000);
  const Estimate a = dirichlet_pairing(G, U, P, 0.5, spec);
  const Estimate b = dirichlet_pairing(G, P, U, 0.5, spec);
  CHECK(std::abs(a.value - b.value) <= 4 * std::hypot(a.error, b.error));
  CHECK(dirichlet_pairing(G, U, U, 0.5, spec).value ==
        doctest::Approx(dirichlet_form(G, U, 0.5, spec).value).epsilon(1e-12));
}

TEST_CASE("riesz potential of c N phi reproduces U") {
  const GroupSpec G(1, 1);
  const double s = 0.5;
  const ScalarField f = scaled(phi(G, s, 1.0), constants::hardy_const(1, 1, s));
  const ScalarField U = extremal_U(G, s);
  GroupPoint p = G.identity();
  p.z[0] = 0.7;
  p.w[0] = 0.2;
  const Estimate e = riesz_potential(G, f, s, p, mc(100000));
  CHECK(std::abs(e.value - U(p)) <= 4 * e.error + 1e-3 * U(p));
}

TEST_CASE("fourier coefficients are positive and decay in k") {
  double prev = fourier_coeff(1, 1, 0.5, 0, 1.0, 2.0);
  CHECK(prev > 0);
  for (int k = 1; k < 6; ++k) {
    const double v = fourier_coeff(1, 1, 0.5, k, 1.0, 2.0);
    CHECK(v > 0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(fourier_coeff(1, 1, 0.0, 0, 1.0, 1.0), PreconditionError);
}

TEST_CASE("method names round-trip") {
  for (Method m : {Method::tensor_grid, Method::polar_grid, Method::monte_carlo})
    CHECK(parse_method(method_name(m)) == m);
  CHECK(parse_method("mc") == Method::monte_carlo);
  CHECK_THROWS_AS(parse_method("simpson"), PreconditionError);
}

TEST_CASE("divergent integrals are refused") {
  const GroupSpec G(1, 1);
  CHECK_THROWS(integrate_G(G, cylinder_power(G, 1.0, 0.9), mc(1000)));
  CHECK_THROWS_AS(dirichlet_form(G, cylinder_power(G, 1.0, 0.2), 0.5, mc(1000)), PreconditionError);
}

}
