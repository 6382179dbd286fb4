// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/extremals.hpp"

#include "htype/constants.hpp"
#include "htype/errors.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

namespace htype {

namespace {

GroupPoint or_identity(const GroupSpec& G, const GroupPoint& p) {
  return p.nz == 0 && p.nw == 0 ? G.identity() : p;
}

}  // namespace

ScalarField cylinder_power(const GroupSpec& G, double rho, double b, std::string name) {
  require(rho > 0, "cylinder_power: rho must be > 0");
  ScalarField f;
  f.name = name.empty() ? "cyl(" + std::to_string(rho) + "," + std::to_string(b) + ")" : name;
  f.eval = [rho, b](const GroupPoint& p) {
    const double A = rho + 0.25 * p.z2();
    return std::exp(-b * std::log(A * A + p.w2()));
  };
  f.gradient = [rho, b](const GroupPoint& p, GroupPoint& g) {
    const double A = rho + 0.25 * p.z2();
    const double B = A * A + p.w2();
    const double c = -b * std::exp(-(b + 1) * std::log(B));
    g.nz = p.nz;
    g.nw = p.nw;
    for (int i = 0; i < p.nz; ++i) g.z[i] = c * A * p.z[i];
    for (int k = 0; k < p.nw; ++k) g.w[k] = c * 2 * p.w[k];
  };
  f.symmetry = Symmetry::cylindrical;
  f.decay = 4 * b;
  f.center = G.identity();
  f.scale = std::sqrt(rho);
  return f;
}

ScalarField extremal_U(const GroupSpec& G, double s) {
  require(s > 0 && s < G.n() + 1, "extremal_U: 0 < s < n+1 required");
  return cylinder_power(G, 1.0, (G.Q() - 2 * s) / 4.0, "U");
}

ScalarField phi(const GroupSpec& G, double s, double rho) {
  require(std::abs(s) < G.n() + 1, "phi: -n-1 < s < n+1 required");
  require(rho > 0, "phi: rho must be > 0");
  return cylinder_power(G, rho, (G.Q() + 2 * s) / 4.0, "phi");
}

ScalarField cayley_jacobian(const GroupSpec& G) { return cylinder_power(G, 1.0, G.Q() / 2.0, "J"); }

ScalarField transform(const GroupSpec& G, const ScalarField& F, const GroupPoint& eta, double mu,
                      double power) {
  require(mu > 0, "transform: mu must be > 0");
  const GroupPoint e = or_identity(G, eta);
  G.check(e);
  const GroupPoint a = fast::inv(e);
  const double amp = std::pow(mu, power);
  auto base = std::make_shared<ScalarField>(F);
  const GroupSpec* Gp = &G;
  ScalarField f;
  f.name = F.name + "@orbit";
  f.eval = [=](const GroupPoint& xi) { return amp * base->eval(fast::dil(mu, fast::mul(*Gp, a, xi))); };
  if (F.gradient) {
    f.gradient = [=](const GroupPoint& xi, GroupPoint& g) {
      GroupPoint gy;
      base->gradient(fast::dil(mu, fast::mul(*Gp, a, xi)), gy);
      double ut[kMaxZ];
      g.nz = xi.nz;
      g.nw = xi.nw;
      for (int i = 0; i < xi.nz; ++i) g.z[i] = amp * mu * gy.z[i];
      for (int k = 0; k < xi.nw; ++k) {
        Gp->apply_transpose(k, a.z.data(), ut);
        for (int i = 0; i < xi.nz; ++i) g.z[i] += amp * mu * mu * gy.w[k] * 0.5 * ut[i];
        g.w[k] = amp * mu * mu * gy.w[k];
      }
    };
  }
  f.symmetry = (e.is_zero() && F.symmetry == Symmetry::cylindrical) ? Symmetry::cylindrical
                                                                     : Symmetry::none;
  f.decay = F.decay;
  f.center = fast::mul(G, e, fast::dil(1.0 / mu, or_identity(G, F.center)));
  f.scale = F.scale / mu;
  return f;
}

ScalarField conformal_orbit(const GroupSpec& G, const ConformalParams& p) {
  require(p.mu > 0, "conformal_orbit: mu must be > 0");
  ScalarField f = transform(G, extremal_U(G, p.s), p.eta, p.mu, (G.Q() - 2 * p.s) / 2.0);
  f.name = "U_orbit";
  return f;
}

std::vector<double> cayley(const GroupSpec& G, const GroupPoint& g) {
  G.check(g);
  const int d = G.dim_z();
  const double z2 = g.z2(), w2 = g.w2();
  const double A = 1 + 0.25 * z2;
  const double B = A * A + w2;
  std::vector<double> w(g.w.begin(), g.w.begin() + g.nw);
  const Eigen::MatrixXd J = j_map(G, w);
  Eigen::Map<const Eigen::VectorXd> z(g.z.data(), d);
  const Eigen::VectorXd az = A * z - J * z;
  std::vector<double> out(d + g.nw + 1);
  for (int i = 0; i < d; ++i) out[i] = az(i) / B;
  for (int k = 0; k < g.nw; ++k) out[d + k] = 2 * g.w[k] / B;
  out.back() = (-1 + z2 * z2 / 16 + w2) / B;
  return out;
}

int omega_count(const GroupSpec& G) { return G.dim_z() + G.m() + 1; }

// U^-1 dU_{mu,eta}/d(eta, mu) at (1, 0) with U = B^{-(Q-2s)/4}. Every derivative is
// -(Q-2s)/4 B^-1 dB, so the prefactors 4/(Q-2s) and 2/(Q-2s) remove s entirely:
//   d/dz'_j:  y = eta^-1 o xi, dy_z/dz'_j = -e_j, dy_w/dz'_j = -(1/2) U^(k) z
//   d/dw'_r:  dy_w/dw'_r = -e_r
//   d/dmu:    (Q-2s)/2 + <grad U/U, (z, 2w)>
void omega_all(const GroupSpec& G, const GroupPoint& p, double* out) {
  const int d = G.dim_z();
  const double z2 = p.z2(), w2 = p.w2();
  const double A = 1 + 0.25 * z2;
  const double B = A * A + w2;
  double uz[kMaxZ];
  for (int j = 0; j < d; ++j) out[j] = A * p.z[j];  // dB/dz_j = A z_j
  for (int k = 0; k < p.nw; ++k) {
    G.apply(k, p.z.data(), uz);  // dB/dw_k (1/2)(U z)_j = w_k (U z)_j
    for (int j = 0; j < d; ++j) out[j] += p.w[k] * uz[j];
  }
  for (int j = 0; j < d; ++j) out[j] /= B;
  for (int k = 0; k < p.nw; ++k) out[d + k] = 2 * p.w[k] / B;
  out[d + p.nw] = 1 - (0.5 * A * z2 + 2 * w2) / B;
}

ScalarField omega(const GroupSpec& G, double s, int j) {
  require(s > 0 && s < 1, "omega: 0 < s < 1 required");
  const int count = omega_count(G);
  if (j < 1 || j > count)
    throw PreconditionError("omega: index must be in 1.." + std::to_string(count));
  const GroupSpec* Gp = &G;
  ScalarField f;
  f.name = "omega:" + std::to_string(j);
  f.eval = [Gp, j](const GroupPoint& p) {
    double out[kMaxZ + kMaxW + 1];
    omega_all(*Gp, p, out);
    return out[j - 1];
  };
  f.symmetry = Symmetry::none;
  f.decay = j == count ? 0 : (j > G.dim_z() ? 2 : 1);
  f.center = G.identity();
  return f;
}

FEpsilon f_epsilon_normalized(const GroupSpec& G, double eps, const IntegrationSpec& spec) {
  require(eps > 0 && eps < 0.5, "f_epsilon: 0 < eps < 1/2 required");
  const double a = std::sqrt(1 - eps * eps);
  const GroupSpec* Gp = &G;
  auto raw = [Gp, a, eps](const GroupPoint& p) {
    double w[kMaxZ + kMaxW + 1];
    omega_all(*Gp, p, w);
    return a + eps * w[0];
  };
  const ScalarField J = cayley_jacobian(G);
  ScalarField weighted;
  weighted.name = "feps^2 J";
  weighted.eval = [raw, J](const GroupPoint& p) {
    const double v = raw(p);
    return v * v * J(p);
  };
  weighted.decay = J.decay;
  weighted.center = G.identity();
  const Estimate I = integrate_G(G, weighted, spec);
  if (!(I.value > 0) || !std::isfinite(I.value))
    throw NumericError("f_epsilon: normalization integral failed");
  const double c = std::sqrt(constants::sphere_volume(G.n(), G.m()) / I.value);
  ScalarField f;
  f.name = "feps";
  f.eval = [raw, c](const GroupPoint& p) { return c * raw(p); };
  f.decay = 0;
  f.center = G.identity();
  return {f, c, I};
}

ScalarField f_epsilon(const GroupSpec& G, double eps) {
  IntegrationSpec spec;
  if (G.n() == 1) {
    spec.method = Method::polar_grid;
    spec.nodes = 32;
    spec.radial_nodes = 24;
  } else {
    spec.samples = 1000000;
  }
  return f_epsilon_normalized(G, eps, spec).field;
}

ScalarField perturbed_U(const GroupSpec& G, double s, std::vector<double> linear,
                        std::vector<double> quad) {
  const int d = omega_count(G);
  require(static_cast<int>(linear.size()) <= d, "perturbed_U: too many linear coefficients");
  require(quad.empty() || static_cast<int>(quad.size()) == d * d,
          "perturbed_U: quadratic coefficients must be (2n+m+1)^2");
  linear.resize(d, 0.0);
  const ScalarField U = extremal_U(G, s);
  const GroupSpec* Gp = &G;
  ScalarField f;
  f.name = "U_perturbed";
  f.eval = [Gp, U, linear, quad, d](const GroupPoint& p) {
    double w[kMaxZ + kMaxW + 1];
    omega_all(*Gp, p, w);
    double factor = 1;
    for (int j = 0; j < d; ++j) factor += linear[j] * w[j];
    if (!quad.empty())
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) factor += quad[i * d + j] * w[i] * w[j];
    return U(p) * factor;
  };
  f.decay = U.decay;
  f.center = G.identity();
  return f;
}

ScalarField bump(const GroupSpec& G, const GroupPoint& center, double width) {
  require(width > 0, "bump: width must be > 0");
  ScalarField base;
  base.name = "bump";
  base.eval = [](const GroupPoint& p) {
    const double z2 = p.z2();
    return std::exp(-(z2 * z2 / 16 + p.w2()));
  };
  base.gradient = [](const GroupPoint& p, GroupPoint& g) {
    const double z2 = p.z2();
    const double v = std::exp(-(z2 * z2 / 16 + p.w2()));
    g.nz = p.nz;
    g.nw = p.nw;
    for (int i = 0; i < p.nz; ++i) g.z[i] = -v * z2 * p.z[i] / 4;
    for (int k = 0; k < p.nw; ++k) g.w[k] = -2 * v * p.w[k];
  };
  base.symmetry = Symmetry::cylindrical;
  base.decay = 64;  // faster than any power; capped for planning
  base.center = G.identity();
  ScalarField f = transform(G, base, center, 1.0 / width, 0.0);
  f.name = "bump";
  return f;
}

double bump_integral(int n, int m, double width) {
  // |S^(2n-1)| int r^(2n-1) e^{-r^4/16} dr * pi^(m/2) = 2 pi^n / Gamma(n) * 4^(n-1) Gamma(n/2) * pi^(m/2)
  const double pi = std::numbers::pi;
  const double Q = 2 * n + 2 * m;
  return std::pow(width, Q) * 2 * std::pow(pi, n + m / 2.0) / std::tgamma(n) * std::pow(4.0, n - 1) *
         std::tgamma(n / 2.0);
}

ScalarField scaled(const ScalarField& F, double c) {
  ScalarField f = F;
  auto base = std::make_shared<ScalarField>(F);
  f.name = std::to_string(c) + "*" + F.name;
  f.eval = [base, c](const GroupPoint& p) { return c * base->eval(p); };
  if (F.gradient)
    f.gradient = [base, c](const GroupPoint& p, GroupPoint& g) {
      base->gradient(p, g);
      for (int i = 0; i < p.nz; ++i) g.z[i] *= c;
      for (int k = 0; k < p.nw; ++k) g.w[k] *= c;
    };
  return f;
}

ScalarField sum(const ScalarField& a, const ScalarField& b) {
  auto pa = std::make_shared<ScalarField>(a);
  auto pb = std::make_shared<ScalarField>(b);
  ScalarField f;
  f.name = a.name + "+" + b.name;
  f.eval = [pa, pb](const GroupPoint& p) { return pa->eval(p) + pb->eval(p); };
  if (a.gradient && b.gradient)
    f.gradient = [pa, pb](const GroupPoint& p, GroupPoint& g) {
      GroupPoint h;
      pa->gradient(p, g);
      pb->gradient(p, h);
      for (int i = 0; i < p.nz; ++i) g.z[i] += h.z[i];
      for (int k = 0; k < p.nw; ++k) g.w[k] += h.w[k];
    };
  f.symmetry = a.symmetry == Symmetry::cylindrical && b.symmetry == Symmetry::cylindrical
                   ? Symmetry::cylindrical
                   : Symmetry::none;
  f.decay = std::min(a.decay, b.decay);
  f.center = a.center;
  f.scale = std::max(a.scale, b.scale);
  return f;
}

ScalarField product(const ScalarField& a, const ScalarField& b) {
  auto pa = std::make_shared<ScalarField>(a);
  auto pb = std::make_shared<ScalarField>(b);
  ScalarField f;
  f.name = a.name + "*" + b.name;
  f.eval = [pa, pb](const GroupPoint& p) { return pa->eval(p) * pb->eval(p); };
  if (a.gradient && b.gradient)
    f.gradient = [pa, pb](const GroupPoint& p, GroupPoint& g) {
      GroupPoint h;
      pa->gradient(p, g);
      pb->gradient(p, h);
      const double va = pa->eval(p), vb = pb->eval(p);
      for (int i = 0; i < p.nz; ++i) g.z[i] = g.z[i] * vb + va * h.z[i];
      for (int k = 0; k < p.nw; ++k) g.w[k] = g.w[k] * vb + va * h.w[k];
    };
  f.symmetry = a.symmetry == Symmetry::cylindrical && b.symmetry == Symmetry::cylindrical
                   ? Symmetry::cylindrical
                   : Symmetry::none;
  f.decay = a.decay + b.decay;
  f.center = a.center;
  f.scale = std::min(a.scale, b.scale);
  return f;
}

ScalarField power(const ScalarField& a, double p) {
  auto pa = std::make_shared<ScalarField>(a);
  ScalarField f = a;
  f.name = a.name + "^" + std::to_string(p);
  f.eval = [pa, p](const GroupPoint& x) { return std::pow(std::abs(pa->eval(x)), p); };
  f.gradient = nullptr;
  f.decay = a.decay * p;
  return f;
}

}  // namespace htype
