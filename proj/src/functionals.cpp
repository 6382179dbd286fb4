// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/functionals.hpp"

#include "htype/constants.hpp"
#include "htype/errors.hpp"
#include "htype/quadrature.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <sstream>

namespace htype {

namespace {

void check_order(double s) { require(s > 0 && s < 1, "0 < s < 1 required"); }

bool centered(const ScalarField& f) { return f.center.nz == 0 || f.center.is_zero(); }

std::string describe(const ScalarField& f, double s, const IntegrationSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  os << f.name << " s=" << s << " method=" << method_name(spec.method);
  if (spec.method == Method::monte_carlo) os << " samples=" << spec.samples << " seed=" << spec.seed;
  else os << " nodes=" << spec.nodes << " radial=" << spec.radial_nodes;
  return os.str();
}

// B(xi)^-s with B = (1+|z|^2/4)^2 + |w|^2
double hardy_weight(const GroupPoint& p, double s) {
  const double A = 1 + 0.25 * p.z2();
  return std::exp(-s * std::log(A * A + p.w2()));
}

PairProblem dirichlet_problem(const GroupSpec& G, const ScalarField& f, double s, int components) {
  PairProblem P;
  P.components = components;
  P.gamma = G.Q() + 2 * s;
  P.head_order = 2;
  P.tail_decay = 0;
  P.center = f.center;
  P.scale = f.scale;
  P.field_decay = f.decay;
  P.rotation_invariant = f.symmetry == Symmetry::cylindrical && centered(f);
  return P;
}

QuotientReport report(const Estimate& e, double sharp, bool upper, std::string inputs) {
  QuotientReport r;
  r.value = e.value;
  r.error = e.error;
  r.sharp_constant = sharp;
  r.deficit = upper ? sharp - e.value : e.value - sharp;
  r.inputs = std::move(inputs);
  r.evaluations = e.evaluations;
  return r;
}

}  // namespace

QuotientReport sobolev_quotient(const GroupSpec& G, const ScalarField& f, double s,
                                const IntegrationSpec& spec) {
  check_order(s);
  const int Q = G.Q();
  const double q = 2.0 * Q / (Q - 2 * s);
  require(f.decay * q > Q, "sobolev quotient: critical norm diverges (decay * 2Q/(Q-2s) <= Q)");
  require(2 * f.decay + 2 * s > Q, "sobolev quotient: Dirichlet form diverges (decay <= (Q-2s)/2)");
  PairProblem P = dirichlet_problem(G, f, s, 2);
  P.pair = [&f](const GroupPoint& xi, const GroupPoint& eta, double* out) {
    const double d = f(xi) - f(eta);
    out[0] = d * d;
    out[1] = 0;
  };
  P.single = [&f, q](const GroupPoint& xi, double* out) {
    out[0] = 0;
    out[1] = std::pow(std::abs(f(xi)), q);
  };
  const JointEstimate J = pair_integral(G, P, spec);
  const double a = constants::groundstate_const(G.n(), G.m(), s);
  const double D = a * J.mean[0], I = J.mean[1];
  if (!(I > 0)) throw NumericError("sobolev quotient: critical norm is zero");
  const double value = D / std::pow(I, 2 / q);
  const Estimate e = J.delta(value, {a / std::pow(I, 2 / q), -(2 / q) * value / I}, spec);
  return report(e, constants::sharp_sobolev(G.n(), G.m(), s), false, describe(f, s, spec));
}

QuotientReport hardy_quotient(const GroupSpec& G, const ScalarField& f, double s,
                              const IntegrationSpec& spec) {
  check_order(s);
  const int Q = G.Q();
  require(2 * f.decay + 2 * s > Q, "hardy quotient: Dirichlet form diverges (decay <= (Q-2s)/2)");
  PairProblem P = dirichlet_problem(G, f, s, 2);
  P.pair = [&f](const GroupPoint& xi, const GroupPoint& eta, double* out) {
    const double d = f(xi) - f(eta);
    out[0] = d * d;
    out[1] = 0;
  };
  P.single = [&f, s](const GroupPoint& xi, double* out) {
    const double v = f(xi);
    out[0] = 0;
    out[1] = v * v * hardy_weight(xi, s);
  };
  const JointEstimate J = pair_integral(G, P, spec);
  const double a = constants::groundstate_const(G.n(), G.m(), s);
  const double D = a * J.mean[0], I = J.mean[1];
  if (!(I > 0)) throw NumericError("hardy quotient: weighted norm is zero");
  const double value = D / I;
  const Estimate e = J.delta(value, {a / I, -value / I}, spec);
  return report(e, constants::hardy_const(G.n(), G.m(), s), false, describe(f, s, spec));
}

QuotientReport weighted_quotient(const GroupSpec& G, const ScalarField& f, double s, double p,
                                 const IntegrationSpec& spec) {
  check_order(s);
  const int Q = G.Q();
  const double q = 2.0 * Q / (Q - 2 * s);
  require(p >= 2 && p <= q, "weighted quotient: 2 <= p <= 2Q/(Q-2s) required");
  require(2 * f.decay + 2 * s > Q, "weighted quotient: Dirichlet form diverges (decay <= (Q-2s)/2)");
  // U^(q-p) = B^-wexp
  const double wexp = (Q - 2 * s) * (q - p) / 4;
  require(f.decay * p + 4 * wexp > Q, "weighted quotient: weighted norm diverges");
  PairProblem P = dirichlet_problem(G, f, s, 2);
  P.pair = [&f](const GroupPoint& xi, const GroupPoint& eta, double* out) {
    const double d = f(xi) - f(eta);
    out[0] = d * d;
    out[1] = 0;
  };
  P.single = [&f, p, wexp](const GroupPoint& xi, double* out) {
    out[0] = 0;
    out[1] = std::pow(std::abs(f(xi)), p) * hardy_weight(xi, wexp);
  };
  const JointEstimate J = pair_integral(G, P, spec);
  const double a = constants::groundstate_const(G.n(), G.m(), s);
  const double D = a * J.mean[0], I = J.mean[1];
  if (!(I > 0)) throw NumericError("weighted quotient: weighted norm is zero");
  const double value = D / std::pow(I, 2 / p);
  const Estimate e = J.delta(value, {a / std::pow(I, 2 / p), -(2 / p) * value / I}, spec);
  const double sharp = constants::hardy_const(G.n(), G.m(), s) *
                       std::pow(constants::sphere_volume(G.n(), G.m()), 1 - 2 / p);
  return report(e, sharp, false, describe(f, s, spec) + ";p=" + std::to_string(p));
}

QuotientReport hls_value(const GroupSpec& G, const ScalarField& f, const ScalarField& g, double s,
                         const IntegrationSpec& spec) {
  check_order(s);
  const int Q = G.Q();
  const double p = 2.0 * Q / (Q + 2 * s);
  require(f.decay * p > Q && g.decay * p > Q, "hls: fields must lie in L^p, p = 2Q/(Q+2s)");
  PairProblem P;
  P.components = 3;
  P.gamma = Q - 2 * s;
  P.head_order = 0;
  P.tail_decay = std::min(f.decay, g.decay);
  P.pair = [&f, &g](const GroupPoint& xi, const GroupPoint& eta, double* out) {
    out[0] = 0.5 * (f(xi) * g(eta) + f(eta) * g(xi));
    out[1] = out[2] = 0;
  };
  P.single = [&f, &g, p](const GroupPoint& xi, double* out) {
    out[0] = 0;
    out[1] = std::pow(std::abs(f(xi)), p);
    out[2] = std::pow(std::abs(g(xi)), p);
  };
  P.center = f.center;
  P.scale = f.scale;
  P.field_decay = std::min(f.decay, g.decay);
  P.rotation_invariant = f.symmetry == Symmetry::cylindrical &&
                         g.symmetry == Symmetry::cylindrical && centered(f) && centered(g);
  const JointEstimate J = pair_integral(G, P, spec);
  const double I = J.mean[0], F = J.mean[1], H = J.mean[2];
  if (!(F > 0 && H > 0)) throw NumericError("hls: zero L^p norm");
  const double norm = std::pow(F, 1 / p) * std::pow(H, 1 / p);
  const double value = I / norm;
  const Estimate e = J.delta(value, {1 / norm, -value / (p * F), -value / (p * H)}, spec);
  return report(e, constants::hls_const(G.n(), G.m(), s), true,
                describe(f, s, spec) + " g=" + g.name);
}

LogSobPair logsob_pair(const GroupSpec& G, const ScalarField& f, const IntegrationSpec& spec) {
  const int Q = G.Q();
  const double V = constants::sphere_volume(G.n(), G.m());
  const ScalarField J = cayley_jacobian(G);
  IntegrationSpec sspec = spec;
  if (G.n() == 1) {
    sspec.method = Method::polar_grid;
    sspec.nodes = std::max(spec.nodes, 24);
    sspec.radial_nodes = std::max(spec.radial_nodes, 16);
  }
  auto checked = [&f](const GroupPoint& p) {
    const double v = f(p);
    if (v < 0) throw PreconditionError("logsob: f must be nonnegative");
    return v;
  };
  ScalarField mass;
  mass.name = "f^2 J";
  mass.eval = [checked, J](const GroupPoint& p) {
    const double v = checked(p);
    return v * v * J(p);
  };
  mass.decay = 2 * f.decay + 2 * Q;
  mass.center = G.identity();
  mass.symmetry = f.symmetry == Symmetry::cylindrical && centered(f) ? Symmetry::cylindrical
                                                                      : Symmetry::none;
  const Estimate I = integrate_G(G, mass, sspec);
  if (!(I.value > 0)) throw NumericError("logsob: int f^2 J is zero");
  const double c = std::sqrt(V / I.value);
  ScalarField ent = mass;
  ent.name = "f^2 ln f^2 J";
  ent.eval = [checked, J, c](const GroupPoint& p) {
    const double v = c * checked(p);
    return v > 0 ? v * v * std::log(v * v) * J(p) : 0.0;
  };
  const Estimate E = integrate_G(G, ent, sspec);
  const double K = constants::logsobolev_const(G.n(), G.m());
  LogSobPair out;
  out.factor = c;
  out.rhs = E;
  // E(I) = V A / I + V ln(V / I) with A = int f^2 ln f^2 J
  const double dEdI = -(E.value + V) / I.value;
  out.rhs.value = K * E.value;
  out.rhs.error = K * std::hypot(E.error, dEdI * I.error);

  PairProblem P;
  P.components = 1;
  P.gamma = Q;
  P.head_order = 2;
  P.tail_decay = Q;
  P.pair = [&f, J, c](const GroupPoint& xi, const GroupPoint& eta, double* out) {
    const double d = c * (f(xi) - f(eta));
    out[0] = d * d * std::sqrt(J(xi) * J(eta));
  };
  P.center = G.identity();
  P.scale = 1;
  P.field_decay = Q;
  P.rotation_invariant = f.symmetry == Symmetry::cylindrical && centered(f);
  out.lhs = pair_integral(G, P, spec).component(0, spec);
  return out;
}

Estimate hardy_remainder(const GroupSpec& G, const ScalarField& f, double s,
                         const IntegrationSpec& spec) {
  check_order(s);
  const int Q = G.Q();
  require(2 * f.decay + 2 * s > Q, "hardy remainder: Dirichlet form diverges");
  const ScalarField U = extremal_U(G, s);
  PairProblem P = dirichlet_problem(G, f, s, 3);
  P.pair = [&f, U](const GroupPoint& xi, const GroupPoint& eta, double* out) {
    const double fx = f(xi), fy = f(eta), ux = U(xi), uy = U(eta);
    const double d = fx - fy, dg = fx / ux - fy / uy;
    out[0] = d * d;
    out[1] = dg * dg * ux * uy;
    out[2] = 0;
  };
  P.single = [&f, s](const GroupPoint& xi, double* out) {
    const double v = f(xi);
    out[0] = out[1] = 0;
    out[2] = v * v * hardy_weight(xi, s);
  };
  const JointEstimate J = pair_integral(G, P, spec);
  const double a = constants::groundstate_const(G.n(), G.m(), s);
  const double N = constants::hardy_const(G.n(), G.m(), s);
  return J.combine({a, -a, -N}, spec);
}

// ---- extension ----

namespace {

double poisson_prefactor(const GroupSpec& G, double s) {  // C1 4^s int phi_{s,1}; equals 1
  return constants::poisson_norm(G.n(), G.m(), s) * std::pow(4.0, s) *
         constants::cylinder_mass(G.n(), G.m(), (G.Q() + 2 * s) / 4);
}

}  // namespace

ExtensionField poisson_extension(const GroupSpec& G, const ScalarField& f, double s) {
  check_order(s);
  require(static_cast<bool>(f.eval), "poisson extension: field has no evaluator");
  ExtensionField u;
  u.group = &G;
  u.boundary = f;
  u.s = s;
  return u;
}

Estimate ExtensionField::eval(const GroupPoint& xi, double rho, const IntegrationSpec& spec) const {
  require(group != nullptr, "extension: no group");
  require(rho >= 0, "extension: rho >= 0 required");
  const GroupSpec& G = *group;
  G.check(xi);
  const double ex = extra.value ? extra.value(xi, rho) : 0.0;
  if (rho == 0) {
    Estimate e;
    e.value = boundary(xi) + ex;
    e.spec_used = spec;
    return e;
  }
  const ScalarField kern = phi(G, s, 1.0);
  const ScalarField f = boundary;
  const double half = rho / 2;
  ScalarField h;
  h.name = "extension integrand";
  h.eval = [&G, f, kern, xi, half](const GroupPoint& y) {
    return f(fast::mul(G, xi, fast::inv(fast::dil(half, y)))) * kern(y);
  };
  h.decay = kern.decay;
  h.center = G.identity();
  Estimate e = integrate_G(G, h, spec);
  const double c = poisson_prefactor(G, s) / constants::cylinder_mass(G.n(), G.m(), (G.Q() + 2 * s) / 4);
  e.value = c * e.value + ex;
  e.error *= c;
  return e;
}

Estimate ExtensionField::neumann(const GroupPoint& xi, double rho,
                                 const IntegrationSpec& spec) const {
  require(group != nullptr, "extension: no group");
  require(rho > 0, "neumann: rho > 0 required");
  const GroupSpec& G = *group;
  G.check(xi);
  const ScalarField kern = phi(G, s, 1.0);
  const ScalarField f = boundary;
  const double f0 = f(xi), half = rho / 2;
  ScalarField h;
  h.name = "neumann integrand";
  h.eval = [&G, f, kern, xi, half, f0](const GroupPoint& y) {
    return (f0 - f(fast::mul(G, xi, fast::inv(fast::dil(half, y))))) * kern(y);
  };
  h.decay = kern.decay;
  h.center = G.identity();
  Estimate e = integrate_G(G, h, spec);
  const double c = poisson_prefactor(G, s) /
                   constants::cylinder_mass(G.n(), G.m(), (G.Q() + 2 * s) / 4) * 2 * s /
                   std::pow(rho, 2 * s);
  e.value *= c;
  e.error *= c;
  return e;
}

ExtensionTerm extension_bump(const GroupSpec& G, const GroupPoint& center, double width,
                             double amplitude) {
  const ScalarField b = bump(G, center, width);
  const GroupSpec* Gp = &G;
  ExtensionTerm t;
  t.value = [b, amplitude](const GroupPoint& xi, double rho) {
    return amplitude * b(xi) * rho * rho * std::exp(-rho * rho);
  };
  t.grad = [Gp, b, amplitude](const GroupPoint& xi, double rho, double* hg, double* wg,
                              double* dr) {
    GroupPoint g;
    b.gradient(xi, g);
    const double r = rho * rho * std::exp(-rho * rho);
    double h[kMaxZ];
    horizontal_from_euclidean(*Gp, xi, g, h);
    for (int j = 0; j < xi.nz; ++j) hg[j] = amplitude * r * h[j];
    for (int k = 0; k < xi.nw; ++k) wg[k] = amplitude * r * g.w[k];
    *dr = amplitude * b(xi) * 2 * rho * (1 - rho * rho) * std::exp(-rho * rho);
  };
  return t;
}

// Energy density |d_rho u|^2 + rho^2/4 |grad_w u|^2 + |grad_G u|^2, integrated against
// rho^(1-2s) d rho d xi. For u = P(f):
//   P(f)(xi, rho) = E f(xi o eta^-1), eta = delta_{rho/2} Y, Y ~ phi_{s,1} / int phi_{s,1}
//   X_j P(f) = E[(X_j f)(p) + sum_k <U^(k)^T eta_z, e_j> d_wk f(p)],  p = xi o eta^-1
//   d_rho P(f) = E[(f(p) - f(xi)) score],  score = (2s - (Q+2s) A(Y)/B(Y)) / rho
// For rho beyond a few field scales the xi-derivatives are also taken on the kernel.
// Squares of expectations use the product of two independent half-sample means.
JointEstimate trace_energy_parts(const GroupSpec& G, const ExtensionField& u,
                                 const IntegrationSpec& spec) {
  const double s = u.s;
  check_order(s);
  const ScalarField& f = u.boundary;
  require(static_cast<bool>(f.gradient), "trace energy: boundary field needs an analytic gradient");
  const int Q = G.Q(), d = G.dim_z(), m = G.m(), dim = 1 + m + d;
  require(2 * f.decay + 2 * s > Q, "trace energy: boundary data has infinite energy");
  const double e = 2 - 2 * s;
  const double rlo = 1e-3, rhi = 1e3;
  const quad::RadialRule rr = quad::radial_rule(rlo, rhi, std::max(2, spec.radial_nodes / 2), e);
  const int nrho = static_cast<int>(rr.rho.size());
  const long No = std::max(256L, spec.samples / nrho);
  const quad::CylinderSampler Ysamp(G, (Q + 2 * s) / 4);
  const quad::CylinderSampler Xsamp(G, (Q + 2.0) / 4);
  const quad::CylinderSampler Fsamp(G, (Q + 1.0) / 4);
  struct {
    GroupPoint center;
    double scale;
  } const fr0{f.center.nz == 0 ? G.identity() : f.center, f.scale};
  const bool has_extra = static_cast<bool>(u.extra.grad);
  constexpr int K = kTraceInner;
  constexpr double kScoreSwitch = 2.0;  // rho / scale beyond which kernel scores replace gradients

  Eigen::Vector3d total = Eigen::Vector3d::Zero();
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  Eigen::Vector3d first = Eigen::Vector3d::Zero(), last = Eigen::Vector3d::Zero();
  for (int j = 0; j < nrho; ++j) {
    const double rho = rr.rho[j];
    const double lambda = fr0.scale * std::sqrt(1 + rho * rho / 4);
    const double lq = std::pow(lambda, Q);
    const bool score_mode = rho > kScoreSwitch * fr0.scale;
    const double kvol = std::pow(rho / 2, Q), fvol = std::pow(fr0.scale, Q);
    const std::uint64_t seed = quad::splitmix64(spec.seed ^ (0xA24BAED4963EE407ULL * (j + 1)));
    auto acc = quad::run_batches(No, 9, spec.threads, [&](long b, long begin, long end, double* a) {
      quad::Rng rng = quad::batch_rng(seed, b);
      std::bernoulli_distribution coin(0.5);
      GroupPoint x, y, grad;
      double ha[kMaxZ + kMaxW + 1], hb[kMaxZ + kMaxW + 1], ut[kMaxZ], ue[kMaxZ];
      double xg[kMaxZ + kMaxW + 1];
      for (long i = begin; i < end; ++i) {
        Xsamp.sample(rng, x);
        const GroupPoint xi = fast::mul(G, fr0.center, fast::dil(lambda, x));
        const double f0 = f(xi);
        std::fill(ha, ha + dim, 0.0);
        std::fill(hb, hb + dim, 0.0);
        for (int k = 0; k < K; ++k) {
          GroupPoint eta, p;
          double wt = 1;
          if (score_mode && coin(rng)) {
            // defensive mixture: half the draws place p near the field's mass
            Fsamp.sample(rng, y);
            p = fast::mul(G, fr0.center, fast::dil(fr0.scale, y));
            eta = fast::mul(G, fast::inv(p), xi);
            y = fast::dil(2 / rho, eta);
          } else {
            Ysamp.sample(rng, y);
            eta = fast::dil(rho / 2, y);
            p = fast::mul(G, xi, fast::inv(eta));
          }
          const double A = 1 + 0.25 * y.z2();
          const double B = A * A + y.w2();
          if (score_mode) {
            const double kq = std::exp(Ysamp.log_density(y)) / kvol;
            const GroupPoint xf = fast::dil(1 / fr0.scale, fast::mul(G, fast::inv(fr0.center), p));
            const double hq = std::exp(Fsamp.log_density(xf)) / fvol;
            wt = kq / (0.5 * kq + 0.5 * hq);
          }
          const double fp = f(p);
          const double score = (2 * s - (Q + 2 * s) * A / B) / rho;
          double* h = k < K / 2 ? ha : hb;
          h[0] += wt * (fp - f0) * score;
          if (score_mode) {
            // derivatives moved onto the kernel: X log k(eta) = (2/rho) X log k1(y)
            const double c = -wt * (Q + 2 * s) / (4 * B) * (fp - f0);
            for (int r = 0; r < m; ++r) h[1 + r] += 0.5 * rho * c * (8 / (rho * rho)) * y.w[r];
            for (int jz = 0; jz < d; ++jz) h[1 + m + jz] += c * (2 / rho) * A * y.z[jz];
            for (int r = 0; r < m; ++r) {
              G.apply_transpose(r, y.z.data(), ue);
              for (int jz = 0; jz < d; ++jz) h[1 + m + jz] += c * (2 / rho) * ue[jz] * y.w[r];
            }
            continue;
          }
          f.gradient(p, grad);
          for (int r = 0; r < m; ++r) h[1 + r] += 0.5 * rho * grad.w[r];
          for (int jz = 0; jz < d; ++jz) h[1 + m + jz] += grad.z[jz];
          for (int r = 0; r < m; ++r) {
            G.apply_transpose(r, p.z.data(), ut);
            G.apply_transpose(r, eta.z.data(), ue);
            for (int jz = 0; jz < d; ++jz) h[1 + m + jz] += (0.5 * ut[jz] + ue[jz]) * grad.w[r];
          }
        }
        double eP = 0;
        for (int c = 0; c < dim; ++c) {
          ha[c] /= K / 2;
          hb[c] /= K / 2;
          eP += ha[c] * hb[c];
        }
        double cross = 0, eX = 0;
        if (has_extra) {
          u.extra.grad(xi, rho, xg + 1 + m, xg + 1, xg);
          for (int r = 0; r < m; ++r) xg[1 + r] *= 0.5 * rho;
          for (int c = 0; c < dim; ++c) {
            cross += 0.5 * (ha[c] + hb[c]) * xg[c];
            eX += xg[c] * xg[c];
          }
        }
        const double iw = lq * std::exp(-Xsamp.log_density(x));
        const double v[3] = {eP * iw, cross * iw, eX * iw};
        for (int c = 0; c < 3; ++c)
          if (!std::isfinite(v[c])) throw NumericError("trace energy: non-finite sample");
        int q = 3;
        for (int c = 0; c < 3; ++c) a[c] += v[c];
        for (int c = 0; c < 3; ++c)
          for (int c2 = c; c2 < 3; ++c2) a[q++] += v[c] * v[c2];
      }
    });
    Eigen::Vector3d mean;
    for (int c = 0; c < 3; ++c) mean(c) = acc[c] / No;
    Eigen::Matrix3d C;
    int q = 3;
    for (int c = 0; c < 3; ++c)
      for (int c2 = c; c2 < 3; ++c2) C(c, c2) = C(c2, c) = (acc[q++] / No - mean(c) * mean(c2)) / (No - 1);
    total += rr.w[j] * mean;
    cov += rr.w[j] * rr.w[j] * C;
    if (j == 0) first = mean;
    if (j == nrho - 1) last = mean;
  }
  // head: energy ~ rho^kappa, kappa = min(0, 4s-2); tail: ~ rho^-beta, beta = 2 decay + 2 - Q
  const double kappa = std::min(0.0, 4 * s - 2);
  const double beta = 2 * f.decay + 2 - Q;
  const double r0 = rr.rho.front(), r1 = rr.rho.back();
  total += first * std::pow(rlo / r0, kappa) * std::pow(rlo, e) / (e + kappa);
  if (beta > e) total += last * std::pow(r1 / rhi, beta) * std::pow(rhi, e) / (beta - e);
  JointEstimate J;
  J.mean = {total(0), total(1), total(2)};
  J.cov = cov;
  J.evaluations = static_cast<long>(nrho) * No * K;
  return J;
}

Estimate trace_energy(const GroupSpec& G, const ExtensionField& u, const IntegrationSpec& spec) {
  return trace_energy_parts(G, u, spec).combine({1, 2, 1}, spec);
}

}  // namespace htype
