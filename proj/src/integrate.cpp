// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/integrate.hpp"

#include "htype/constants.hpp"
#include "htype/errors.hpp"
#include "htype/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace htype {

namespace {

constexpr double kRhoLo = 1e-6;  // inner radius of radial rules, relative to the local scale

struct Frame {
  GroupPoint c;
  double lambda;
};

Frame frame_of(const GroupSpec& G, const GroupPoint& center, double scale) {
  require(scale > 0 && std::isfinite(scale), "field scale must be positive and finite");
  Frame f{center.nz == 0 && center.nw == 0 ? G.identity() : center, scale};
  G.check(f.c);
  return f;
}

std::string describe(const GroupPoint& p) {
  std::ostringstream os;
  os.precision(6);
  os << "(";
  for (int i = 0; i < p.nz; ++i) os << (i ? "," : "") << p.z[i];
  os << ";";
  for (int k = 0; k < p.nw; ++k) os << (k ? "," : "") << p.w[k];
  os << ")";
  return os.str();
}

[[noreturn]] void non_finite(const char* what, const GroupPoint& p) {
  throw NumericError(std::string(what) + ": non-finite sample at " + describe(p));
}

Estimate finish_mc(double s1, double s2, long N, const IntegrationSpec& spec) {
  Estimate e;
  const double mean = s1 / N;
  const double var = std::max(0.0, (s2 / N - mean * mean) * N / std::max(1L, N - 1));
  e.value = mean;
  e.error = std::sqrt(var / N);
  e.spec_used = spec;
  e.evaluations = N;
  return e;
}

// ---- single integrals ----

Estimate integrate_mc(const GroupSpec& G, const ScalarField& f, const IntegrationSpec& spec) {
  const int Q = G.Q();
  const double fourb = spec.outer_exponent > 0 ? spec.outer_exponent
                                               : Q + std::min(2.0, f.decay - Q);
  require(fourb > Q, "outer density exponent must exceed Q");
  const quad::CylinderSampler S(G, fourb / 4);
  const Frame fr = frame_of(G, f.center, f.scale);
  const double lq = std::pow(fr.lambda, Q);
  const long N = spec.samples;
  auto acc = quad::run_batches(N, 2, spec.threads, [&](long b, long begin, long end, double* a) {
    quad::Rng rng = quad::batch_rng(spec.seed, b);
    GroupPoint x;
    for (long i = begin; i < end; ++i) {
      S.sample(rng, x);
      const GroupPoint xi = fast::mul(G, fr.c, fast::dil(fr.lambda, x));
      const double v = f(xi);
      if (!std::isfinite(v)) non_finite("integrate", xi);
      const double y = v * lq * std::exp(-S.log_density(x));
      a[0] += y;
      a[1] += y * y;
    }
  });
  return finish_mc(acc[0], acc[1], N, spec);
}

double polar_sum(const GroupSpec& G, const ScalarField& f, const Frame& fr, int theta_nodes,
                 int angle_nodes, int radial_nodes, double R, bool reduced, long& evals) {
  const int Q = G.Q();
  const quad::SigmaRule sig = quad::sigma_rule(G, theta_nodes, angle_nodes, reduced);
  const double lo = 1e-4;
  const quad::RadialRule rr = quad::radial_rule(lo, R, radial_nodes, Q);
  auto shell = [&](double rho) {
    double acc = 0;
    for (std::size_t i = 0; i < sig.pts.size(); ++i) {
      const GroupPoint xi = fast::mul(G, fr.c, fast::dil(fr.lambda * rho, sig.pts[i]));
      const double v = f(xi);
      if (!std::isfinite(v)) non_finite("integrate", xi);
      acc += sig.w[i] * v;
    }
    evals += static_cast<long>(sig.pts.size());
    return acc;
  };
  double total = 0, first = 0, last = 0;
  for (std::size_t j = 0; j < rr.rho.size(); ++j) {
    const double h = shell(rr.rho[j]);
    if (j == 0) first = h;
    last = h;
    total += rr.w[j] * h;
  }
  total += first * std::pow(lo, Q) / Q;
  if (f.decay > Q) {
    const double rl = rr.rho.back();
    total += last * std::pow(rl / R, f.decay) * std::pow(R, Q) / (f.decay - Q);
  }
  return total * std::pow(fr.lambda, Q);
}

Estimate integrate_polar(const GroupSpec& G, const ScalarField& f, const IntegrationSpec& spec) {
  const Frame fr = frame_of(G, f.center, f.scale);
  const bool reduced = f.symmetry == Symmetry::cylindrical && fr.c.is_zero();
  const int th = std::max(4, spec.nodes), an = std::max(2, spec.nodes),
            rn = std::max(4, spec.radial_nodes);
  Estimate e;
  e.value = polar_sum(G, f, fr, th, an, rn, spec.truncation_radius, reduced, e.evaluations);
  const double half = polar_sum(G, f, fr, std::max(2, th / 2), std::max(1, an / 2),
                                std::max(2, rn / 2), spec.truncation_radius, reduced, e.evaluations);
  e.error = std::abs(e.value - half);
  e.richardson = true;
  e.spec_used = spec;
  return e;
}

// x_i = lambda t/(1-t^2), t in (-1, 1), in each Euclidean coordinate around the center.
double tensor_sum(const GroupSpec& G, const ScalarField& f, const Frame& fr, int nodes,
                  long& evals) {
  const int d = G.dim_z(), m = G.m(), D = d + m;
  const quad::Rule r = quad::gauss_legendre(nodes);
  std::vector<double> x(nodes), w(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double t = r.x[i], u = 1 - t * t;
    x[i] = t / u;
    w[i] = r.w[i] * (1 + t * t) / (u * u);
  }
  std::vector<int> idx(D, 0);
  double total = 0;
  const double l2 = fr.lambda * fr.lambda;
  for (;;) {
    GroupPoint y(d, m);
    double wt = 1;
    for (int a = 0; a < d; ++a) {
      y.z[a] = fr.lambda * x[idx[a]];
      wt *= fr.lambda * w[idx[a]];
    }
    for (int k = 0; k < m; ++k) {
      y.w[k] = l2 * x[idx[d + k]];
      wt *= l2 * w[idx[d + k]];
    }
    const GroupPoint xi = fast::mul(G, fr.c, y);
    const double v = f(xi);
    if (!std::isfinite(v)) non_finite("integrate", xi);
    total += wt * v;
    ++evals;
    int a = 0;
    while (a < D && ++idx[a] == nodes) idx[a++] = 0;
    if (a == D) break;
  }
  return total;
}

Estimate integrate_tensor(const GroupSpec& G, const ScalarField& f, const IntegrationSpec& spec) {
  const int D = G.dim_z() + G.m();
  const int nodes = std::max(4, spec.nodes);
  require(std::pow(static_cast<double>(nodes), D) <= 5e7,
          "tensor-grid: nodes^(2n+m) must not exceed 5e7; use polar-grid or monte-carlo");
  const Frame fr = frame_of(G, f.center, f.scale);
  Estimate e;
  e.value = tensor_sum(G, f, fr, nodes, e.evaluations);
  e.error = std::abs(e.value - tensor_sum(G, f, fr, nodes / 2, e.evaluations));
  e.richardson = true;
  e.spec_used = spec;
  return e;
}

// ---- double integrals ----

double partition_g(const GroupPoint& x) {
  const double r4 = fast::norm4(x);
  return (1 + r4) * (1 + r4);
}

double choose_outer(const GroupSpec& G, const PairProblem& P, const IntegrationSpec& spec) {
  const int Q = G.Q();
  const double beta_o = 2 * P.field_decay + (P.gamma - Q);
  require(beta_o > Q, "double integral diverges: fields decay too slowly for this kernel");
  if (spec.outer_exponent > 0) {
    require(spec.outer_exponent > Q, "outer density exponent must exceed Q");
    return spec.outer_exponent;
  }
  // Dirichlet-type kernels: the outer point is the smaller-norm one, so the outer integrand
  // decays like |xi|^-beta_o; matching that tail cut the scatter of D(U) by 4x at s = 0.25.
  if (P.gamma > Q) return std::min(beta_o, 2.0 * Q);
  const double se = std::abs(P.gamma - Q) / 2;
  double fourb = se > 0 ? Q + 2 * se : Q + 1.0;
  fourb = std::min(fourb, beta_o);
  return std::min(fourb, 0.5 * (Q + 2 * beta_o - Q));
}

struct InnerRule {
  quad::RadialRule unit;  // on [kRhoLo, R] for local scale 1
  double e;
};

// 2 int_0^inf rho^(e-1) int_Sigma w Phi d sigma d rho for one sigma (or a sigma rule), added
// into out[0..k).
template <class SigmaFn>
void inner_radial(const GroupSpec& G, const PairProblem& P, const InnerRule& rule,
                  const GroupPoint& xi, const GroupPoint& x, double lambda, double gx, double ell,
                  SigmaFn&& sigma_weight, const GroupPoint& sigma, double* out, double* buf,
                  double* first, double* last) {
  const int K = P.components;
  const double scale_e = std::pow(ell, rule.e);
  for (int c = 0; c < K; ++c) first[c] = last[c] = 0;
  const std::size_t nr = rule.unit.rho.size();
  GroupPoint eta, y;
  for (std::size_t j = 0; j < nr; ++j) {
    const double rho = ell * rule.unit.rho[j];
    const GroupPoint step = fast::dil(rho, sigma);
    fast::mul(G, xi, step, eta);
    fast::mul(G, x, fast::dil(1.0 / lambda, step), y);
    const double gy = partition_g(y);
    const double wgt = gy / (gx + gy);
    P.pair(xi, eta, buf);
    const double W = scale_e * rule.unit.w[j] * wgt * sigma_weight;
    for (int c = 0; c < K; ++c) {
      if (!std::isfinite(buf[c])) non_finite("pair integral", eta);
      out[c] += W * buf[c];
      if (j == 0) first[c] = wgt * buf[c];
      if (j + 1 == nr) last[c] = wgt * buf[c];
    }
  }
  const double r0 = ell * rule.unit.rho.front(), rlo = ell * rule.unit.lo;
  const double r1 = ell * rule.unit.rho.back(), rhi = ell * rule.unit.hi;
  const double e = rule.e;
  for (int c = 0; c < K; ++c) {
    double head = first[c] * std::pow(rlo / r0, P.head_order) * std::pow(rlo, e) / (e + P.head_order);
    double tail = 0;
    if (P.tail_decay > e)
      tail = last[c] * std::pow(r1 / rhi, P.tail_decay) * std::pow(rhi, e) / (P.tail_decay - e);
    out[c] += sigma_weight * (head + tail);
  }
}

JointEstimate pair_mc(const GroupSpec& G, const PairProblem& P, const IntegrationSpec& spec) {
  const int Q = G.Q(), K = P.components;
  const double e = Q - P.gamma;
  const quad::CylinderSampler S(G, choose_outer(G, P, spec) / 4);
  const Frame fr = frame_of(G, P.center, P.scale);
  const double lq = std::pow(fr.lambda, Q);
  const double area = constants::unit_sphere_area(G.n(), G.m());
  const InnerRule rule{quad::radial_rule(kRhoLo, spec.truncation_radius,
                                         std::max(2, spec.radial_nodes), e),
                       e};
  const long N = spec.samples;
  const int width = K + K * (K + 1) / 2;
  auto acc = quad::run_batches(N, width, spec.threads, [&](long b, long begin, long end, double* a) {
    quad::Rng rng = quad::batch_rng(spec.seed, b);
    GroupPoint x, sigma;
    std::vector<double> tot(K), buf(K), first(K), last(K), sv(K);
    for (long i = begin; i < end; ++i) {
      S.sample(rng, x);
      quad::sample_sigma(G, rng, sigma);
      const GroupPoint xi = fast::mul(G, fr.c, fast::dil(fr.lambda, x));
      const double ell = fr.lambda * std::max(1.0, fast::nrm(x));
      std::fill(tot.begin(), tot.end(), 0.0);
      inner_radial(G, P, rule, xi, x, fr.lambda, partition_g(x), ell, area, sigma, tot.data(),
                   buf.data(), first.data(), last.data());
      for (int c = 0; c < K; ++c) tot[c] *= 2;
      if (P.single) {
        P.single(xi, sv.data());
        for (int c = 0; c < K; ++c) tot[c] += sv[c];
      }
      const double iw = lq * std::exp(-S.log_density(x));
      int q = K;
      for (int c = 0; c < K; ++c) {
        const double y = tot[c] * iw;
        if (!std::isfinite(y)) non_finite("pair integral", xi);
        tot[c] = y;
        a[c] += y;
      }
      for (int c = 0; c < K; ++c)
        for (int c2 = c; c2 < K; ++c2) a[q++] += tot[c] * tot[c2];
    }
  });
  JointEstimate J;
  J.mean.resize(K);
  J.cov = Eigen::MatrixXd::Zero(K, K);
  for (int c = 0; c < K; ++c) J.mean[c] = acc[c] / N;
  int q = K;
  for (int c = 0; c < K; ++c)
    for (int c2 = c; c2 < K; ++c2) {
      const double cv = (acc[q++] / N - J.mean[c] * J.mean[c2]) / std::max(1L, N - 1);
      J.cov(c, c2) = J.cov(c2, c) = cv;
    }
  J.evaluations = N * static_cast<long>(rule.unit.rho.size());
  return J;
}

std::vector<double> pair_grid_once(const GroupSpec& G, const PairProblem& P,
                                   const IntegrationSpec& spec, int th, int an, int rn,
                                   long& evals) {
  const int Q = G.Q(), K = P.components;
  const double e = Q - P.gamma;
  const Frame fr = frame_of(G, P.center, P.scale);
  const quad::SigmaRule outer_sig = quad::sigma_rule_rotation_reduced(G, th);
  const quad::SigmaRule inner_sig = quad::sigma_rule(G, th, an, false);
  const double Rlo = 1e-3, Rhi = spec.truncation_radius;
  const quad::RadialRule outer_r = quad::radial_rule(Rlo, Rhi, rn, Q);
  const InnerRule rule{quad::radial_rule(kRhoLo, spec.truncation_radius, rn, e), e};
  const double beta_o = 2 * P.field_decay + P.gamma - Q;
  const long per_shell = static_cast<long>(outer_sig.pts.size());
  const long total = per_shell * static_cast<long>(outer_r.rho.size());
  // acc layout: [sum over all shells, first shell, last shell] x K
  const long nR = static_cast<long>(outer_r.rho.size());
  auto acc = quad::run_batches(
      nR, 3 * K, spec.threads,
      [&](long, long begin, long end, double* a) {
        std::vector<double> tot(K), buf(K), first(K), last(K), sv(K), shell(K);
        for (long r = begin; r < end; ++r) {
          std::fill(shell.begin(), shell.end(), 0.0);
          const double R = outer_r.rho[r];
          for (long o = 0; o < per_shell; ++o) {
            const GroupPoint x = fast::dil(R, outer_sig.pts[o]);
            const GroupPoint xi = fast::mul(G, fr.c, fast::dil(fr.lambda, x));
            const double ell = fr.lambda * std::max(1.0, R);
            const double gx = partition_g(x);
            std::fill(tot.begin(), tot.end(), 0.0);
            for (std::size_t s = 0; s < inner_sig.pts.size(); ++s)
              inner_radial(G, P, rule, xi, x, fr.lambda, gx, ell, inner_sig.w[s], inner_sig.pts[s],
                           tot.data(), buf.data(), first.data(), last.data());
            for (int c = 0; c < K; ++c) tot[c] *= 2;
            if (P.single) {
              P.single(xi, sv.data());
              for (int c = 0; c < K; ++c) tot[c] += sv[c];
            }
            for (int c = 0; c < K; ++c) shell[c] += outer_sig.w[o] * tot[c];
          }
          for (int c = 0; c < K; ++c) {
            a[c] += outer_r.w[r] * shell[c];
            if (r == 0) a[K + c] = shell[c];
            if (r == nR - 1) a[2 * K + c] = shell[c];
          }
        }
      },
      1);
  evals += total * static_cast<long>(inner_sig.pts.size() * rule.unit.rho.size());
  std::vector<double> out(K);
  const double lq = std::pow(fr.lambda, Q);
  const double r0 = outer_r.rho.front(), r1 = outer_r.rho.back();
  for (int c = 0; c < K; ++c) {
    double v = acc[c];
    v += acc[K + c] * std::pow(Rlo, Q) / Q;
    (void)r0;
    if (beta_o > Q) v += acc[2 * K + c] * std::pow(r1 / Rhi, beta_o) * std::pow(Rhi, Q) / (beta_o - Q);
    out[c] = v * lq;
  }
  return out;
}

JointEstimate pair_grid(const GroupSpec& G, const PairProblem& P, const IntegrationSpec& spec) {
  require(G.n() == 1, "polar-grid double integrals need n = 1; use monte-carlo");
  require(P.rotation_invariant,
          "polar-grid double integrals need a rotation-invariant problem centered at the identity");
  const int th = std::max(4, spec.nodes), an = std::max(2, spec.nodes / 2),
            rn = std::max(4, spec.radial_nodes);
  JointEstimate J;
  J.mean = pair_grid_once(G, P, spec, th, an, rn, J.evaluations);
  J.coarse = pair_grid_once(G, P, spec, std::max(2, th / 2), std::max(1, an / 2),
                            std::max(2, rn / 2), J.evaluations);
  J.richardson = true;
  const int K = P.components;
  J.cov = Eigen::MatrixXd::Zero(K, K);
  for (int c = 0; c < K; ++c) {
    const double d = J.mean[c] - J.coarse[c];
    J.cov(c, c) = d * d;
  }
  return J;
}

Estimate scaled_estimate(Estimate e, double c) {
  e.value *= c;
  e.error *= std::abs(c);
  return e;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::tensor_grid: return "tensor-grid";
    case Method::polar_grid: return "polar-grid";
    case Method::monte_carlo: return "monte-carlo";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "tensor-grid") return Method::tensor_grid;
  if (s == "polar-grid") return Method::polar_grid;
  if (s == "monte-carlo" || s == "mc") return Method::monte_carlo;
  throw PreconditionError("unknown method '" + s + "' (tensor-grid|polar-grid|monte-carlo)");
}

Estimate integrate_G(const GroupSpec& G, const ScalarField& f, const IntegrationSpec& spec) {
  require(static_cast<bool>(f.eval), "integrate: field has no evaluator");
  require(f.decay > G.Q(), "integrate: field must decay faster than |xi|^-Q (decay " +
                               std::to_string(f.decay) + " <= Q = " + std::to_string(G.Q()) + ")");
  switch (spec.method) {
    case Method::monte_carlo:
      require(spec.samples >= 2, "integrate: samples >= 2");
      return integrate_mc(G, f, spec);
    case Method::polar_grid: return integrate_polar(G, f, spec);
    case Method::tensor_grid: return integrate_tensor(G, f, spec);
  }
  throw PreconditionError("integrate: unknown method");
}

JointEstimate pair_integral(const GroupSpec& G, const PairProblem& problem,
                            const IntegrationSpec& spec) {
  require(problem.components >= 1, "pair integral: at least one component");
  require(static_cast<bool>(problem.pair), "pair integral: no pair integrand");
  require(problem.gamma < G.Q() + 2, "pair integral: kernel too singular (gamma >= Q + 2)");
  switch (spec.method) {
    case Method::monte_carlo:
      require(spec.samples >= 2, "pair integral: samples >= 2");
      return pair_mc(G, problem, spec);
    case Method::polar_grid: return pair_grid(G, problem, spec);
    case Method::tensor_grid:
      throw PreconditionError("tensor-grid does not support double integrals");
  }
  throw PreconditionError("pair integral: unknown method");
}

double pair_outer_exponent(const GroupSpec& G, double s, double decay) {
  return std::min(2 * decay + 2 * s, 2.0 * G.Q());
}

Estimate JointEstimate::component(int i, const IntegrationSpec& spec) const {
  std::vector<double> c(mean.size(), 0.0);
  c.at(i) = 1;
  return combine(c, spec);
}

Estimate JointEstimate::combine(const std::vector<double>& coeff,
                                const IntegrationSpec& spec) const {
  require(coeff.size() == mean.size(), "combine: coefficient count mismatch");
  double v = 0;
  for (std::size_t i = 0; i < mean.size(); ++i) v += coeff[i] * mean[i];
  return delta(v, coeff, spec);
}

Estimate JointEstimate::delta(double value, const std::vector<double>& grad,
                              const IntegrationSpec& spec) const {
  require(grad.size() == mean.size(), "delta: gradient size mismatch");
  Estimate e;
  e.value = value;
  e.richardson = richardson;
  e.spec_used = spec;
  e.evaluations = evaluations;
  if (richardson) {
    double d = 0;
    for (std::size_t i = 0; i < mean.size(); ++i) d += grad[i] * (mean[i] - coarse[i]);
    e.error = std::abs(d);
  } else {
    Eigen::Map<const Eigen::VectorXd> g(grad.data(), static_cast<Eigen::Index>(grad.size()));
    e.error = std::sqrt(std::max(0.0, g.dot(cov * g)));
  }
  return e;
}

Estimate dirichlet_form(const GroupSpec& G, const ScalarField& f, double s,
                        const IntegrationSpec& spec) {
  return dirichlet_pairing(G, f, f, s, spec);
}

Estimate dirichlet_pairing(const GroupSpec& G, const ScalarField& f, const ScalarField& g, double s,
                           const IntegrationSpec& spec) {
  require(s > 0 && s < 1, "dirichlet form: 0 < s < 1 required");
  require(static_cast<bool>(f.eval) && static_cast<bool>(g.eval), "dirichlet form: field has no evaluator");
  const int Q = G.Q();
  const double decay = std::min(f.decay, g.decay);
  require(2 * decay + 2 * s > Q,
          "dirichlet form: fields must decay faster than |xi|^-(Q-2s)/2 for a finite energy");
  PairProblem P;
  P.components = 1;
  P.gamma = Q + 2 * s;
  P.head_order = 2;
  P.tail_decay = 0;
  const bool same = &f == &g;
  P.pair = [&f, &g, same](const GroupPoint& xi, const GroupPoint& eta, double* out) {
    const double df = f(xi) - f(eta);
    out[0] = same ? df * df : df * (g(xi) - g(eta));
  };
  P.center = f.center;
  P.scale = f.scale;
  P.field_decay = decay;
  P.rotation_invariant = f.symmetry == Symmetry::cylindrical &&
                         g.symmetry == Symmetry::cylindrical &&
                         (f.center.nz == 0 || f.center.is_zero());
  const double a = constants::groundstate_const(G.n(), G.m(), s);
  return scaled_estimate(pair_integral(G, P, spec).component(0, spec), a);
}

Estimate riesz_potential(const GroupSpec& G, const ScalarField& f, double s, const GroupPoint& at,
                         const IntegrationSpec& spec) {
  require(s > 0 && s < G.n() + 1, "riesz potential: 0 < s < n+1 required");
  require(f.decay > 2 * s, "riesz potential: field must decay faster than |xi|^-2s");
  G.check(at);
  const int Q = G.Q();
  const Frame fr = frame_of(G, f.center, f.scale);
  const GroupPoint rel = fast::dil(1.0 / fr.lambda, fast::mul(G, fast::inv(fr.c), at));
  const double ell = fr.lambda * std::max(1.0, fast::nrm(rel));
  const double e = 2 * s;
  const quad::RadialRule rr =
      quad::radial_rule(kRhoLo, spec.truncation_radius, std::max(2, spec.radial_nodes), e);
  const double c = constants::green_const(G.n(), G.m(), s);
  auto along = [&](const GroupPoint& sigma, long& evals) {
    double acc = 0, first = 0, last = 0;
    for (std::size_t j = 0; j < rr.rho.size(); ++j) {
      const GroupPoint eta = fast::mul(G, at, fast::dil(ell * rr.rho[j], sigma));
      const double v = f(eta);
      if (!std::isfinite(v)) non_finite("riesz potential", eta);
      if (j == 0) first = v;
      last = v;
      acc += rr.w[j] * v;
    }
    evals += static_cast<long>(rr.rho.size());
    acc += first * std::pow(rr.lo, e) / e;
    if (f.decay > e)
      acc += last * std::pow(rr.rho.back() / rr.hi, f.decay) * std::pow(rr.hi, e) / (f.decay - e);
    return acc * std::pow(ell, e);
  };
  Estimate out;
  out.spec_used = spec;
  const double area = constants::unit_sphere_area(G.n(), G.m());
  if (spec.method == Method::monte_carlo) {
    require(spec.samples >= 2, "riesz potential: samples >= 2");
    const long N = spec.samples;
    auto acc = quad::run_batches(N, 2, spec.threads, [&](long b, long begin, long end, double* a) {
      quad::Rng rng = quad::batch_rng(spec.seed, b);
      GroupPoint sigma;
      long ev = 0;
      for (long i = begin; i < end; ++i) {
        quad::sample_sigma(G, rng, sigma);
        const double y = area * along(sigma, ev);
        a[0] += y;
        a[1] += y * y;
      }
    });
    out = finish_mc(acc[0], acc[1], N, spec);
    out.evaluations = N * static_cast<long>(rr.rho.size());
  } else {
    const int th = std::max(4, spec.nodes), an = std::max(2, spec.nodes);
    auto grid = [&](int t, int a) {
      const quad::SigmaRule sig = quad::sigma_rule(G, t, a, false);
      double acc = 0;
      for (std::size_t i = 0; i < sig.pts.size(); ++i) acc += sig.w[i] * along(sig.pts[i], out.evaluations);
      return acc;
    };
    out.value = grid(th, an);
    out.error = std::abs(out.value - grid(std::max(2, th / 2), std::max(1, an / 2)));
    out.richardson = true;
  }
  (void)Q;
  return scaled_estimate(out, c);
}

double l_func(double a, double b, double c) {
  require(a >= 0 && std::isfinite(a), "l_func: a >= 0 required");
  require(b > 0, "l_func: b > 0 required");
  if (a == 0) require(c > b, "l_func: c > b required when a = 0");
  boost::math::quadrature::tanh_sinh<double> ts;
  const double tol = 1e-13;
  // e^-a int_0^1 e^-2ax x^(b-1) (1+x)^-c dx
  auto f1 = [=](double x, double xc) {
    const double xx = xc < 0 ? -xc : x;
    return std::exp(-2 * a * xx + (b - 1) * std::log(xx) - c * std::log1p(xx));
  };
  // tail x = 1/t: e^-a int_0^1 e^(-2a/t) t^(c-b-1) (1+t)^-c dt
  auto f2 = [=](double t, double tc) {
    const double tt = tc < 0 ? -tc : t;
    return std::exp(-2 * a / tt + (c - b - 1) * std::log(tt) - c * std::log1p(tt));
  };
  const double I1 = ts.integrate(f1, 0.0, 1.0, tol);
  const double I2 = ts.integrate(f2, 0.0, 1.0, tol);
  return std::exp(-a) * (I1 + I2);
}

double fourier_coeff(int n, int m, double s, int k, double rho, double lambda_abs) {
  require(n >= 1 && m >= 1, "fourier_coeff: n, m >= 1");
  require(std::abs(s) < n + 1 && s != 0, "fourier_coeff: 0 < |s| < n+1 required");
  require(k >= 0, "fourier_coeff: k >= 0");
  require(rho > 0 && lambda_abs > 0, "fourier_coeff: rho > 0 and |lambda| > 0 required");
  const double pi = 3.14159265358979323846;
  const double logpre = (n + 1) * std::log(2.0) + (n + (m + 1) / 2.0) * std::log(pi) +
                        s * std::log(lambda_abs) - std::lgamma((n + 1 + s) / 2) -
                        std::lgamma((n + m + s) / 2);
  return std::exp(logpre) *
         l_func(rho * lambda_abs, (2 * k + n + 1 + s) / 2, (2 * k + n + 1 - s) / 2);
}

}  // namespace htype
