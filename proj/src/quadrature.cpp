// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/quadrature.hpp"

#include "htype/constants.hpp"
#include "htype/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace htype::quad {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

Rule gauss_legendre(int n) {
  require(n >= 1, "gauss_legendre: n >= 1");
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
  }
  if (n % 2 == 1) r.x[n / 2] = 0;
  return r;
}

Rule gauss_legendre(int n, double a, double b) {
  Rule r = gauss_legendre(n);
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    r.x[i] = c + h * r.x[i];
    r.w[i] *= h;
  }
  return r;
}

RadialRule radial_rule(double lo, double hi, int nodes_per_decade, double e) {
  require(lo > 0 && hi > lo, "radial_rule: 0 < lo < hi");
  require(nodes_per_decade >= 2, "radial_rule: at least 2 nodes per decade");
  RadialRule out;
  out.lo = lo;
  out.hi = hi;
  const double tlo = std::log(lo), thi = std::log(hi);
  const int panels = std::max(1, static_cast<int>(std::ceil(std::log10(hi / lo) - 1e-9)));
  const Rule base = gauss_legendre(nodes_per_decade);
  const double width = (thi - tlo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = tlo + p * width;
    for (int i = 0; i < nodes_per_decade; ++i) {
      const double t = a + 0.5 * width * (base.x[i] + 1);
      out.rho.push_back(std::exp(t));
      out.w.push_back(0.5 * width * base.w[i] * std::exp(t * e));
    }
  }
  return out;
}

SphereRule sphere_rule(int dim, int nodes) {
  require(dim >= 1 && nodes >= 1, "sphere_rule: dim >= 1, nodes >= 1");
  SphereRule r;
  r.dim = dim;
  if (dim == 1) {
    r.pts = {1.0, -1.0};
    r.w = {1.0, 1.0};
    return r;
  }
  if (dim == 2) {
    const int K = 2 * nodes;
    for (int i = 0; i < K; ++i) {
      const double a = 2 * kPi * i / K;
      r.pts.push_back(std::cos(a));
      r.pts.push_back(std::sin(a));
      r.w.push_back(2 * kPi / K);
    }
    return r;
  }
  const SphereRule sub = sphere_rule(dim - 1, nodes);
  const Rule polar = gauss_legendre(nodes, 0, kPi);
  for (int i = 0; i < nodes; ++i) {
    const double c = std::cos(polar.x[i]), s = std::sin(polar.x[i]);
    const double wt = polar.w[i] * std::pow(s, dim - 2);
    for (std::size_t j = 0; j < sub.size(); ++j) {
      r.pts.push_back(c);
      for (int k = 0; k < dim - 1; ++k) r.pts.push_back(s * sub.pts[j * (dim - 1) + k]);
      r.w.push_back(wt * sub.w[j]);
    }
  }
  return r;
}

namespace {

double sphere_area(int dim) {  // |S^(dim-1)|
  return 2 * std::pow(kPi, dim / 2.0) / std::tgamma(dim / 2.0);
}

}  // namespace

SigmaRule sigma_rule(const GroupSpec& G, int theta_nodes, int angle_nodes, bool reduced) {
  const int n = G.n(), m = G.m(), d = G.dim_z();
  const Rule th = gauss_legendre(theta_nodes, 0, kPi / 2);
  SigmaRule r;
  SphereRule su, sv;
  if (reduced) {
    su.dim = d;
    su.pts.assign(d, 0.0);
    su.pts[0] = 1;
    su.w = {sphere_area(d)};
    sv.dim = m;
    sv.pts.assign(m, 0.0);
    sv.pts[0] = 1;
    sv.w = {sphere_area(m)};
  } else {
    su = sphere_rule(d, angle_nodes);
    sv = sphere_rule(m, angle_nodes);
  }
  for (int i = 0; i < theta_nodes; ++i) {
    const double c = std::cos(th.x[i]), s = std::sin(th.x[i]);
    const double wt = th.w[i] * std::pow(4.0, n) * std::pow(c, n - 1) * std::pow(s, m - 1);
    const double rz = 2 * std::sqrt(c);
    for (std::size_t a = 0; a < su.size(); ++a)
      for (std::size_t b = 0; b < sv.size(); ++b) {
        GroupPoint p(d, m);
        for (int k = 0; k < d; ++k) p.z[k] = rz * su.pts[a * d + k];
        for (int k = 0; k < m; ++k) p.w[k] = s * sv.pts[b * m + k];
        r.pts.push_back(p);
        r.w.push_back(wt * su.w[a] * sv.w[b]);
      }
  }
  return r;
}

SigmaRule sigma_rule_rotation_reduced(const GroupSpec& G, int theta_nodes) {
  require(G.n() == 1, "rotation-reduced sigma rule needs n = 1");
  const int m = G.m();
  const Rule th = gauss_legendre(theta_nodes, 0, kPi / 2);
  const SphereRule sv = sphere_rule(m, std::max(2, theta_nodes / 2));
  SigmaRule r;
  for (int i = 0; i < theta_nodes; ++i) {
    const double c = std::cos(th.x[i]), s = std::sin(th.x[i]);
    const double wt = th.w[i] * 4.0 * std::pow(s, m - 1) * 2 * kPi;
    for (std::size_t b = 0; b < sv.size(); ++b) {
      GroupPoint p(2, m);
      p.z[0] = 2 * std::sqrt(c);
      for (int k = 0; k < m; ++k) p.w[k] = s * sv.pts[b * m + k];
      r.pts.push_back(p);
      r.w.push_back(wt * sv.w[b]);
    }
  }
  return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng batch_rng(std::uint64_t seed, std::uint64_t batch) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(batch + 0x632BE59BD9B4E019ULL)));
}

void sample_sigma(const GroupSpec& G, Rng& rng, GroupPoint& out) {
  const int n = G.n(), m = G.m(), d = G.dim_z();
  std::normal_distribution<double> normal;
  std::gamma_distribution<double> ga(m / 2.0), gb(n / 2.0);
  const double X = ga(rng), Y = gb(rng);
  const double t = X / (X + Y);  // sin^2 theta ~ Beta(m/2, n/2)
  out.nz = d;
  out.nw = m;
  double nu = 0;
  for (int i = 0; i < d; ++i) {
    out.z[i] = normal(rng);
    nu += out.z[i] * out.z[i];
  }
  double nv = 0;
  for (int k = 0; k < m; ++k) {
    out.w[k] = normal(rng);
    nv += out.w[k] * out.w[k];
  }
  const double rz = 2 * std::pow(1 - t, 0.25) / std::sqrt(nu);
  const double rw = std::sqrt(t) / std::sqrt(nv);
  for (int i = 0; i < d; ++i) out.z[i] *= rz;
  for (int k = 0; k < m; ++k) out.w[k] *= rw;
}

CylinderSampler::CylinderSampler(const GroupSpec& G, double b)
    : nz_(G.dim_z()), nw_(G.m()), b_(b) {
  require(4 * b > G.Q(), "outer density needs 4b > Q");
  log_mass_ = std::log(constants::cylinder_mass(G.n(), G.m(), b));
  nu_z_ = 4 * b - 2 * G.m() - 2 * G.n();
  nu_w_ = 2 * b - G.m();
}

void CylinderSampler::sample(Rng& rng, GroupPoint& x) const {
  std::normal_distribution<double> normal;
  std::gamma_distribution<double> cz(nu_z_ / 2), cw(nu_w_ / 2);
  x.nz = nz_;
  x.nw = nw_;
  const double sz = 2 / std::sqrt(2 * cz(rng));
  double z2 = 0;
  for (int i = 0; i < nz_; ++i) {
    x.z[i] = sz * normal(rng);
    z2 += x.z[i] * x.z[i];
  }
  const double A = 1 + 0.25 * z2;
  const double sw = A / std::sqrt(2 * cw(rng));
  for (int k = 0; k < nw_; ++k) x.w[k] = sw * normal(rng);
}

double CylinderSampler::log_density(const GroupPoint& x) const {
  const double A = 1 + 0.25 * x.z2();
  return -b_ * std::log(A * A + x.w2()) - log_mass_;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<double> run_batches(long total, int width, int threads,
                                const std::function<void(long, long, long, double*)>& work,
                                long batch) {
  require(batch >= 1, "run_batches: batch >= 1");
  const long kBatch = batch;
  const long nb = (total + kBatch - 1) / kBatch;
  std::vector<double> acc(static_cast<std::size_t>(nb) * width, 0.0);
  const int T = static_cast<int>(std::min<long>(resolve_threads(threads), std::max(1L, nb)));
  std::vector<std::exception_ptr> errors(nb);
  auto worker = [&](int t) {
    for (long b = t; b < nb; b += T) {
      try {
        work(b, b * kBatch, std::min(total, (b + 1) * kBatch), acc.data() + b * width);
      } catch (...) {
        errors[b] = std::current_exception();
        return;
      }
    }
  };
  if (T == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < T; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<double> out(width, 0.0);
  for (long b = 0; b < nb; ++b)
    for (int k = 0; k < width; ++k) out[k] += acc[b * width + k];
  return out;
}

}  // namespace htype::quad
