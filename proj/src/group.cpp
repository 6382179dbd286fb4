// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/group.hpp"

#include "htype/errors.hpp"

#include <cmath>
#include <string>

namespace htype {

GroupPoint::GroupPoint(std::span<const double> zs, std::span<const double> ws)
    : nz(static_cast<int>(zs.size())), nw(static_cast<int>(ws.size())) {
  require(nz <= kMaxZ && nw <= kMaxW, "GroupPoint: dimension exceeds compiled capacity");
  for (int i = 0; i < nz; ++i) z[i] = zs[i];
  for (int k = 0; k < nw; ++k) w[k] = ws[k];
}

bool GroupPoint::finite() const {
  for (int i = 0; i < nz; ++i)
    if (!std::isfinite(z[i])) return false;
  for (int k = 0; k < nw; ++k)
    if (!std::isfinite(w[k])) return false;
  return true;
}

GroupSpec::GroupSpec(int n, int m) : GroupSpec(clifford::build_generators(n, m)) {}

GroupSpec::GroupSpec(clifford::GeneratorSet gens) : gens_(std::move(gens)) {
  require(2 * gens_.n <= kMaxZ && gens_.m <= kMaxW,
          "GroupSpec: 2n <= " + std::to_string(kMaxZ) + " and m <= " + std::to_string(kMaxW) +
              " required");
  const auto rep = clifford::verify_generators(gens_);
  require(rep.passes(1e-12), "GroupSpec: generator set fails verification (residual " +
                                 std::to_string(rep.worst()) + ")");
  index();
}

void GroupSpec::index() {
  nonzero_.assign(gens_.m, {});
  for (int k = 0; k < gens_.m; ++k) {
    const auto& u = gens_.mats[k];
    for (int i = 0; i < u.rows(); ++i)
      for (int j = 0; j < u.cols(); ++j)
        if (u(i, j) != 0) nonzero_[k].push_back({i, j, u(i, j)});
  }
}

void GroupSpec::apply(int k, const double* a, double* out) const {
  for (int i = 0; i < dim_z(); ++i) out[i] = 0;
  for (const Entry& e : nonzero_[k]) out[e.i] += e.v * a[e.j];
}

void GroupSpec::apply_transpose(int k, const double* a, double* out) const {
  for (int i = 0; i < dim_z(); ++i) out[i] = 0;
  for (const Entry& e : nonzero_[k]) out[e.j] += e.v * a[e.i];
}

void GroupSpec::check(const GroupPoint& p) const {
  if (p.nz != dim_z() || p.nw != m())
    throw PreconditionError("dimension mismatch: point is (" + std::to_string(p.nz) + "," +
                            std::to_string(p.nw) + "), group expects (" +
                            std::to_string(dim_z()) + "," + std::to_string(m()) + ")");
}

GroupPoint multiply(const GroupSpec& G, const GroupPoint& a, const GroupPoint& b) {
  G.check(a);
  G.check(b);
  GroupPoint r(a.nz, a.nw);
  for (int i = 0; i < a.nz; ++i) r.z[i] = a.z[i] + b.z[i];
  for (int k = 0; k < a.nw; ++k) r.w[k] = a.w[k] + b.w[k] + 0.5 * G.form(k, a.z.data(), b.z.data());
  return r;
}

GroupPoint inverse(const GroupSpec& G, const GroupPoint& a) {
  G.check(a);
  GroupPoint r(a.nz, a.nw);
  for (int i = 0; i < a.nz; ++i) r.z[i] = -a.z[i];
  for (int k = 0; k < a.nw; ++k) r.w[k] = -a.w[k];
  return r;
}

double norm(const GroupSpec& G, const GroupPoint& a) {
  G.check(a);
  const double z2 = a.z2();
  return std::pow(z2 * z2 / 16.0 + a.w2(), 0.25);
}

GroupPoint dilate(double mu, const GroupPoint& a) {
  require(mu > 0, "dilate: mu must be > 0");
  GroupPoint r(a.nz, a.nw);
  for (int i = 0; i < a.nz; ++i) r.z[i] = mu * a.z[i];
  for (int k = 0; k < a.nw; ++k) r.w[k] = mu * mu * a.w[k];
  return r;
}

double distance(const GroupSpec& G, const GroupPoint& a, const GroupPoint& b) {
  return norm(G, multiply(G, inverse(G, b), a));
}

Eigen::MatrixXd j_map(const GroupSpec& G, std::span<const double> w) {
  require(static_cast<int>(w.size()) == G.m(), "j_map: w must have length m");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(G.dim_z(), G.dim_z());
  for (int k = 0; k < G.m(); ++k) J += w[k] * G.gens().mats[k].transpose();
  return J;
}

void horizontal_from_euclidean(const GroupSpec& G, const GroupPoint& p, const GroupPoint& grad,
                               double* out) {
  double ut[kMaxZ];
  for (int j = 0; j < G.dim_z(); ++j) out[j] = grad.z[j];
  for (int k = 0; k < G.m(); ++k) {
    G.apply_transpose(k, p.z.data(), ut);
    for (int j = 0; j < G.dim_z(); ++j) out[j] += 0.5 * ut[j] * grad.w[k];
  }
}

double default_fd_step(const GroupSpec& G, const GroupPoint& p) { return 1e-4 * (1.0 + norm(G, p)); }

namespace {

double sample(const ScalarField& f, const GroupPoint& p) {
  const double v = f(p);
  if (!std::isfinite(v)) throw NumericError("non-finite field sample in finite difference");
  return v;
}

}  // namespace

// -Lap_z f - |z|^2/4 Lap_w f - sum_k <z, U^(k) grad_z> d/dw_k f, Euclidean central differences.
double sublaplacian_fd(const GroupSpec& G, const ScalarField& f, const GroupPoint& p, double h) {
  G.check(p);
  require(h >= 0, "sublaplacian_fd: h must be > 0");
  if (h == 0) h = default_fd_step(G, p);
  const double f0 = sample(f, p);
  const double z2 = p.z2();
  auto shifted = [&](int zi, double dz, int wk, double dw) {
    GroupPoint q = p;
    if (zi >= 0) q.z[zi] += dz;
    if (wk >= 0) q.w[wk] += dw;
    return sample(f, q);
  };
  double lap_z = 0, lap_w = 0;
  for (int i = 0; i < p.nz; ++i) lap_z += shifted(i, h, -1, 0) - 2 * f0 + shifted(i, -h, -1, 0);
  for (int k = 0; k < p.nw; ++k) lap_w += shifted(-1, 0, k, h) - 2 * f0 + shifted(-1, 0, k, -h);
  lap_z /= h * h;
  lap_w /= h * h;
  double uz[kMaxZ];
  double mixed = 0;
  for (int k = 0; k < p.nw; ++k) {
    G.apply_transpose(k, p.z.data(), uz);  // <z, U grad> = <U^T z, grad>
    for (int i = 0; i < p.nz; ++i) {
      if (uz[i] == 0) continue;
      const double d2 = (shifted(i, h, k, h) - shifted(i, h, k, -h) - shifted(i, -h, k, h) +
                         shifted(i, -h, k, -h)) /
                        (4 * h * h);
      mixed += uz[i] * d2;
    }
  }
  return -lap_z - 0.25 * z2 * lap_w - mixed;
}

std::vector<double> horizontal_gradient_fd(const GroupSpec& G, const ScalarField& f,
                                           const GroupPoint& p, double h) {
  G.check(p);
  require(h >= 0, "horizontal_gradient_fd: h must be > 0");
  if (h == 0) h = default_fd_step(G, p);
  std::vector<double> out(p.nz);
  for (int j = 0; j < p.nz; ++j) {
    GroupPoint step = G.identity();
    step.z[j] = h;
    const double fp = sample(f, multiply(G, p, step));
    step.z[j] = -h;
    const double fm = sample(f, multiply(G, p, step));
    out[j] = (fp - fm) / (2 * h);
  }
  return out;
}

PolarSplit polar_split(const GroupSpec& G, const GroupPoint& p) {
  const double rho = norm(G, p);
  require(rho > 0, "polar_split: identity has no polar decomposition");
  return {rho, dilate(1.0 / rho, p)};
}

}  // namespace htype
