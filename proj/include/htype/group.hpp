// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "htype/clifford.hpp"
#include "htype/field.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <span>
#include <vector>

namespace htype {

class GroupSpec {
 public:
  GroupSpec(int n, int m);
  explicit GroupSpec(clifford::GeneratorSet gens);

  int n() const { return gens_.n; }
  int m() const { return gens_.m; }
  int Q() const { return 2 * gens_.n + 2 * gens_.m; }
  int dim_z() const { return 2 * gens_.n; }
  const clifford::GeneratorSet& gens() const { return gens_; }

  // <a, U^(k) b>
  double form(int k, const double* a, const double* b) const {
    double acc = 0;
    for (const Entry& e : nonzero_[k]) acc += a[e.i] * e.v * b[e.j];
    return acc;
  }
  // out = U^(k) a, out = U^(k)^T a
  void apply(int k, const double* a, double* out) const;
  void apply_transpose(int k, const double* a, double* out) const;

  GroupPoint identity() const { return GroupPoint(dim_z(), m()); }
  void check(const GroupPoint& p) const;

 private:
  struct Entry {
    int i, j;
    double v;
  };
  void index();

  clifford::GeneratorSet gens_;
  std::vector<std::vector<Entry>> nonzero_;
};

GroupPoint multiply(const GroupSpec& G, const GroupPoint& a, const GroupPoint& b);
GroupPoint inverse(const GroupSpec& G, const GroupPoint& a);
double norm(const GroupSpec& G, const GroupPoint& a);
GroupPoint dilate(double mu, const GroupPoint& a);
double distance(const GroupSpec& G, const GroupPoint& a, const GroupPoint& b);

// J_w with <J_w v, u> = <w, [v, u]>; equals sum_k w_k U^(k)^T.
Eigen::MatrixXd j_map(const GroupSpec& G, std::span<const double> w);

// Horizontal derivatives from a Euclidean gradient.
void horizontal_from_euclidean(const GroupSpec& G, const GroupPoint& p, const GroupPoint& grad,
                               double* out);

double default_fd_step(const GroupSpec& G, const GroupPoint& p);
double sublaplacian_fd(const GroupSpec& G, const ScalarField& f, const GroupPoint& p, double h = 0);
std::vector<double> horizontal_gradient_fd(const GroupSpec& G, const ScalarField& f,
                                           const GroupPoint& p, double h = 0);

struct PolarSplit {
  double rho;
  GroupPoint sigma;
};
PolarSplit polar_split(const GroupSpec& G, const GroupPoint& p);

// Unchecked kernels for inner loops.
namespace fast {

inline void mul(const GroupSpec& G, const GroupPoint& a, const GroupPoint& b, GroupPoint& r) {
  r.nz = a.nz;
  r.nw = a.nw;
  for (int k = 0; k < a.nw; ++k) r.w[k] = a.w[k] + b.w[k] + 0.5 * G.form(k, a.z.data(), b.z.data());
  for (int i = 0; i < a.nz; ++i) r.z[i] = a.z[i] + b.z[i];
}

inline GroupPoint mul(const GroupSpec& G, const GroupPoint& a, const GroupPoint& b) {
  GroupPoint r;
  mul(G, a, b, r);
  return r;
}

inline GroupPoint inv(const GroupPoint& a) {
  GroupPoint r(a.nz, a.nw);
  for (int i = 0; i < a.nz; ++i) r.z[i] = -a.z[i];
  for (int k = 0; k < a.nw; ++k) r.w[k] = -a.w[k];
  return r;
}

inline GroupPoint dil(double mu, const GroupPoint& a) {
  GroupPoint r(a.nz, a.nw);
  for (int i = 0; i < a.nz; ++i) r.z[i] = mu * a.z[i];
  for (int k = 0; k < a.nw; ++k) r.w[k] = mu * mu * a.w[k];
  return r;
}

inline double norm4(const GroupPoint& a) {
  const double z2 = a.z2();
  return z2 * z2 / 16.0 + a.w2();
}

inline double nrm(const GroupPoint& a) { return std::sqrt(std::sqrt(norm4(a))); }

}  // namespace fast

}  // namespace htype
