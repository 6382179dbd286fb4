// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "htype/group.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace htype::quad {

struct Rule {
  std::vector<double> x, w;
};

Rule gauss_legendre(int n);                      // on [-1, 1]
Rule gauss_legendre(int n, double a, double b);  // on [a, b]

// Nodes/weights for int_{lo}^{hi} rho^(e-1) h(rho) drho, Gauss-Legendre panels in log rho.
struct RadialRule {
  std::vector<double> rho, w;
  double lo = 0, hi = 0;
};
RadialRule radial_rule(double lo, double hi, int nodes_per_decade, double e);

// Product rule on the unit sphere S^(d-1) in R^d; points flattened row-major.
struct SphereRule {
  int dim = 0;
  std::vector<double> pts, w;
  std::size_t size() const { return w.size(); }
};
SphereRule sphere_rule(int dim, int nodes);

// Rule on Sigma = {|xi| = 1} for the polar measure d sigma.
// reduced: only theta varies (fields depending on |z|, |w| only); weights include sphere areas.
struct SigmaRule {
  std::vector<GroupPoint> pts;
  std::vector<double> w;
};
SigmaRule sigma_rule(const GroupSpec& G, int theta_nodes, int angle_nodes, bool reduced);
// Same with the z-angle of S^1 frozen at 0 (n = 1), weights include 2 pi.
SigmaRule sigma_rule_rotation_reduced(const GroupSpec& G, int theta_nodes);

using Rng = std::mt19937_64;
std::uint64_t splitmix64(std::uint64_t x);
Rng batch_rng(std::uint64_t seed, std::uint64_t batch);

// Uniform (normalized d sigma) point on Sigma.
void sample_sigma(const GroupSpec& G, Rng& rng, GroupPoint& out);

// Exact sampler for the density B^-b / Z(b), B = (1+|z|^2/4)^2 + |w|^2.
class CylinderSampler {
 public:
  CylinderSampler(const GroupSpec& G, double b);
  void sample(Rng& rng, GroupPoint& x) const;
  double log_density(const GroupPoint& x) const;  // log(B^-b / Z)
  double b() const { return b_; }

 private:
  int nz_, nw_;
  double b_, log_mass_;
  double nu_z_, nu_w_;
};

// Deterministic parallel reduction: work(batch, begin, end, acc) fills acc (length width)
// for each batch; batches are summed in index order.
std::vector<double> run_batches(long total, int width, int threads,
                                const std::function<void(long, long, long, double*)>& work,
                                long batch = 2048);

int resolve_threads(int requested);

}  // namespace htype::quad
