// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

// Hand-rolled generators for property tests.

#pragma once

#include "htype/clifford.hpp"
#include "htype/group.hpp"
#include "htype/integrate.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace htype::testing {

using Gen = std::mt19937_64;

inline IntegrationSpec mc(long samples, std::uint64_t seed = 7) {
  IntegrationSpec s;
  s.samples = samples;
  s.seed = seed;
  return s;
}

inline IntegrationSpec polar(int nodes, int radial) {
  IntegrationSpec s;
  s.method = Method::polar_grid;
  s.nodes = nodes;
  s.radial_nodes = radial;
  return s;
}

inline double uniform(Gen& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// Heavy-ish radial spread: mostly O(1), sometimes far out or near the origin.
inline GroupPoint random_point(const GroupSpec& G, Gen& g) {
  const double scale = std::exp(uniform(g, -3.0, 3.0));
  GroupPoint p = G.identity();
  std::normal_distribution<double> N;
  for (int i = 0; i < G.dim_z(); ++i) p.z[i] = scale * N(g);
  for (int k = 0; k < G.m(); ++k) p.w[k] = scale * scale * N(g);
  return p;
}

// Admissible (n, m) with n <= max_n.
inline std::pair<int, int> random_dims(Gen& g, int max_n) {
  const int n = std::uniform_int_distribution<int>(1, max_n)(g);
  const int mmax = clifford::radon_hurwitz(2 * n) - 1;
  const int m = std::uniform_int_distribution<int>(1, mmax)(g);
  return {n, m};
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

template <class F>
void for_all(std::uint64_t seed, int cases, F&& property) {
  Gen g(seed);
  for (int i = 0; i < cases; ++i) property(g, i);
}

}  // namespace htype::testing
