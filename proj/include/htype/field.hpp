// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <string>

namespace htype {

inline constexpr int kMaxZ = 32;
inline constexpr int kMaxW = 16;

struct GroupPoint {
  int nz = 0;
  int nw = 0;
  std::array<double, kMaxZ> z{};
  std::array<double, kMaxW> w{};

  GroupPoint() = default;
  GroupPoint(int nz_, int nw_) : nz(nz_), nw(nw_) {}
  GroupPoint(std::span<const double> zs, std::span<const double> ws);

  double z2() const {
    double s = 0;
    for (int i = 0; i < nz; ++i) s += z[i] * z[i];
    return s;
  }
  double w2() const {
    double s = 0;
    for (int k = 0; k < nw; ++k) s += w[k] * w[k];
    return s;
  }
  bool finite() const;
  bool is_zero() const { return z2() == 0 && w2() == 0; }
};

enum class Symmetry { cylindrical, none };

// Real function on G with the metadata quadrature planning needs.
struct ScalarField {
  std::string name;
  std::function<double(const GroupPoint&)> eval;
  Symmetry symmetry = Symmetry::none;
  double decay = 0;        // |f| <= C (1 + |xi|)^-decay
  GroupPoint center;       // mass center; nz == 0 means identity
  double scale = 1.0;      // mass length scale
  // Optional Euclidean gradient: d/dz into .z, d/dw into .w
  std::function<void(const GroupPoint&, GroupPoint&)> gradient;

  double operator()(const GroupPoint& p) const { return eval(p); }
};

}  // namespace htype
