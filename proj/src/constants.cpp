// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/constants.hpp"

#include "htype/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace htype::constants {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLogPi = std::log(kPi);
const double kLog2 = std::log(2.0);

double lg(double x) { return std::lgamma(x); }

void check_dims(int n, int m) {
  require(n >= 1 && m >= 1, "constants: n and m must be positive");
}

// log |Gamma(-s)| for 0 < s < 1 via Gamma(-s) Gamma(1+s) = -pi / sin(pi s).
double log_abs_gamma_neg(double s) { return kLogPi - std::log(std::sin(kPi * s)) - lg(1 + s); }

}  // namespace

FractionalOrder checked_order(int n, double s, Context context) {
  if (context == Context::main) {
    if (!(s > 0 && s < 1)) throw PreconditionError("s must satisfy 0 < s < 1, got " + std::to_string(s));
  } else {
    if (!(s > 0 && s < n + 1))
      throw PreconditionError("s must satisfy 0 < s < n+1 = " + std::to_string(n + 1) + ", got " +
                              std::to_string(s));
  }
  return {s, context};
}

double hardy_const(int n, int m, double s) {
  check_dims(n, m);
  checked_order(n, s, Context::main);
  return std::exp(2 * s * kLog2 + lg((n + 1 + s) / 2) + lg((n + m + s) / 2) - lg((n + 1 - s) / 2) -
                  lg((n + m - s) / 2));
}

double eigen_ratio(int n, int m, double s) {
  check_dims(n, m);
  checked_order(n, s, Context::extended);
  return std::exp(lg((n + 1 + s) / 2) + lg((n + m + s) / 2) - lg((n + 1 - s) / 2) -
                  lg((n + m - s) / 2));
}

double sphere_volume(int n, int m) {
  check_dims(n, m);
  return std::exp(2 * n * kLog2 + (n + m / 2.0) * kLogPi + lg(n + m / 2.0) - lg(2 * n + m));
}

double sharp_sobolev(int n, int m, double s) {
  check_dims(n, m);
  checked_order(n, s, Context::main);
  const double Q = 2 * n + 2 * m;
  const double logS = s * (Q + 2 * n) / Q * 2 * kLog2 + s * (2 * n + m) / Q * kLogPi +
                      2 * s / Q * (lg(n + m / 2.0) - lg(2 * n + m)) + lg((n + 1 + s) / 2) +
                      lg((n + m + s) / 2) - lg((n + 1 - s) / 2) - lg((n + m - s) / 2);
  return std::exp(logS);
}

double green_const(int n, int m, double s) {
  check_dims(n, m);
  checked_order(n, s, Context::extended);
  return std::exp(lg((n + 1 - s) / 2) + lg((n + m - s) / 2) - (n + 1 + s) * kLog2 -
                  (n + (m + 1) / 2.0) * kLogPi - lg(s));
}

double groundstate_const(int n, int m, double s) {
  check_dims(n, m);
  checked_order(n, s, Context::main);
  return std::exp((-n - 2 + s) * kLog2 - (n + (m + 1) / 2.0) * kLogPi + lg((n + 1 + s) / 2) +
                  lg((n + m + s) / 2) - log_abs_gamma_neg(s));
}

double logsobolev_const(int n, int m) {
  check_dims(n, m);
  const double Q = 2 * n + 2 * m;
  return std::exp((n + 3) * kLog2 + (n + (m + 1) / 2.0) * kLogPi - std::log(Q) - lg((n + 1) / 2.0) -
                  lg((n + m) / 2.0));
}

double extension_factor(double s) {
  require(s > 0 && s < 1, "s must satisfy 0 < s < 1");
  return std::exp((1 - 2 * s) * kLog2 + lg(1 - s) - lg(s));
}

double trace_factor(int n, int m, double s) { return extension_factor(s) * sharp_sobolev(n, m, s); }

double hls_const(int n, int m, double s) {
  return 1.0 / (sharp_sobolev(n, m, s) * green_const(n, m, s));
}

double poisson_norm(int n, int m, double s) {
  check_dims(n, m);
  checked_order(n, s, Context::main);
  return std::exp((-2 * n - 2 * s) * kLog2 - (n + m / 2.0) * kLogPi + lg(n + s) + lg((n + m + s) / 2) -
                  lg(s) - lg((n + s) / 2));
}

double green_limit(int n, int m) {
  check_dims(n, m);
  return std::exp(lg((n + 1) / 2.0) + lg((n + m) / 2.0) - (n + 1) * kLog2 -
                  (n + (m + 1) / 2.0) * kLogPi);
}

double unit_ball_volume(int n, int m) {
  check_dims(n, m);
  // 4^n vol(B^m) |S^(2n-1)| B(n/2, m/2+1) / 4
  const double log_ball_m = (m / 2.0) * kLogPi - lg(m / 2.0 + 1);
  const double log_sphere_z = kLog2 + n * kLogPi - lg(n);
  const double log_beta = lg(n / 2.0) + lg(m / 2.0 + 1) - lg(n / 2.0 + m / 2.0 + 1);
  return std::exp(2 * n * kLog2 + log_ball_m + log_sphere_z + log_beta - 2 * kLog2);
}

double unit_sphere_area(int n, int m) { return (2 * n + 2 * m) * unit_ball_volume(n, m); }

double cylinder_mass(int n, int m, double b) {
  check_dims(n, m);
  require(4 * b > 2 * n + 2 * m, "cylinder_mass: requires 4b > Q");
  return std::exp(2 * n * kLog2 + (n + m / 2.0) * kLogPi + lg(b - m / 2.0) + lg(2 * b - m - n) - lg(b) -
                  lg(2 * b - m));
}

double heisenberg_hls(int n, double lambda) {
  require(n >= 1, "heisenberg_hls: n must be positive");
  const double Q = 2 * n + 2;
  require(lambda > 0 && lambda < Q, "heisenberg_hls: 0 < lambda < Q required");
  const double log_base = (n + 1) * kLogPi - (n - 1) * kLog2 - lg(n + 1);
  return std::exp(lambda / Q * log_base + lg(n + 1) + lg((Q - lambda) / 2) -
                  2 * lg((2 * Q - lambda) / 4));
}

}  // namespace htype::constants
