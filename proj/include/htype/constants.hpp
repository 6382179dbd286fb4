// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace htype::constants {

// Valid range of s for a formula family.
enum class Context { main, extended };  // 0<s<1, 0<s<n+1

struct FractionalOrder {
  double s;
  Context context;
};

FractionalOrder checked_order(int n, double s, Context context);

double sharp_sobolev(int n, int m, double s);     // S
double hardy_const(int n, int m, double s);       // N
double green_const(int n, int m, double s);       // c
double groundstate_const(int n, int m, double s); // a
double sphere_volume(int n, int m);               // V = int J
double logsobolev_const(int n, int m);
double trace_factor(int n, int m, double s);
double hls_const(int n, int m, double s);         // 1/(S c)
double poisson_norm(int n, int m, double s);      // C_1

// 2^(1-2s) Gamma(1-s)/Gamma(s)
double extension_factor(double s);

// lim_{s->0} S c / s
double green_limit(int n, int m);

// Constant of the eigen-relation L_s phi_{-s,rho} = (4 rho)^s K phi_{s,rho}; K = N / 4^s.
double eigen_ratio(int n, int m, double s);

// Volume of the homogeneous unit ball and of the unit sphere {|xi| = 1} in polar measure.
double unit_ball_volume(int n, int m);
double unit_sphere_area(int n, int m);

// int_G B^-b, B = (1+|z|^2/4)^2 + |w|^2; finite for 4b > Q.
double cylinder_mass(int n, int m, double b);

// Sharp HLS constant on the Heisenberg group H^n with the norm (|z|^4+t^2)^(1/4).
double heisenberg_hls(int n, double lambda);

}  // namespace htype::constants
