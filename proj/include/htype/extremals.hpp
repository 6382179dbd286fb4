// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "htype/group.hpp"
#include "htype/integrate.hpp"

#include <vector>

namespace htype {

struct ConformalParams {
  double mu = 1.0;
  GroupPoint eta;  // empty point means identity
  double s = 0.5;
};

// ((rho + |z|^2/4)^2 + |w|^2)^-b
ScalarField cylinder_power(const GroupSpec& G, double rho, double b, std::string name = "");

ScalarField extremal_U(const GroupSpec& G, double s);
ScalarField phi(const GroupSpec& G, double s, double rho);
ScalarField conformal_orbit(const GroupSpec& G, const ConformalParams& p);
ScalarField cayley_jacobian(const GroupSpec& G);
std::vector<double> cayley(const GroupSpec& G, const GroupPoint& g);

int omega_count(const GroupSpec& G);  // 2n + m + 1
void omega_all(const GroupSpec& G, const GroupPoint& p, double* out);
ScalarField omega(const GroupSpec& G, double s, int j);  // j in 1..2n+m+1

struct FEpsilon {
  ScalarField field;
  double c_eps;
  Estimate normalization;  // int (sqrt(1-eps^2) + eps w1)^2 J
};
FEpsilon f_epsilon_normalized(const GroupSpec& G, double eps, const IntegrationSpec& spec);
ScalarField f_epsilon(const GroupSpec& G, double eps);

// mu^power F(delta_mu(eta^-1 o xi))
ScalarField transform(const GroupSpec& G, const ScalarField& F, const GroupPoint& eta, double mu,
                      double power);

// U (1 + sum_j c_j w_j + sum_{i<=j} q_ij w_i w_j); quad is row-major (2n+m+1)^2 or empty.
ScalarField perturbed_U(const GroupSpec& G, double s, std::vector<double> linear,
                        std::vector<double> quad = {});

// exp(-|delta_{1/width}(center^-1 o xi)|^4)
ScalarField bump(const GroupSpec& G, const GroupPoint& center, double width);
double bump_integral(int n, int m, double width);

ScalarField scaled(const ScalarField& F, double c);
ScalarField sum(const ScalarField& a, const ScalarField& b);
ScalarField product(const ScalarField& a, const ScalarField& b);
ScalarField power(const ScalarField& a, double p);  // |a|^p

}  // namespace htype
