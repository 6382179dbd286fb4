// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "htype/group.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace htype {

enum class Method { tensor_grid, polar_grid, monte_carlo };

const char* method_name(Method m);
Method parse_method(const std::string& s);

struct IntegrationSpec {
  Method method = Method::monte_carlo;
  long samples = 200000;            // monte-carlo
  int radial_nodes = 16;            // Gauss-Legendre nodes per decade of rho
  int nodes = 24;                   // grid nodes per axis (tensor) or per angle (polar)
  double truncation_radius = 1e4;   // in units of the field scale
  std::uint64_t seed = 7;
  double target_rel_tol = 1e-2;
  int threads = 0;                  // 0: all hardware threads
  double outer_exponent = 0;        // 4b of the outer density B^-b; 0 picks from decay
};

struct Estimate {
  double value = 0;
  double error = 0;       // standard error (monte-carlo) or full/half resolution gap (grids)
  bool richardson = false;
  IntegrationSpec spec_used;
  long evaluations = 0;
};

Estimate integrate_G(const GroupSpec& G, const ScalarField& f, const IntegrationSpec& spec);
Estimate dirichlet_form(const GroupSpec& G, const ScalarField& f, double s,
                        const IntegrationSpec& spec);
Estimate dirichlet_pairing(const GroupSpec& G, const ScalarField& f, const ScalarField& g, double s,
                           const IntegrationSpec& spec);
Estimate riesz_potential(const GroupSpec& G, const ScalarField& f, double s, const GroupPoint& at,
                         const IntegrationSpec& spec);

double l_func(double a, double b, double c);
double fourier_coeff(int n, int m, double s, int k, double rho, double lambda_abs);

// Engine for int int K(|xi^-1 eta|) Phi(xi, eta) with Phi symmetric, K = |.|^-gamma,
// optionally plus single integrals int psi(xi). Components are estimated jointly.
struct PairProblem {
  int components = 1;
  double gamma = 0;
  double head_order = 2;   // Phi(xi, xi o delta_rho sigma) ~ rho^head_order as rho -> 0
  double tail_decay = 0;   // ~ rho^-tail_decay as rho -> infinity
  std::function<void(const GroupPoint& xi, const GroupPoint& eta, double* out)> pair;
  std::function<void(const GroupPoint& xi, double* out)> single;  // may be empty
  GroupPoint center;       // identity if empty
  double scale = 1.0;
  double field_decay = 0;  // decay of the underlying fields, picks the outer density
  bool rotation_invariant = false;  // pair and single invariant under z-rotations (n = 1 grid)
};

struct JointEstimate {
  std::vector<double> mean;
  Eigen::MatrixXd cov;       // covariance of the means (monte-carlo)
  std::vector<double> coarse;  // half-resolution values (grids)
  bool richardson = false;
  long evaluations = 0;

  Estimate component(int i, const IntegrationSpec& spec) const;
  Estimate combine(const std::vector<double>& coeff, const IntegrationSpec& spec) const;
  // value and error of f(mean) for a smooth f with gradient grad at mean
  Estimate delta(double value, const std::vector<double>& grad, const IntegrationSpec& spec) const;
};

JointEstimate pair_integral(const GroupSpec& G, const PairProblem& problem,
                            const IntegrationSpec& spec);

// Outer density exponent picked for the Dirichlet form of a field with the given decay.
double pair_outer_exponent(const GroupSpec& G, double s, double decay);

}  // namespace htype
