// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "htype/extremals.hpp"
#include "htype/integrate.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace htype {

// Builders keep a reference to the group, which must outlive the family.
struct TrialFamily {
  std::string name;
  std::vector<std::string> labels;
  std::vector<double> start, lower, upper;
  std::function<ScalarField(const std::vector<double>&)> build;

  int dim() const { return static_cast<int>(start.size()); }
};

// (a) B^-theta0, the generalized exponent; contains U at theta0 = (Q-2s)/4.
TrialFamily exponent_family(const GroupSpec& G, double s);
// (b) U (1 + sum_j theta_j omega_j), starting at 0.3 e_1.
TrialFamily omega_family(const GroupSpec& G, double s);
// (c) U + theta0 U_{mu, eta} with mu = exp(theta1), eta = (theta2 e_1, 0).
TrialFamily two_bubble_family(const GroupSpec& G, double s);
// theta0 * U; the quotient does not depend on theta0.
TrialFamily rescale_family(const GroupSpec& G, double s);
// "a", "b", "c" or "rescale"
TrialFamily make_family(const GroupSpec& G, double s, const std::string& name);

struct TraceRow {
  int iteration = 0;
  std::vector<double> theta;
  double value = 0;
  double error = 0;
};

struct OptimizationResult {
  std::vector<double> theta;
  double value = 0;
  double error = 0;
  double sharp_constant = 0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
  std::vector<TraceRow> trace;  // every evaluation, in order
  double min_margin = 0;        // min over evaluations of (value - sharp) / error
  bool violation = false;       // some evaluation fell below sharp - 2 error
};

struct SearchOptions {
  int budget = 80;            // total quotient evaluations
  std::uint64_t seed = 7;     // restart points; the integration seed is spec.seed
  int restarts = 3;
  double xtol = 1e-3;         // simplex size relative to the box
};

// Minimizes the Sobolev quotient over the family. Every evaluation uses the same
// integration seed and outer density, so the objective is a smooth function of theta.
OptimizationResult minimize_quotient(const GroupSpec& G, double s, const TrialFamily& family,
                                     const SearchOptions& opt, const IntegrationSpec& spec);

// Same search on the weighted quotient with exponent p; the sharp value is N V^(1-2/p).
OptimizationResult subcritical_lambda(const GroupSpec& G, double s, double p,
                                      const TrialFamily& family, const SearchOptions& opt,
                                      const IntegrationSpec& spec);

// int f^p U^(q-p) omega_j for j = 1..2n+m+1, q = 2Q/(Q-2s).
std::vector<Estimate> moment_residual(const GroupSpec& G, double s, double p, const ScalarField& f,
                                      const IntegrationSpec& spec);

}  // namespace htype
