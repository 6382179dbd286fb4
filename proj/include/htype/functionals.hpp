// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "htype/extremals.hpp"
#include "htype/integrate.hpp"

#include <functional>
#include <string>

namespace htype {

struct QuotientReport {
  double value = 0;
  double error = 0;
  double sharp_constant = 0;
  double deficit = 0;  // signed; for upper bounds (hls) sharp_constant - value
  std::string inputs;
  long evaluations = 0;
};

// D(f) / ||f||_q^2, q = 2Q/(Q-2s), against S.
QuotientReport sobolev_quotient(const GroupSpec& G, const ScalarField& f, double s,
                                const IntegrationSpec& spec);
// D(f) / int f^2 B^-s, against N.
QuotientReport hardy_quotient(const GroupSpec& G, const ScalarField& f, double s,
                              const IntegrationSpec& spec);
// int int f g / |eta^-1 xi|^(Q-2s) / (||f||_p ||g||_p), p = 2Q/(Q+2s), against 1/(S c).
QuotientReport hls_value(const GroupSpec& G, const ScalarField& f, const ScalarField& g, double s,
                         const IntegrationSpec& spec);

// D(f) / (int |f|^p U^(q-p))^(2/p), q = 2Q/(Q-2s), 2 <= p <= q, against N V^(1-2/p).
// p = 2 is the Hardy quotient, p = q the Sobolev quotient.
QuotientReport weighted_quotient(const GroupSpec& G, const ScalarField& f, double s, double p,
                                 const IntegrationSpec& spec);

struct LogSobPair {
  Estimate lhs;     // int int |f(xi)-f(eta)|^2 |eta^-1 xi|^-Q J^1/2 J^1/2
  Estimate rhs;     // constant * int f^2 ln f^2 J
  double factor = 1;  // f was multiplied by this to meet int f^2 J = V
};
// Single integrals (normalization, entropy) use the polar grid when n = 1, `spec` otherwise.
LogSobPair logsob_pair(const GroupSpec& G, const ScalarField& f, const IntegrationSpec& spec);

// D(f) - N int f^2 B^-s - a int int |G(xi)-G(eta)|^2 U(xi)U(eta)/d^(Q+2s), G = f/U.
Estimate hardy_remainder(const GroupSpec& G, const ScalarField& f, double s,
                         const IntegrationSpec& spec);

// Additive smooth term on G x (0, inf), vanishing at rho = 0.
struct ExtensionTerm {
  std::function<double(const GroupPoint&, double)> value;
  // horizontal gradient (nz), w-gradient (nw), d/drho
  std::function<void(const GroupPoint&, double, double* hgrad, double* wgrad, double* drho)> grad;
};

// P(f)(xi, rho) = C1 rho^2s (f * phi_{s, rho^2/4})(xi), plus an optional extra term.
struct ExtensionField {
  const GroupSpec* group = nullptr;
  ScalarField boundary;
  double s = 0.5;
  ExtensionTerm extra;  // empty unless perturbed

  Estimate eval(const GroupPoint& xi, double rho, const IntegrationSpec& spec) const;
  // -rho^(1-2s) d/drho P(f) estimated as 2s (f - P(f)) / rho^2s at small rho.
  Estimate neumann(const GroupPoint& xi, double rho, const IntegrationSpec& spec) const;
};

ExtensionField poisson_extension(const GroupSpec& G, const ScalarField& f, double s);
// extra(xi, rho) = amplitude * bump(center, width)(xi) * rho^2 exp(-rho^2)
ExtensionTerm extension_bump(const GroupSpec& G, const GroupPoint& center, double width,
                             double amplitude);

// Components: [energy of P(f), cross term with extra, energy of extra].
JointEstimate trace_energy_parts(const GroupSpec& G, const ExtensionField& u,
                                 const IntegrationSpec& spec);
Estimate trace_energy(const GroupSpec& G, const ExtensionField& u, const IntegrationSpec& spec);

// Inner sample count of the extension gradients in trace_energy (split in two halves).
inline constexpr int kTraceInner = 64;

}  // namespace htype
