// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/sharpness.hpp"

#include "htype/constants.hpp"
#include "htype/errors.hpp"
#include "htype/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace htype {

TrialFamily exponent_family(const GroupSpec& G, double s) {
  const double astar = (G.Q() - 2 * s) / 4;
  TrialFamily F;
  F.name = "exponent";
  F.labels = {"a"};
  F.start = {1.2 * astar};
  F.lower = {0.8 * astar};
  F.upper = {1.5 * astar};
  F.build = [&G](const std::vector<double>& t) { return cylinder_power(G, 1.0, t[0]); };
  return F;
}

TrialFamily omega_family(const GroupSpec& G, double s) {
  const int k = omega_count(G);
  TrialFamily F;
  F.name = "omega";
  for (int j = 1; j <= k; ++j) F.labels.push_back("c" + std::to_string(j));
  F.start.assign(k, 0.0);
  F.start[0] = 0.3;
  F.lower.assign(k, -0.5);
  F.upper.assign(k, 0.5);
  F.build = [&G, s](const std::vector<double>& t) { return perturbed_U(G, s, t); };
  return F;
}

TrialFamily two_bubble_family(const GroupSpec& G, double s) {
  TrialFamily F;
  F.name = "two_bubble";
  F.labels = {"c2", "log_mu2", "eta2_z1"};
  F.start = {0.5, 0.0, 2.0};
  F.lower = {0.0, -1.5, -4.0};
  F.upper = {1.0, 1.5, 4.0};
  F.build = [&G, s](const std::vector<double>& t) {
    ConformalParams p;
    p.s = s;
    p.mu = std::exp(t[1]);
    p.eta = G.identity();
    p.eta.z[0] = t[2];
    return sum(extremal_U(G, s), scaled(conformal_orbit(G, p), t[0]));
  };
  return F;
}

TrialFamily rescale_family(const GroupSpec& G, double s) {
  TrialFamily F;
  F.name = "rescale";
  F.labels = {"c"};
  F.start = {1.0};
  F.lower = {0.25};
  F.upper = {4.0};
  F.build = [&G, s](const std::vector<double>& t) { return scaled(extremal_U(G, s), t[0]); };
  return F;
}

TrialFamily make_family(const GroupSpec& G, double s, const std::string& name) {
  if (name == "a" || name == "exponent") return exponent_family(G, s);
  if (name == "b" || name == "omega") return omega_family(G, s);
  if (name == "c" || name == "two_bubble") return two_bubble_family(G, s);
  if (name == "rescale") return rescale_family(G, s);
  throw PreconditionError("unknown trial family '" + name + "' (expected a, b, c or rescale)");
}

namespace {

using Objective = std::function<QuotientReport(const ScalarField&)>;
using Point = std::vector<double>;

struct Vertex {
  Point x;
  double f = 0;
};

class Search {
 public:
  Search(const TrialFamily& fam, Objective obj, double sharp)
      : fam_(fam), obj_(std::move(obj)) {
    res_.sharp_constant = sharp;
    res_.min_margin = std::numeric_limits<double>::infinity();
    res_.value = std::numeric_limits<double>::infinity();
  }

  long evaluations() const { return res_.evaluations; }

  double eval(Point x) {
    clamp(x);
    ++res_.evaluations;
    QuotientReport q;
    try {
      q = obj_(fam_.build(x));
    } catch (const PreconditionError&) {
      return std::numeric_limits<double>::infinity();  // outside the admissible region
    } catch (const NumericError&) {
      return std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(q.value)) return std::numeric_limits<double>::infinity();
    ++finite_;
    res_.trace.push_back({iteration_, x, q.value, q.error});
    const double sharp = res_.sharp_constant;
    const double margin = q.error > 0 ? (q.value - sharp) / q.error
                                      : (q.value >= sharp ? std::numeric_limits<double>::infinity()
                                                          : -std::numeric_limits<double>::infinity());
    res_.min_margin = std::min(res_.min_margin, margin);
    if (q.value < sharp - 2 * q.error) res_.violation = true;
    if (q.value < res_.value) {
      res_.value = q.value;
      res_.error = q.error;
      res_.theta = x;
    }
    return q.value;
  }

  // One Nelder-Mead run from x0 with at most `budget` evaluations; true if the simplex shrank
  // below xtol.
  bool run(const Point& x0, long budget, double xtol) {
    const int d = fam_.dim();
    const long stop = res_.evaluations + budget;
    std::vector<Vertex> S(d + 1);
    S[0] = {x0, 0};
    clamp(S[0].x);
    for (int i = 0; i < d; ++i) {
      Point x = S[0].x;
      const double step = 0.1 * (fam_.upper[i] - fam_.lower[i]);
      x[i] += x[i] + step <= fam_.upper[i] ? step : -step;
      S[i + 1] = {x, 0};
    }
    for (auto& v : S) {
      if (res_.evaluations >= stop) return false;
      v.f = eval(v.x);
    }
    auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    while (res_.evaluations < stop) {
      std::stable_sort(S.begin(), S.end(), by_value);
      if (size(S) < xtol) return true;
      ++iteration_;
      Point c(d, 0.0);
      for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i) c[i] += S[k].x[i] / d;
      auto along = [&](double t) {
        Point x(d);
        for (int i = 0; i < d; ++i) x[i] = c[i] + t * (S[d].x[i] - c[i]);
        clamp(x);
        return x;
      };
      Vertex r{along(-1.0), 0};
      r.f = eval(r.x);
      if (r.f < S[0].f) {
        if (res_.evaluations >= stop) {
          S[d] = r;
          break;
        }
        Vertex e{along(-2.0), 0};
        e.f = eval(e.x);
        S[d] = e.f < r.f ? e : r;
        continue;
      }
      if (r.f < S[d - 1].f) {
        S[d] = r;
        continue;
      }
      if (res_.evaluations >= stop) break;
      Vertex k{along(r.f < S[d].f ? -0.5 : 0.5), 0};
      k.f = eval(k.x);
      if (k.f < std::min(r.f, S[d].f)) {
        S[d] = k;
        continue;
      }
      for (int j = 1; j <= d && res_.evaluations < stop; ++j) {
        for (int i = 0; i < d; ++i) S[j].x[i] = S[0].x[i] + 0.5 * (S[j].x[i] - S[0].x[i]);
        S[j].f = eval(S[j].x);
      }
    }
    std::stable_sort(S.begin(), S.end(), by_value);
    return size(S) < xtol;
  }

  OptimizationResult finish(bool converged) {
    if (finite_ == 0) throw NumericError("sharpness search: all evaluations failed");
    res_.converged = converged;
    res_.iterations = iteration_;
    return std::move(res_);
  }

 private:
  void clamp(Point& x) const {
    for (int i = 0; i < fam_.dim(); ++i) x[i] = std::clamp(x[i], fam_.lower[i], fam_.upper[i]);
  }
  // max vertex distance from the best, per coordinate relative to the box
  double size(const std::vector<Vertex>& S) const {
    double m = 0;
    for (std::size_t j = 1; j < S.size(); ++j)
      for (int i = 0; i < fam_.dim(); ++i)
        m = std::max(m, std::abs(S[j].x[i] - S[0].x[i]) / (fam_.upper[i] - fam_.lower[i]));
    return m;
  }

  const TrialFamily& fam_;
  Objective obj_;
  OptimizationResult res_;
  int iteration_ = 0;
  long finite_ = 0;
};

void check_family(const TrialFamily& F) {
  require(F.dim() > 0 && F.lower.size() == F.start.size() && F.upper.size() == F.start.size() &&
              static_cast<bool>(F.build),
          "trial family: start, bounds and builder must be consistent");
  for (int i = 0; i < F.dim(); ++i)
    require(F.lower[i] < F.upper[i], "trial family: lower < upper required");
}

OptimizationResult search(const TrialFamily& F, const SearchOptions& opt, Objective obj,
                          double sharp) {
  check_family(F);
  require(opt.budget >= 50, "sharpness search: budget >= 50 required");
  require(opt.restarts >= 0, "sharpness search: restarts >= 0 required");
  Search S(F, std::move(obj), sharp);
  std::mt19937_64 rng(opt.seed);
  bool converged = false;
  const int runs = opt.restarts + 1;
  for (int r = 0; r < runs; ++r) {
    Point x0 = F.start;
    if (r > 0) {
      for (int i = 0; i < F.dim(); ++i)
        x0[i] = std::uniform_real_distribution<double>(F.lower[i], F.upper[i])(rng);
    }
    // the first run gets half the budget; unused budget carries over
    const long left = opt.budget - S.evaluations();
    const long share = r == 0 && runs > 1 ? left / 2 : left / (runs - r);
    const bool ok = S.run(x0, share, opt.xtol);
    if (r == 0) converged = ok;
    else converged = converged || ok;
  }
  return S.finish(converged);
}

// Fixed outer density for every theta. Q + 2 gave the steadiest minimizer location in
// calibration runs (about half the scatter of the decay-based default).
IntegrationSpec common_numbers(const GroupSpec& G, IntegrationSpec spec) {
  if (spec.outer_exponent == 0) spec.outer_exponent = G.Q() + 2.0;
  return spec;
}

}  // namespace

OptimizationResult minimize_quotient(const GroupSpec& G, double s, const TrialFamily& family,
                                     const SearchOptions& opt, const IntegrationSpec& spec) {
  const IntegrationSpec crn = common_numbers(G, spec);
  return search(
      family, opt,
      [&G, s, crn](const ScalarField& f) { return sobolev_quotient(G, f, s, crn); },
      constants::sharp_sobolev(G.n(), G.m(), s));
}

OptimizationResult subcritical_lambda(const GroupSpec& G, double s, double p,
                                      const TrialFamily& family, const SearchOptions& opt,
                                      const IntegrationSpec& spec) {
  const int Q = G.Q();
  require(s > 0 && s < 1, "0 < s < 1 required");
  require(p >= 2 && p < 2.0 * Q / (Q - 2 * s), "subcritical: 2 <= p < 2Q/(Q-2s) required");
  const IntegrationSpec crn = common_numbers(G, spec);
  const double sharp = constants::hardy_const(G.n(), G.m(), s) *
                       std::pow(constants::sphere_volume(G.n(), G.m()), 1 - 2 / p);
  return search(
      family, opt,
      [&G, s, p, crn](const ScalarField& f) { return weighted_quotient(G, f, s, p, crn); }, sharp);
}

std::vector<Estimate> moment_residual(const GroupSpec& G, double s, double p, const ScalarField& f,
                                      const IntegrationSpec& spec) {
  const int Q = G.Q();
  require(s > 0 && s < 1, "0 < s < 1 required");
  const double q = 2.0 * Q / (Q - 2 * s);
  require(p >= 1 && p <= q, "moment residual: 1 <= p <= 2Q/(Q-2s) required");
  const ScalarField U = extremal_U(G, s);
  // weight f^p U^(q-p); f >= 0 is a precondition, checked at the center
  require(f(f.center.nz ? f.center : G.identity()) >= 0, "moment residual: f >= 0 required");
  const ScalarField w = product(power(f, p), power(U, q - p));
  std::vector<Estimate> out;
  for (int j = 1; j <= omega_count(G); ++j) out.push_back(integrate_G(G, product(w, omega(G, s, j)), spec));
  return out;
}

}  // namespace htype
