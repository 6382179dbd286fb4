// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/suites.hpp"

#include "htype/clifford.hpp"
#include "htype/constants.hpp"
#include "htype/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace htype {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kEqualitySlack = 0.01;

SuiteRow make_row(std::string check, CheckKind kind, QuotientReport q) {
  SuiteRow r{std::move(check), kind, std::move(q), false};
  // identity residuals are reported, not judged: they are not inequalities
  if (kind == CheckKind::identity) return r;
  const double slack = kind == CheckKind::equality ? kEqualitySlack * std::abs(r.report.sharp_constant) : 0;
  r.violation = r.report.deficit < -(2 * r.report.error + slack);
  return r;
}

QuotientReport from_estimate(const Estimate& e, double reference, std::string inputs) {
  QuotientReport q;
  q.value = e.value;
  q.error = e.error;
  q.sharp_constant = reference;
  q.deficit = e.value - reference;
  q.inputs = std::move(inputs);
  q.evaluations = e.evaluations;
  return q;
}

// degree-two perturbation U (1 + 0.6 w1 w2); w1 alone is tangent to the conformal orbit
ScalarField strict_perturbation(const GroupSpec& G, double s) {
  const int k = omega_count(G);
  std::vector<double> quad(k * k, 0.0);
  quad[1] = 0.6;
  return perturbed_U(G, s, {}, quad);
}

GroupPoint unit_point(const GroupSpec& G, double z1) {
  GroupPoint p = G.identity();
  p.z[0] = z1;
  return p;
}

SuiteResult sobolev_suite(const GroupSpec& G, double s, const IntegrationSpec& spec) {
  SuiteResult R{"sobolev", {}};
  R.rows.push_back(make_row("U", CheckKind::equality, sobolev_quotient(G, extremal_U(G, s), s, spec)));
  ConformalParams p;
  p.s = s;
  p.mu = 1.7;
  p.eta = unit_point(G, 0.6);
  R.rows.push_back(make_row("conformal_orbit", CheckKind::equality,
                            sobolev_quotient(G, conformal_orbit(G, p), s, spec)));
  R.rows.push_back(make_row("perturbed", CheckKind::inequality,
                            sobolev_quotient(G, strict_perturbation(G, s), s, spec)));
  return R;
}

SuiteResult hardy_suite(const GroupSpec& G, double s, const IntegrationSpec& spec) {
  SuiteResult R{"hardy", {}};
  R.rows.push_back(make_row("U", CheckKind::equality, hardy_quotient(G, extremal_U(G, s), s, spec)));
  const ScalarField f = strict_perturbation(G, s);
  R.rows.push_back(make_row("perturbed", CheckKind::inequality, hardy_quotient(G, f, s, spec)));
  R.rows.push_back(make_row("remainder_residual", CheckKind::identity,
                            from_estimate(hardy_remainder(G, f, s, spec), 0.0, f.name)));
  return R;
}

SuiteResult hls_suite(const GroupSpec& G, double s, const IntegrationSpec& spec) {
  SuiteResult R{"hls", {}};
  const ScalarField ph = phi(G, s, 1.0);
  R.rows.push_back(make_row("phi", CheckKind::equality, hls_value(G, ph, ph, s, spec)));
  const ScalarField b1 = bump(G, G.identity(), 1.0);
  const ScalarField b2 = bump(G, unit_point(G, 1.5), 0.7);
  R.rows.push_back(make_row("bump_pair", CheckKind::inequality, hls_value(G, b1, b2, s, spec)));
  const ScalarField b3 = bump(G, unit_point(G, -0.8), 1.6);
  R.rows.push_back(make_row("bump_pair_wide", CheckKind::inequality, hls_value(G, b3, b3, s, spec)));
  return R;
}

SuiteResult logsob_suite(const GroupSpec& G, const IntegrationSpec& spec) {
  SuiteResult R{"logsob", {}};
  const double V = constants::sphere_volume(G.n(), G.m());
  const double K = constants::logsobolev_const(G.n(), G.m());
  for (double eps : {0.2, 0.1, 0.05}) {
    const FEpsilon F = f_epsilon_normalized(G, eps, spec);
    const LogSobPair L = logsob_pair(G, F.field, spec);
    std::ostringstream tag;
    tag << "eps=" << eps;
    // the double integral equals 2 K eps^2 C^2 int w1^2 J, and int w1^2 J = V / (2n+m+1)
    const double predicted = 2 * K * eps * eps * F.c_eps * F.c_eps * V / omega_count(G);
    R.rows.push_back(make_row("identity_" + tag.str(), CheckKind::identity,
                              from_estimate(L.lhs, predicted, F.field.name + " " + tag.str())));
    QuotientReport ratio;
    ratio.value = L.lhs.value / L.rhs.value;
    ratio.error = std::abs(ratio.value) * std::hypot(L.lhs.error / L.lhs.value, L.rhs.error / L.rhs.value);
    ratio.sharp_constant = 1;
    ratio.deficit = ratio.value - 1;
    ratio.inputs = F.field.name + " " + tag.str();
    ratio.evaluations = L.lhs.evaluations + L.rhs.evaluations;
    // F_eps saturates the inequality as eps -> 0, so the ratio is an equality-type row
    R.rows.push_back(make_row("ratio_" + tag.str(), CheckKind::equality, ratio));
  }
  return R;
}

SuiteResult trace_suite(const GroupSpec& G, double s, const IntegrationSpec& spec) {
  SuiteResult R{"trace", {}};
  const ScalarField U = extremal_U(G, s);
  const ExtensionField u = poisson_extension(G, U, s);
  const double NV = constants::hardy_const(G.n(), G.m(), s) * constants::sphere_volume(G.n(), G.m());
  const Estimate E = trace_energy(G, u, spec);
  R.rows.push_back(make_row("energy_identity", CheckKind::identity,
                            from_estimate(E, constants::extension_factor(s) * NV, U.name)));
  // ||U||_q^2 = V^(2/q)
  const double q = 2.0 * G.Q() / (G.Q() - 2 * s);
  const double norm2 = std::pow(constants::sphere_volume(G.n(), G.m()), 2 / q);
  Estimate T = E;
  T.value /= norm2;
  T.error /= norm2;
  QuotientReport tq = from_estimate(T, constants::trace_factor(G.n(), G.m(), s), U.name);
  R.rows.push_back(make_row("trace_quotient", CheckKind::equality, tq));
  ExtensionField v = u;
  v.extra = extension_bump(G, unit_point(G, 0.5), 0.8, 0.5);
  const JointEstimate P = trace_energy_parts(G, v, spec);
  R.rows.push_back(make_row("bump_excess", CheckKind::inequality,
                            from_estimate(P.combine({0, 2, 1}, spec), 0.0, U.name + "+bump")));
  return R;
}

}  // namespace

const char* kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::equality: return "equality";
    case CheckKind::inequality: return "inequality";
    case CheckKind::identity: return "identity";
  }
  return "?";
}

bool SuiteResult::violation() const {
  for (const auto& r : rows)
    if (r.violation) return true;
  return false;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"sobolev", "hardy", "hls", "logsob", "trace"};
  return names;
}

SuiteResult run_suite(const GroupSpec& G, double s, const std::string& name,
                      const IntegrationSpec& spec) {
  require(s > 0 && s < 1, "0 < s < 1 required");
  if (name == "sobolev") return sobolev_suite(G, s, spec);
  if (name == "hardy") return hardy_suite(G, s, spec);
  if (name == "hls") return hls_suite(G, s, spec);
  if (name == "logsob") return logsob_suite(G, spec);
  if (name == "trace") return trace_suite(G, s, spec);
  throw PreconditionError("unknown suite '" + name + "' (expected sobolev, hardy, hls, logsob or trace)");
}

std::vector<ConstantRow> constants_table(int n, int m, double s) {
  clifford::build_generators(n, m);  // rejects inadmissible (n, m)
  namespace c = constants;
  const std::string main = "0<s<1";
  const std::string ext = "0<s<" + std::to_string(n + 1);
  return {
      {"S", c::sharp_sobolev(n, m, s), main},
      {"N", c::hardy_const(n, m, s), main},
      {"c", c::green_const(n, m, s), ext},
      {"a", c::groundstate_const(n, m, s), main},
      {"V", c::sphere_volume(n, m), "any"},
      {"hls", c::hls_const(n, m, s), main},
      {"trace", c::trace_factor(n, m, s), main},
      {"extension", c::extension_factor(s), main},
      {"poisson_C1", c::poisson_norm(n, m, s), main},
      {"logsob", c::logsobolev_const(n, m), "any"},
  };
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

Json spec_json(const IntegrationSpec& s) {
  Json j;
  j["method"] = method_name(s.method);
  j["samples"] = s.samples;
  j["radial_nodes"] = s.radial_nodes;
  j["nodes"] = s.nodes;
  j["truncation_radius"] = s.truncation_radius;
  j["seed"] = s.seed;
  j["target_rel_tol"] = s.target_rel_tol;
  j["outer_exponent"] = s.outer_exponent;
  return j;
}

}  // namespace

std::string constants_csv(const std::vector<ConstantRow>& rows) {
  std::string out = "name,value,context_range\n";
  for (const auto& r : rows) out += r.name + "," + format_double(r.value) + "," + r.context_range + "\n";
  return out;
}

std::string suites_csv(const std::vector<SuiteResult>& results) {
  std::string out = "suite,check,kind,value,error,sharp_constant,deficit,violation,evaluations,inputs\n";
  for (const auto& R : results)
    for (const auto& r : R.rows) {
      const auto& q = r.report;
      out += R.suite + "," + r.check + "," + kind_name(r.kind) + "," + format_double(q.value) + "," +
             format_double(q.error) + "," + format_double(q.sharp_constant) + "," +
             format_double(q.deficit) + "," + (r.violation ? "1" : "0") + "," +
             std::to_string(q.evaluations) + "," + csv_quote(q.inputs) + "\n";
    }
  return out;
}

std::string sharpness_csv(const TrialFamily& family, const OptimizationResult& r) {
  std::string out = "iteration";
  for (const auto& l : family.labels) out += ",theta_" + l;
  out += ",value,error\n";
  for (const auto& row : r.trace) {
    out += std::to_string(row.iteration);
    for (double t : row.theta) out += "," + format_double(t);
    out += "," + format_double(row.value) + "," + format_double(row.error) + "\n";
  }
  return out;
}

std::string report_json(const ReportConfig& cfg, const std::vector<SuiteResult>& results) {
  Json j;
  j["n"] = cfg.n;
  j["m"] = cfg.m;
  j["s"] = cfg.s;
  j["spec"] = spec_json(cfg.spec);
  Json suites = Json::array();
  bool any = false;
  for (const auto& R : results) {
    Json js;
    js["suite"] = R.suite;
    js["violation"] = R.violation();
    any = any || R.violation();
    Json rows = Json::array();
    for (const auto& r : R.rows) {
      Json jr;
      jr["check"] = r.check;
      jr["kind"] = kind_name(r.kind);
      jr["value"] = r.report.value;
      jr["error"] = r.report.error;
      jr["sharp_constant"] = r.report.sharp_constant;
      jr["deficit"] = r.report.deficit;
      jr["violation"] = r.violation;
      jr["evaluations"] = r.report.evaluations;
      jr["inputs"] = r.report.inputs;
      rows.push_back(std::move(jr));
    }
    js["rows"] = std::move(rows);
    suites.push_back(std::move(js));
  }
  j["suites"] = std::move(suites);
  j["violation"] = any;
  return j.dump(2) + "\n";
}

std::string sharpness_json(const TrialFamily& family, const OptimizationResult& r) {
  Json j;
  j["family"] = family.name;
  j["labels"] = family.labels;
  j["theta"] = r.theta;
  j["value"] = r.value;
  j["error"] = r.error;
  j["sharp_constant"] = r.sharp_constant;
  j["iterations"] = r.iterations;
  j["evaluations"] = r.evaluations;
  j["converged"] = r.converged;
  j["min_margin"] = r.min_margin;
  j["violation"] = r.violation;
  return j.dump(2) + "\n";
}

std::string suite_dat(const ReportConfig& cfg, const SuiteResult& R) {
  std::string out = "# suite " + R.suite + " n=" + std::to_string(cfg.n) + " m=" + std::to_string(cfg.m) +
                    " s=" + format_double(cfg.s) + " method=" + method_name(cfg.spec.method) +
                    " samples=" + std::to_string(cfg.spec.samples) +
                    " seed=" + std::to_string(cfg.spec.seed) + "\n";
  out += "# columns: index value error sharp_constant deficit violation check\n";
  int i = 0;
  for (const auto& r : R.rows) {
    const auto& q = r.report;
    out += std::to_string(i++) + " " + format_double(q.value) + " " + format_double(q.error) + " " +
           format_double(q.sharp_constant) + " " + format_double(q.deficit) + " " +
           (r.violation ? "1" : "0") + " " + r.check + "\n";
  }
  return out;
}

std::string write_report(const ReportConfig& cfg, const std::vector<SuiteResult>& results,
                         const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
  auto put = [](const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    os << text;
    if (!os) throw IoError("cannot write " + path.string());
  };
  const std::string json = report_json(cfg, results);
  put(fs::path(dir) / "report.json", json);
  for (const auto& R : results) put(fs::path(dir) / (R.suite + ".dat"), suite_dat(cfg, R));
  return json;
}

}  // namespace htype
