// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through the C interface.

#include "htype/htype.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 2;
constexpr int kExitViolation = 3;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 64;

struct Failure {
  int code;
  std::string message;
};

void check(htype_status st) {
  if (st == HTYPE_OK) return;
  const std::string msg = htype_last_error_message();
  if (st == HTYPE_ERR_PRECONDITION)
    throw Failure{kExitPrecondition, "precondition violated: " + msg};
  throw Failure{kExitFailure, std::string(htype_status_name(st)) + " error: " + msg};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  htype_string_free(s);
  return out;
}

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

struct Options {
  int n = 1;
  int m = 1;
  double s = 0.5;
  std::string method = "monte-carlo";
  long samples = 200000;
  int radial_nodes = 16;
  int nodes = 24;
  double truncation_radius = 1e4;
  std::uint64_t seed = 7;
  int threads = 0;
  double outer_exponent = 0;
  std::string format = "csv";
  std::string output;
};

htype_spec make_spec(const Options& o) {
  htype_spec c;
  htype_spec_default(&c);
  if (o.method == "monte-carlo" || o.method == "mc") c.method = HTYPE_METHOD_MONTE_CARLO;
  else if (o.method == "polar-grid") c.method = HTYPE_METHOD_POLAR_GRID;
  else if (o.method == "tensor-grid") c.method = HTYPE_METHOD_TENSOR_GRID;
  else throw Failure{kExitPrecondition, "precondition violated: unknown method '" + o.method + "'"};
  c.samples = o.samples;
  c.radial_nodes = o.radial_nodes;
  c.nodes = o.nodes;
  c.truncation_radius = o.truncation_radius;
  c.seed = o.seed;
  c.threads = o.threads;
  c.outer_exponent = o.outer_exponent;
  return c;
}

struct Group {
  htype_group* g = nullptr;
  explicit Group(const Options& o) { check(htype_group_create(o.n, o.m, &g)); }
  ~Group() { htype_group_destroy(g); }
  Group(const Group&) = delete;
  Group& operator=(const Group&) = delete;
};

struct Field {
  htype_field* f = nullptr;
  Field(const Group& G, const std::string& kind, double s, const std::vector<double>& params) {
    check(htype_field_create(G.g, kind.c_str(), s, params.data(), static_cast<int>(params.size()), &f));
  }
  ~Field() { htype_field_destroy(f); }
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(o.output, std::ios::binary);
  os << text;
  if (!os) throw Failure{kExitFailure, "io error: cannot write " + o.output};
}

// name,value,... CSV rendered as aligned columns
std::string csv_to_table(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') quoted = !quoted;
      else if (ch == ',' && !quoted) cells.push_back(std::exchange(cell, {}));
      else cell += ch;
    }
    cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::string out;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      out += r[i];
      if (i + 1 < r.size()) out += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out += "\n";
  }
  return out;
}

// CSV with a header row to a JSON array of objects; integer cells become integers, other
// numeric cells doubles (17 digits round-trip), the rest strings.
std::string csv_to_json(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> header;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') quoted = !quoted;
      else if (ch == ',' && !quoted) cells.push_back(std::exchange(cell, {}));
      else cell += ch;
    }
    cells.push_back(cell);
    if (first) {
      header = cells;
      first = false;
      continue;
    }
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < cells.size() && i < header.size(); ++i) {
      const char* b = cells[i].data();
      const char* e = b + cells[i].size();
      long long k = 0;
      double v = 0;
      if (const auto r = std::from_chars(b, e, k); r.ec == std::errc() && r.ptr == e) obj[header[i]] = k;
      else if (const auto r2 = std::from_chars(b, e, v); r2.ec == std::errc() && r2.ptr == e)
        obj[header[i]] = v;
      else obj[header[i]] = cells[i];
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string render(const Options& o, const std::string& csv) {
  if (o.format == "table") return csv_to_table(csv);
  if (o.format == "json") return csv_to_json(csv);
  return csv;
}

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(list);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> point_from(const Group& G, const std::vector<double>& p) {
  int n = 0, m = 0;
  check(htype_group_dims(G.g, &n, &m, nullptr));
  if (static_cast<int>(p.size()) != 2 * n + m)
    throw Failure{kExitPrecondition, "precondition violated: a point needs 2n+m = " +
                                         std::to_string(2 * n + m) + " coordinates"};
  return p;
}

int cmd_constants(const Options& o) {
  char* csv = nullptr;
  check(htype_constants_csv(o.n, o.m, o.s, &csv));
  emit(o, render(o, take(csv)));
  return kExitOk;
}

int cmd_group(const Options& o, const std::vector<double>& a, const std::vector<double>& b) {
  Group G(o);
  int n = 0, m = 0, Q = 0;
  double worst = 0;
  check(htype_group_dims(G.g, &n, &m, &Q));
  check(htype_group_residual(G.g, &worst));
  std::string csv = "name,value\nn," + std::to_string(n) + "\nm," + std::to_string(m) + "\nQ," +
                    std::to_string(Q) + "\ngenerator_residual," + fmt(worst) + "\n";
  if (!a.empty()) {
    const auto pa = point_from(G, a);
    double r = 0;
    check(htype_group_norm(G.g, pa.data(), &r));
    csv += "norm_a," + fmt(r) + "\n";
    if (!b.empty()) {
      const auto pb = point_from(G, b);
      std::vector<double> prod(pa.size());
      check(htype_group_multiply(G.g, pa.data(), pb.data(), prod.data()));
      for (std::size_t i = 0; i < prod.size(); ++i)
        csv += "product_" + std::to_string(i) + "," + fmt(prod[i]) + "\n";
    }
  }
  emit(o, render(o, csv));
  return kExitOk;
}

int cmd_field(const Options& o, const std::string& kind, const std::vector<double>& params,
              const std::vector<std::vector<double>>& points) {
  Group G(o);
  Field F(G, kind, o.s, params);
  std::string csv = "point,value\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = point_from(G, points[i]);
    double v = 0;
    check(htype_field_eval(F.f, p.data(), &v));
    csv += std::to_string(i) + "," + fmt(v) + "\n";
  }
  emit(o, render(o, csv));
  return kExitOk;
}

int cmd_integrate(const Options& o, const std::string& kind, const std::vector<double>& params,
                  const std::string& what) {
  Group G(o);
  Field F(G, kind, o.s, params);
  const htype_spec spec = make_spec(o);
  double v = 0, e = 0;
  if (what == "integral") check(htype_integrate(F.f, &spec, &v, &e));
  else if (what == "dirichlet") check(htype_dirichlet_form(F.f, o.s, &spec, &v, &e));
  else throw Failure{kExitPrecondition, "precondition violated: --what must be integral or dirichlet"};
  emit(o, render(o, "quantity,value,error\n" + what + "," + fmt(v) + "," + fmt(e) + "\n"));
  return kExitOk;
}

struct Suites {
  std::vector<htype_suite*> items;
  ~Suites() {
    for (auto* r : items) htype_suite_destroy(r);
  }
  bool violation() const {
    for (auto* r : items) {
      int v = 0;
      check(htype_suite_violation(r, &v));
      if (v) return true;
    }
    return false;
  }
};

void run_suites(const Options& o, const std::vector<std::string>& names, Suites& out) {
  Group G(o);
  const htype_spec spec = make_spec(o);
  for (const auto& name : names) {
    htype_suite* r = nullptr;
    check(htype_suite_run(G.g, o.s, name.c_str(), &spec, &r));
    out.items.push_back(r);
  }
}

int cmd_verify(const Options& o, const std::vector<std::string>& names) {
  Suites S;
  run_suites(o, names, S);
  char* csv = nullptr;
  check(htype_suites_csv(S.items.data(), static_cast<int>(S.items.size()), &csv));
  emit(o, render(o, take(csv)));
  if (S.violation()) {
    std::cerr << "inequality violated beyond error bars\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_report(const Options& o, const std::vector<std::string>& names, const std::string& dir) {
  Suites S;
  run_suites(o, names, S);
  const htype_spec spec = make_spec(o);
  char* json = nullptr;
  check(htype_report_write(S.items.data(), static_cast<int>(S.items.size()), o.n, o.m, o.s, &spec,
                           dir.c_str(), &json));
  emit(o, take(json));
  if (S.violation()) {
    std::cerr << "inequality violated beyond error bars\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_sharpness(const Options& o, const std::string& family, double p, int budget) {
  Group G(o);
  const htype_spec spec = make_spec(o);
  htype_search* r = nullptr;
  check(htype_search_run(G.g, o.s, family.c_str(), p, budget, o.seed, &spec, &r));
  std::unique_ptr<htype_search, void (*)(htype_search*)> hold(r, htype_search_destroy);
  char* text = nullptr;
  if (o.format == "json") check(htype_search_json(r, &text));
  else check(htype_search_csv(r, &text));
  const std::string body = take(text);
  emit(o, o.format == "table" ? csv_to_table(body) : body);
  int violation = 0;
  check(htype_search_best(r, nullptr, nullptr, nullptr, &violation));
  if (violation) {
    std::cerr << "an evaluation fell below the sharp constant beyond 2 error bars\n";
    return kExitViolation;
  }
  return kExitOk;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text)) {
    double v = 0;
    const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
    if (r.ec != std::errc() || r.ptr != item.data() + item.size())
      throw CLI::ValidationError("point", "not a number: " + item);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp constants and extremals on H-type groups"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "line-oriented 'key = value' file; flags take precedence");

  Options o;
  app.add_option("--n", o.n, "half the horizontal dimension");
  app.add_option("--m", o.m, "center dimension");
  app.add_option("--s", o.s, "fractional order");
  app.add_option("--method", o.method, "monte-carlo | polar-grid | tensor-grid");
  app.add_option("--samples", o.samples, "monte-carlo samples");
  app.add_option("--radial-nodes", o.radial_nodes, "radial nodes per decade");
  app.add_option("--nodes", o.nodes, "nodes per angle or axis");
  app.add_option("--truncation-radius", o.truncation_radius, "tensor grid truncation");
  app.add_option("--seed", o.seed, "random seed (HTYPE_SEED overrides)");
  app.add_option("--threads", o.threads, "thread cap, 0 for all");
  app.add_option("--outer-exponent", o.outer_exponent, "outer density exponent, 0 for automatic");
  app.add_option("--format", o.format, "csv | json | table")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  app.add_flag_callback("--csv", [&o] { o.format = "csv"; }, "same as --format csv");
  app.add_flag_callback("--json", [&o] { o.format = "json"; }, "same as --format json");
  app.add_option("--output,-o", o.output, "write to this file instead of stdout");

  auto* c_constants = app.add_subcommand("constants", "closed-form constants");

  auto* c_group = app.add_subcommand("group", "group structure and generator check");
  std::string pa, pb;
  c_group->add_option("--a", pa, "point a as comma-separated coordinates");
  c_group->add_option("--b", pb, "point b; prints a o b");

  std::string kind = "U", what = "integral";
  std::vector<double> params;
  auto* c_field = app.add_subcommand("field", "evaluate a field");
  c_field->add_option("--kind", kind, "U, phi, omega, cylinder, feps, bump, jacobian");
  c_field->add_option("--param", params, "field parameters")->delimiter(',');
  std::vector<std::string> pts;
  c_field->add_option("--point", pts, "evaluation point (repeatable)")->required();

  auto* c_integrate = app.add_subcommand("integrate", "integral or Dirichlet form of a field");
  c_integrate->add_option("--kind", kind, "field kind");
  c_integrate->add_option("--param", params, "field parameters")->delimiter(',');
  c_integrate->add_option("--what", what, "integral | dirichlet");

  std::vector<std::string> suites;
  auto* c_verify = app.add_subcommand("verify", "run verification suites");
  c_verify->add_option("--suite", suites, "sobolev, hardy, hls, logsob, trace")
      ->delimiter(',')
      ->required();

  std::string family = "a";
  double p = 0;
  int budget = 80;
  auto* c_sharp = app.add_subcommand("sharpness", "minimize a quotient over a trial family");
  c_sharp->add_option("--family", family, "a | b | c | rescale");
  c_sharp->add_option("--budget", budget, "quotient evaluations (>= 50)");
  c_sharp->add_option("--p", p, "weighted exponent in [2, 2Q/(Q-2s)); omit for Sobolev");

  std::string out_dir = "report";
  std::string suite_list = "sobolev,hardy,hls,logsob,trace";
  auto* c_report = app.add_subcommand("report", "all suites to report.json and .dat files");
  c_report->add_option("--suites", suite_list, "comma-separated; empty for none");
  c_report->add_option("--dir", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (const char* env = std::getenv("HTYPE_SEED")) {
    const std::string text = env;
    std::uint64_t v = 0;
    const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
      std::cerr << "HTYPE_SEED must be a nonnegative integer\n";
      return kExitUsage;
    }
    o.seed = v;
  }

  try {
    if (*c_constants) return cmd_constants(o);
    if (*c_group) return cmd_group(o, parse_point(pa), parse_point(pb));
    if (*c_field) {
      std::vector<std::vector<double>> points;
      for (const auto& t : pts) points.push_back(parse_point(t));
      return cmd_field(o, kind, params, points);
    }
    if (*c_integrate) return cmd_integrate(o, kind, params, what);
    if (*c_verify) return cmd_verify(o, suites);
    if (*c_sharp) return cmd_sharpness(o, family, p, budget);
    if (*c_report) return cmd_report(o, split(suite_list), out_dir);
  } catch (const Failure& f) {
    std::cerr << f.message << "\n";
    return f.code;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
