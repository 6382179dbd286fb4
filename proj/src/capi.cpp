// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#include "htype/htype.h"

#include "htype/clifford.hpp"
#include "htype/errors.hpp"
#include "htype/suites.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

struct htype_group {
  std::shared_ptr<const htype::GroupSpec> G;
};

struct htype_field {
  std::shared_ptr<const htype::GroupSpec> G;  // the field refers into it
  htype::ScalarField f;
};

struct htype_suite {
  htype::SuiteResult result;
};

struct htype_search {
  std::shared_ptr<const htype::GroupSpec> G;
  htype::TrialFamily family;
  htype::OptimizationResult result;
};

namespace {

thread_local std::string g_last_error;

htype_status fail(htype_status st, const char* what) {
  g_last_error = what;
  return st;
}

template <class F>
htype_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return HTYPE_OK;
  } catch (const htype::PreconditionError& e) {
    return fail(HTYPE_ERR_PRECONDITION, e.what());
  } catch (const htype::NumericError& e) {
    return fail(HTYPE_ERR_NUMERIC, e.what());
  } catch (const htype::IoError& e) {
    return fail(HTYPE_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HTYPE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HTYPE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HTYPE_ERR_INTERNAL, "unknown error");
  }
}

template <class... P>
void need(const P*... p) {
  if (((p == nullptr) || ...)) throw htype::PreconditionError("null argument");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

htype::IntegrationSpec to_spec(const htype_spec* c) {
  htype::IntegrationSpec s;
  if (!c) return s;
  switch (c->method) {
    case HTYPE_METHOD_TENSOR_GRID: s.method = htype::Method::tensor_grid; break;
    case HTYPE_METHOD_POLAR_GRID: s.method = htype::Method::polar_grid; break;
    case HTYPE_METHOD_MONTE_CARLO: s.method = htype::Method::monte_carlo; break;
    default: throw htype::PreconditionError("unknown integration method code");
  }
  s.samples = c->samples;
  s.radial_nodes = c->radial_nodes;
  s.nodes = c->nodes;
  s.truncation_radius = c->truncation_radius;
  s.seed = c->seed;
  s.target_rel_tol = c->target_rel_tol;
  s.threads = c->threads;
  s.outer_exponent = c->outer_exponent;
  htype::require(s.samples > 0, "samples must be positive");
  htype::require(s.radial_nodes > 0 && s.nodes > 0, "grid node counts must be positive");
  htype::require(s.threads >= 0, "threads must be >= 0");
  return s;
}

htype::GroupPoint read_point(const htype::GroupSpec& G, const double* x) {
  htype::GroupPoint p = G.identity();
  for (int i = 0; i < G.dim_z(); ++i) p.z[i] = x[i];
  for (int k = 0; k < G.m(); ++k) p.w[k] = x[G.dim_z() + k];
  return p;
}

void write_point(const htype::GroupSpec& G, const htype::GroupPoint& p, double* x) {
  for (int i = 0; i < G.dim_z(); ++i) x[i] = p.z[i];
  for (int k = 0; k < G.m(); ++k) x[G.dim_z() + k] = p.w[k];
}

htype::ScalarField build_field(const htype::GroupSpec& G, const std::string& kind, double s,
                               const double* params, int np) {
  using htype::require;
  auto param = [&](int i, const char* what) {
    require(params != nullptr && np > i, "field '" + kind + "' needs parameter " + what);
    return params[i];
  };
  if (kind == "U") {
    require(s > 0 && s < 1, "0 < s < 1 required");
    return htype::extremal_U(G, s);
  }
  if (kind == "phi") return htype::phi(G, s, param(0, "rho"));
  if (kind == "omega") return htype::omega(G, s, static_cast<int>(param(0, "j")));
  if (kind == "cylinder") return htype::cylinder_power(G, param(0, "rho"), param(1, "b"));
  if (kind == "feps") return htype::f_epsilon(G, param(0, "eps"));
  if (kind == "jacobian") return htype::cayley_jacobian(G);
  if (kind == "bump") {
    const double width = param(0, "width");
    htype::GroupPoint c = G.identity();
    if (np > 1) {
      require(np == 1 + G.dim_z() + G.m(), "bump center needs 2n+m coordinates");
      c = read_point(G, params + 1);
    }
    return htype::bump(G, c, width);
  }
  throw htype::PreconditionError("unknown field kind '" + kind +
                                 "' (expected U, phi, omega, cylinder, feps, bump or jacobian)");
}

}  // namespace

extern "C" {

const char* htype_version(void) { return "0.1.0"; }

const char* htype_last_error_message(void) { return g_last_error.c_str(); }

const char* htype_status_name(htype_status st) {
  switch (st) {
    case HTYPE_OK: return "ok";
    case HTYPE_ERR_PRECONDITION: return "precondition";
    case HTYPE_ERR_VIOLATION: return "violation";
    case HTYPE_ERR_NUMERIC: return "numeric";
    case HTYPE_ERR_ARGUMENT: return "argument";
    case HTYPE_ERR_IO: return "io";
    case HTYPE_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void htype_string_free(char* s) { std::free(s); }

void htype_spec_default(htype_spec* c) {
  if (!c) return;
  const htype::IntegrationSpec s;
  c->method = HTYPE_METHOD_MONTE_CARLO;
  c->samples = s.samples;
  c->radial_nodes = s.radial_nodes;
  c->nodes = s.nodes;
  c->truncation_radius = s.truncation_radius;
  c->seed = s.seed;
  c->target_rel_tol = s.target_rel_tol;
  c->threads = s.threads;
  c->outer_exponent = s.outer_exponent;
}

htype_status htype_group_create(int n, int m, htype_group** out) {
  if (!out) return fail(HTYPE_ERR_ARGUMENT, "null output handle");
  *out = nullptr;
  return guard([&] { *out = new htype_group{std::make_shared<const htype::GroupSpec>(n, m)}; });
}

void htype_group_destroy(htype_group* g) { delete g; }

htype_status htype_group_dims(const htype_group* g, int* n, int* m, int* Q) {
  if (!g) return fail(HTYPE_ERR_ARGUMENT, "null group");
  if (n) *n = g->G->n();
  if (m) *m = g->G->m();
  if (Q) *Q = g->G->Q();
  return HTYPE_OK;
}

htype_status htype_group_residual(const htype_group* g, double* worst) {
  if (!g || !worst) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  return guard([&] {
    const auto rep = htype::clifford::verify_generators(g->G->gens());
    *worst = rep.shape_ok ? rep.worst() : HUGE_VAL;
  });
}

htype_status htype_group_generator(const htype_group* g, int k, double* out) {
  if (!g || !out) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  return guard([&] {
    htype::require(k >= 0 && k < g->G->m(), "generator index must lie in 0..m-1");
    const auto& M = g->G->gens().mats[k];
    for (int i = 0; i < M.rows(); ++i)
      for (int j = 0; j < M.cols(); ++j) out[i * M.cols() + j] = M(i, j);
  });
}

htype_status htype_group_multiply(const htype_group* g, const double* a, const double* b,
                                  double* out) {
  if (!g || !a || !b || !out) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  return guard([&] {
    const auto& G = *g->G;
    write_point(G, htype::multiply(G, read_point(G, a), read_point(G, b)), out);
  });
}

htype_status htype_group_norm(const htype_group* g, const double* a, double* out) {
  if (!g || !a || !out) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  return guard([&] { *out = htype::norm(*g->G, read_point(*g->G, a)); });
}

htype_status htype_constants_csv(int n, int m, double s, char** out) {
  if (!out) return fail(HTYPE_ERR_ARGUMENT, "null output");
  *out = nullptr;
  return guard([&] { *out = dup(htype::constants_csv(htype::constants_table(n, m, s))); });
}

htype_status htype_field_create(const htype_group* g, const char* kind, double s, const double* params,
                                int nparams, htype_field** out) {
  if (!g || !kind || !out) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] {
    auto h = std::make_unique<htype_field>();
    h->G = g->G;
    h->f = build_field(*h->G, kind, s, params, nparams);
    *out = h.release();
  });
}

void htype_field_destroy(htype_field* f) { delete f; }

htype_status htype_field_eval(const htype_field* f, const double* point, double* out) {
  if (!f || !point || !out) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  return guard([&] { *out = f->f(read_point(*f->G, point)); });
}

htype_status htype_field_name(const htype_field* f, char** out) {
  if (!f || !out) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  return guard([&] { *out = dup(f->f.name); });
}

htype_status htype_integrate(const htype_field* f, const htype_spec* spec, double* value,
                             double* error) {
  if (!f || !value) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  return guard([&] {
    const auto e = htype::integrate_G(*f->G, f->f, to_spec(spec));
    *value = e.value;
    if (error) *error = e.error;
  });
}

htype_status htype_dirichlet_form(const htype_field* f, double s, const htype_spec* spec,
                                  double* value, double* error) {
  if (!f || !value) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  return guard([&] {
    const auto e = htype::dirichlet_form(*f->G, f->f, s, to_spec(spec));
    *value = e.value;
    if (error) *error = e.error;
  });
}

htype_status htype_suite_run(const htype_group* g, double s, const char* name, const htype_spec* spec,
                             htype_suite** out) {
  if (!g || !name || !out) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] { *out = new htype_suite{htype::run_suite(*g->G, s, name, to_spec(spec))}; });
}

void htype_suite_destroy(htype_suite* r) { delete r; }

htype_status htype_suite_rows(const htype_suite* r, int* count) {
  if (!r || !count) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  *count = static_cast<int>(r->result.rows.size());
  return HTYPE_OK;
}

htype_status htype_suite_violation(const htype_suite* r, int* violation) {
  if (!r || !violation) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  *violation = r->result.violation() ? 1 : 0;
  return HTYPE_OK;
}

htype_status htype_suites_csv(const htype_suite* const* results, int count, char** out) {
  if (!out || (count > 0 && !results)) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  return guard([&] {
    std::vector<htype::SuiteResult> all;
    for (int i = 0; i < count; ++i) {
      need(results[i]);
      all.push_back(results[i]->result);
    }
    *out = dup(htype::suites_csv(all));
  });
}

htype_status htype_report_write(const htype_suite* const* results, int count, int n, int m, double s,
                                const htype_spec* spec, const char* dir, char** json_out) {
  if (!dir || (count > 0 && !results)) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  return guard([&] {
    htype::ReportConfig cfg;
    cfg.n = n;
    cfg.m = m;
    cfg.s = s;
    cfg.spec = to_spec(spec);
    std::vector<htype::SuiteResult> all;
    for (int i = 0; i < count; ++i) {
      need(results[i]);
      all.push_back(results[i]->result);
    }
    const std::string json = htype::write_report(cfg, all, dir);
    if (json_out) *json_out = dup(json);
  });
}

htype_status htype_search_run(const htype_group* g, double s, const char* family, double p, int budget,
                              uint64_t search_seed, const htype_spec* spec, htype_search** out) {
  if (!g || !family || !out) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  *out = nullptr;
  return guard([&] {
    auto h = std::make_unique<htype_search>();
    h->G = g->G;
    htype::require(s > 0 && s < 1, "0 < s < 1 required");
    h->family = htype::make_family(*h->G, s, family);
    htype::SearchOptions opt;
    opt.budget = budget;
    opt.seed = search_seed;
    const auto ispec = to_spec(spec);
    h->result = p > 0 ? htype::subcritical_lambda(*h->G, s, p, h->family, opt, ispec)
                      : htype::minimize_quotient(*h->G, s, h->family, opt, ispec);
    *out = h.release();
  });
}

void htype_search_destroy(htype_search* r) { delete r; }

htype_status htype_search_best(const htype_search* r, double* value, double* error, double* sharp,
                               int* violation) {
  if (!r) return fail(HTYPE_ERR_ARGUMENT, "null search");
  if (value) *value = r->result.value;
  if (error) *error = r->result.error;
  if (sharp) *sharp = r->result.sharp_constant;
  if (violation) *violation = r->result.violation ? 1 : 0;
  return HTYPE_OK;
}

htype_status htype_search_theta(const htype_search* r, double* out, int capacity, int* dim) {
  if (!r) return fail(HTYPE_ERR_ARGUMENT, "null search");
  const int d = static_cast<int>(r->result.theta.size());
  if (dim) *dim = d;
  if (out) {
    if (capacity < d) return fail(HTYPE_ERR_ARGUMENT, "theta buffer too small");
    for (int i = 0; i < d; ++i) out[i] = r->result.theta[i];
  }
  return HTYPE_OK;
}

htype_status htype_search_csv(const htype_search* r, char** out) {
  if (!r || !out) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  return guard([&] { *out = dup(htype::sharpness_csv(r->family, r->result)); });
}

htype_status htype_search_json(const htype_search* r, char** out) {
  if (!r || !out) return fail(HTYPE_ERR_ARGUMENT, "null argument");
  return guard([&] { *out = dup(htype::sharpness_json(r->family, r->result)); });
}

}  // extern "C"
