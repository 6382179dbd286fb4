// Copyright 2026 The htype Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "htype/functionals.hpp"
#include "htype/sharpness.hpp"

#include <string>
#include <vector>

namespace htype {

// equality: the sharp value is attained; inequality: strict gap expected; identity: residual vs 0
enum class CheckKind { equality, inequality, identity };
const char* kind_name(CheckKind k);

struct SuiteRow {
  std::string check;
  CheckKind kind = CheckKind::equality;
  QuotientReport report;
  // Below the bound by more than the error bars (2 sigma, plus 1% slack on equality rows).
  // Never set on identity rows.
  bool violation = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteRow> rows;
  bool violation() const;
};

const std::vector<std::string>& suite_names();  // sobolev hardy hls logsob trace
SuiteResult run_suite(const GroupSpec& G, double s, const std::string& name,
                      const IntegrationSpec& spec);

struct ConstantRow {
  std::string name;
  double value;
  std::string context_range;
};
std::vector<ConstantRow> constants_table(int n, int m, double s);

// Locale-independent, 17 significant digits.
std::string format_double(double v);

std::string constants_csv(const std::vector<ConstantRow>& rows);
std::string suites_csv(const std::vector<SuiteResult>& results);
std::string sharpness_csv(const TrialFamily& family, const OptimizationResult& r);

struct ReportConfig {
  int n = 1;
  int m = 1;
  double s = 0.5;
  IntegrationSpec spec;
};
std::string report_json(const ReportConfig& cfg, const std::vector<SuiteResult>& results);
std::string sharpness_json(const TrialFamily& family, const OptimizationResult& r);
// gnuplot data file for one suite; columns listed in the header comment
std::string suite_dat(const ReportConfig& cfg, const SuiteResult& r);
// Writes report.json and <suite>.dat into dir (created if missing); returns the JSON text.
std::string write_report(const ReportConfig& cfg, const std::vector<SuiteResult>& results,
                         const std::string& dir);

}  // namespace htype
