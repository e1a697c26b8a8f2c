#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latsmooth/enumerate.hpp"
#include "latsmooth/gauss_sums.hpp"
#include "latsmooth/geometry.hpp"

namespace latsmooth {

struct AmplifyPlan;
struct ShellClaims;

// Decimal with 12 significant digits, '.' separator, no locale dependence.
// Enough to round-trip the doubles we report while keeping golden files
// stable across platforms.
std::string format_real(double v);

// Minimal single-object JSON with insertion-ordered keys and our own number
// formatting; reports must be byte-identical across runs.
class ReportBuilder {
 public:
  ReportBuilder& field(const std::string& key, double v);
  ReportBuilder& field(const std::string& key, std::uint64_t v);
  ReportBuilder& field(const std::string& key, int v);
  ReportBuilder& field(const std::string& key, bool v);
  ReportBuilder& field(const std::string& key, const std::string& v);
  ReportBuilder& field_array(const std::string& key, const Vec& v);

  std::string json() const;
  // header row + one data row, same field order
  std::string csv() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;  // key, json value
  std::vector<std::pair<std::string, std::string>> raw_;     // key, csv cell
};

ReportBuilder report_of(const ProbEstimate& e);
ReportBuilder report_of(const SandwichReport& r);
ReportBuilder report_of(const CertifiedSum& s);
ReportBuilder report_of(const SmoothingResult& r);
ReportBuilder report_of(const DecisionReport& r);
ReportBuilder report_of(const OverlapRadii& r);

// Tabular: one row per shell (i, k_i, weight).
std::string shells_csv(const ShellClaims& claims);
std::string shells_json(const ShellClaims& claims);

// Writes to the path, or stdout when path is empty.
void emit_report(const std::string& text, const std::string& path);

}  // namespace latsmooth
