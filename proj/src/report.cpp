#include "latsmooth/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "latsmooth/protocols.hpp"

namespace latsmooth {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ReportBuilder& ReportBuilder::field(const std::string& key, double v) {
  const std::string s = format_real(v);
  fields_.emplace_back(key, s);
  raw_.emplace_back(key, s);
  return *this;
}

ReportBuilder& ReportBuilder::field(const std::string& key, std::uint64_t v) {
  const std::string s = std::to_string(v);
  fields_.emplace_back(key, s);
  raw_.emplace_back(key, s);
  return *this;
}

ReportBuilder& ReportBuilder::field(const std::string& key, int v) {
  return field(key, static_cast<std::uint64_t>(v));
}

ReportBuilder& ReportBuilder::field(const std::string& key, bool v) {
  const std::string s = v ? "true" : "false";
  fields_.emplace_back(key, s);
  raw_.emplace_back(key, s);
  return *this;
}

ReportBuilder& ReportBuilder::field(const std::string& key, const std::string& v) {
  fields_.emplace_back(key, "\"" + v + "\"");
  raw_.emplace_back(key, v);
  return *this;
}

ReportBuilder& ReportBuilder::field_array(const std::string& key, const Vec& v) {
  std::string j = "[";
  std::string c;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string s = format_real(v[i]);
    if (i) {
      j += ",";
      c += " ";
    }
    j += s;
    c += s;
  }
  j += "]";
  fields_.emplace_back(key, j);
  raw_.emplace_back(key, c);
  return *this;
}

std::string ReportBuilder::json() const {
  std::string out = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) out += ",";
    out += "\"" + fields_[i].first + "\":" + fields_[i].second;
  }
  out += "}\n";
  return out;
}

std::string ReportBuilder::csv() const {
  std::string head, row;
  for (std::size_t i = 0; i < raw_.size(); ++i) {
    if (i) {
      head += ",";
      row += ",";
    }
    head += raw_[i].first;
    row += raw_[i].second;
  }
  return head + "\n" + row + "\n";
}

ReportBuilder report_of(const ProbEstimate& e) {
  ReportBuilder b;
  b.field("mean", e.mean)
      .field("halfwidth", e.halfwidth)
      .field("trials", e.trials)
      .field("seed", e.seed);
  return b;
}

ReportBuilder report_of(const SandwichReport& r) {
  ReportBuilder b;
  const char* verdict = r.verdict == SandwichVerdict::satisfied    ? "satisfied"
                        : r.verdict == SandwichVerdict::violated   ? "violated"
                                                                   : "undecided";
  b.field("lower", r.lower)
      .field("middle", r.middle.mean)
      .field("middle_halfwidth", r.middle.halfwidth)
      .field("upper", r.upper)
      .field("satisfied", r.satisfied)
      .field("verdict", std::string(verdict))
      .field("trials", r.middle.trials)
      .field("seed", r.middle.seed);
  return b;
}

ReportBuilder report_of(const CertifiedSum& s) {
  ReportBuilder b;
  b.field("value", s.value)
      .field("tail_bound", s.tail_bound)
      .field("s", s.s)
      .field("radius", s.radius)
      .field("point_count", s.point_count);
  return b;
}

ReportBuilder report_of(const SmoothingResult& r) {
  ReportBuilder b;
  b.field("eta", r.eta)
      .field("eps", r.eps)
      .field("bracket_lo", r.bracket_lo)
      .field("bracket_hi", r.bracket_hi)
      .field("rtol", r.rtol)
      .field("log_deriv", r.log_deriv);
  return b;
}

ReportBuilder report_of(const DecisionReport& r) {
  ReportBuilder b;
  b.field("verdict", std::string(verdict_name(r.verdict)))
      .field("sum_u", r.sum_u)
      .field("point_count", r.point_count)
      .field("threshold", r.threshold)
      .field("early_abort", r.early_abort)
      .field("halfwidth", r.halfwidth)
      .field("non_promise", r.non_promise);
  return b;
}

ReportBuilder report_of(const OverlapRadii& r) {
  ReportBuilder b;
  b.field("r_eps", r.r_eps)
      .field("r_upper", r.r_upper)
      .field("delta", r.delta)
      .field("eta_dual", r.eta_dual);
  return b;
}

std::string shells_csv(const ShellClaims& claims) {
  std::string out = "i,k_i,weight\n";
  for (int i = 0; i <= claims.t_max; ++i) {
    const double radius = std::pow(1.0 + claims.alpha, i);
    const double weight = std::exp(-M_PI * radius * radius);
    out += std::to_string(i) + "," + std::to_string(claims.counts[i]) + "," +
           format_real(weight) + "\n";
  }
  return out;
}

std::string shells_json(const ShellClaims& claims) {
  std::string out = "{\"alpha\":" + format_real(claims.alpha) +
                    ",\"eps_y\":" + format_real(claims.eps_y) +
                    ",\"big_r\":" + format_real(claims.big_r) +
                    ",\"t_max\":" + std::to_string(claims.t_max) + ",\"counts\":[";
  for (int i = 0; i <= claims.t_max; ++i) {
    if (i) out += ",";
    out += std::to_string(claims.counts[i]);
  }
  out += "],\"weighted_sum\":" + format_real(coam_weighted_sum(claims)) + "}\n";
  return out;
}

void emit_report(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write report to " + path);
  f << text;
}

}  // namespace latsmooth
