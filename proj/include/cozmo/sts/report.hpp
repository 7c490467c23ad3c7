#pragma once
#include <cstdio>
#include <string>

#include <json.hpp>

#include "cozmo/sts/battery.hpp"

namespace cozmo::sts {

namespace detail {

inline std::string format_pvalues(const TestResult& row)
{
  char buf[32];
  if (row.pvalues.empty()) return "-";
  if (row.pvalues.size() == 1) {
    std::snprintf(buf, sizeof buf, "%.6f", row.pvalues[0]);
    return buf;
  }
  std::string out;
  for (std::size_t i = 0; i < row.pvalues.size(); ++i) {
    std::snprintf(buf, sizeof buf, "P%zu-%.6f", i + 1, row.pvalues[i]);
    if (i) out += ' ';
    out += buf;
  }
  return out;
}

} // namespace detail

// Aligned text table mirroring the report layout:
//   Statistical Test | p-value | Success/failure
inline std::string render_text(const TestReport& report)
{
  std::size_t name_w = std::string("Statistical Test").size();
  std::size_t pv_w = std::string("p-value").size();
  for (const TestResult& row : report.rows) {
    name_w = std::max(name_w, row.name.size());
    pv_w = std::max(pv_w, detail::format_pvalues(row).size());
  }

  auto pad = [](const std::string& s, std::size_t w) {
    return s + std::string(w - s.size(), ' ');
  };

  std::string out;
  out += pad("Statistical Test", name_w) + "  " + pad("p-value", pv_w) +
         "  Success/failure\n";
  out += std::string(name_w + pv_w + 19, '-') + "\n";
  for (const TestResult& row : report.rows) {
    out += pad(row.name, name_w) + "  " +
           pad(detail::format_pvalues(row), pv_w) + "  " +
           to_string(row.verdict);
    if (!row.note.empty()) out += "  [" + row.note + "]";
    out += "\n";
  }

  char tail[160];
  std::snprintf(tail, sizeof tail,
                "\nn = %zu bits, alpha = %g, digest = %s\noverall: %s\n",
                report.input_bits, report.config.alpha,
                report.input_digest.c_str(),
                report.all_pass ? "pass" : "FAIL");
  out += tail;
  return out;
}

inline const char* verdict_key(Verdict v)
{
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not_applicable";
  }
  return "?";
}

// Structured report. Schema (stable):
// {
//   "alpha": number, "bits": integer, "digest": string,
//   "params": {"m_serial": int, "m_apen": int, "block_lincomp": int},
//   "tests": [{"name": string, "pvalues": [number...],
//              "verdict": "pass"|"fail"|"not_applicable", "note": string}],
//   "all_pass": bool
// }
inline nlohmann::json to_json(const TestReport& report)
{
  nlohmann::json tests = nlohmann::json::array();
  for (const TestResult& row : report.rows) {
    tests.push_back({{"name", row.name},
                     {"pvalues", row.pvalues},
                     {"verdict", verdict_key(row.verdict)},
                     {"note", row.note}});
  }
  return nlohmann::json{{"alpha", report.config.alpha},
                        {"bits", report.input_bits},
                        {"digest", report.input_digest},
                        {"params",
                         {{"m_serial", report.config.m_serial},
                          {"m_apen", report.config.m_apen},
                          {"block_lincomp", report.config.block_lincomp}}},
                        {"tests", tests},
                        {"all_pass", report.all_pass}};
}

} // namespace cozmo::sts
