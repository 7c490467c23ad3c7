#pragma once
#include <cstdint>
#include <cstdio>
#include <future>
#include <string>
#include <vector>

#include "cozmo/bitseq.hpp"
#include "cozmo/errors.hpp"
#include "cozmo/sts/tests.hpp"

namespace cozmo::sts {

// Battery parameters. Defaults follow the usual recommendations for
// million-bit sequences; all of them can be overridden.
struct BatteryConfig
{
  double alpha = 0.01;      // significance level
  unsigned m_serial = 16;   // serial test block length
  unsigned m_apen = 10;     // approximate entropy block length
  unsigned block_lincomp = 500; // linear complexity block size

  void validate() const
  {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw ParamError("BatteryConfig: require 0 < alpha < 1");
  }
};

// Full battery output: the seven rows in fixed table order
// (Frequency, Cumulative Sums, Approximate Entropy, Linear Complexity,
// Serial, Longest Run of Ones, Runs), the configuration echo and a digest
// of the input sequence. A report passes overall iff every applicable row
// passes.
struct TestReport
{
  std::vector<TestResult> rows;
  BatteryConfig config;
  std::size_t input_bits = 0;
  std::string input_digest;
  bool all_pass = false;
};

namespace detail {

// FNV-1a over the unpacked bit values; enough to identify an input.
inline std::string digest_bits(const BitSequence& seq)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Bit b : seq) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

template<typename Fn>
inline TestResult run_row(Fn&& fn)
{
  try {
    return fn();
  } catch (const Error& e) {
    return TestResult{{}, {}, Verdict::NotApplicable, e.what()};
  }
}

} // namespace detail

// Runs the seven tests. Rows are evaluated concurrently against the shared
// read-only sequence and merged in fixed table order. A test whose
// prerequisites the input cannot meet yields a not-applicable row rather
// than an error.
inline TestReport run_battery(const BitSequence& seq,
                              const BatteryConfig& config = {})
{
  config.validate();
  const double alpha = config.alpha;

  auto frequency = [&] { return frequency_test(seq, alpha); };
  auto cusum = [&] {
    TestResult fwd = cusum_test(seq, CusumMode::Forward, alpha);
    TestResult bwd = cusum_test(seq, CusumMode::Backward, alpha);
    TestResult row = detail::make_result(
      "Cumulative Sums", {fwd.pvalues.at(0), bwd.pvalues.at(0)}, alpha);
    row.note = fwd.note;
    return row;
  };
  auto apen = [&] { return approx_entropy_test(seq, config.m_apen, alpha); };
  auto lincomp = [&] {
    return linear_complexity_test(seq, config.block_lincomp, alpha);
  };
  auto serial = [&] { return serial_test(seq, config.m_serial, alpha); };
  auto longest = [&] { return longest_run_test(seq, alpha); };
  auto runs = [&] { return runs_test(seq, alpha); };

  auto f_freq = std::async(std::launch::async,
                           [&] { return detail::run_row(frequency); });
  auto f_cusum = std::async(std::launch::async,
                            [&] { return detail::run_row(cusum); });
  auto f_apen = std::async(std::launch::async,
                           [&] { return detail::run_row(apen); });
  auto f_lincomp = std::async(std::launch::async,
                              [&] { return detail::run_row(lincomp); });
  auto f_serial = std::async(std::launch::async,
                             [&] { return detail::run_row(serial); });
  auto f_longest = std::async(std::launch::async,
                              [&] { return detail::run_row(longest); });
  auto f_runs = std::async(std::launch::async,
                           [&] { return detail::run_row(runs); });

  TestReport report;
  report.config = config;
  report.input_bits = seq.size();
  report.input_digest = detail::digest_bits(seq);
  report.rows = {f_freq.get(),   f_cusum.get(),  f_apen.get(),
                 f_lincomp.get(), f_serial.get(), f_longest.get(),
                 f_runs.get()};

  static constexpr const char* kRowNames[7] = {
    "Frequency",         "Cumulative Sums", "Approximate Entropy",
    "Linear Complexity", "Serial",          "Longest Run of Ones",
    "Runs"};
  for (std::size_t i = 0; i < report.rows.size(); ++i)
    if (report.rows[i].name.empty()) report.rows[i].name = kRowNames[i];

  report.all_pass = true;
  for (const TestResult& row : report.rows)
    if (row.verdict == Verdict::Fail) report.all_pass = false;
  return report;
}

} // namespace cozmo::sts
