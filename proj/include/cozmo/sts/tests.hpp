#pragma once
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "cozmo/bitseq.hpp"
#include "cozmo/errors.hpp"
#include "cozmo/sts/berlekamp_massey.hpp"
#include "cozmo/sts/numeric.hpp"

namespace cozmo::sts {

using PValue = double; // always in [0, 1]

enum class Verdict
{
  Pass,
  Fail,
  NotApplicable,
};

inline const char* to_string(Verdict v)
{
  switch (v) {
    case Verdict::Pass: return "Success";
    case Verdict::Fail: return "Failure";
    case Verdict::NotApplicable: return "Not applicable";
  }
  return "?";
}

// One row of the battery report: a test name, its p-value(s) and the verdict
// at the significance level the test was evaluated at. Tests that report a
// pair (cumulative sums, serial) carry two p-values, the rest carry one.
struct TestResult
{
  std::string name;
  std::vector<PValue> pvalues;
  Verdict verdict = Verdict::NotApplicable;
  std::string note;
};

namespace detail {

inline TestResult make_result(std::string name, std::vector<PValue> pvalues,
                              double alpha, std::string note = {})
{
  bool pass = true;
  for (PValue& p : pvalues) {
    p = clamp01(p);
    pass = pass && p >= alpha;
  }
  return TestResult{std::move(name), std::move(pvalues),
                    pass ? Verdict::Pass : Verdict::Fail, std::move(note)};
}

inline void require_nonempty(const BitSequence& seq, const char* who)
{
  if (seq.empty())
    throw InputError(std::string(who) + ": empty sequence");
}

// Frequencies of all overlapping m-bit patterns, reading the sequence
// cyclically so that every one of the n windows contributes.
inline std::vector<std::uint32_t> pattern_counts(const BitSequence& seq,
                                                 unsigned m)
{
  const std::size_t n = seq.size();
  std::vector<std::uint32_t> counts(std::size_t{1} << m, 0);
  std::uint64_t window = 0;
  const std::uint64_t mask = (std::uint64_t{1} << m) - 1;
  for (unsigned j = 0; j < m; ++j)
    window = window << 1 | seq[j % n];
  for (std::size_t i = 0; i < n; ++i) {
    counts[window & mask] += 1;
    window = window << 1 | seq[(i + m) % n];
  }
  return counts;
}

inline double psi_squared(const BitSequence& seq, unsigned m)
{
  if (m == 0) return 0.0;
  const double n = static_cast<double>(seq.size());
  const std::vector<std::uint32_t> counts = pattern_counts(seq, m);
  double sum = 0.0;
  for (std::uint32_t cnt : counts) sum += static_cast<double>(cnt) * cnt;
  return sum * std::exp2(static_cast<double>(m)) / n - n;
}

inline double phi(const BitSequence& seq, unsigned m)
{
  const double n = static_cast<double>(seq.size());
  const std::vector<std::uint32_t> counts = pattern_counts(seq, m);
  double sum = 0.0;
  for (std::uint32_t cnt : counts)
    if (cnt > 0) sum += cnt * std::log(cnt / n);
  return sum / n;
}

inline double cusum_pvalue(std::size_t n_bits, std::size_t z_stat)
{
  const double n = static_cast<double>(n_bits);
  const double z = static_cast<double>(z_stat);
  const double sqrt_n = std::sqrt(n);

  double sum1 = 0.0;
  {
    const long lo = static_cast<long>(std::ceil((-n / z + 1.0) / 4.0));
    const long hi = static_cast<long>(std::floor((n / z - 1.0) / 4.0));
    for (long k = lo; k <= hi; ++k)
      sum1 += normal_cdf((4 * k + 1) * z / sqrt_n) -
              normal_cdf((4 * k - 1) * z / sqrt_n);
  }
  double sum2 = 0.0;
  {
    const long lo = static_cast<long>(std::ceil((-n / z - 3.0) / 4.0));
    const long hi = static_cast<long>(std::floor((n / z - 1.0) / 4.0));
    for (long k = lo; k <= hi; ++k)
      sum2 += normal_cdf((4 * k + 3) * z / sqrt_n) -
              normal_cdf((4 * k + 1) * z / sqrt_n);
  }
  return clamp01(1.0 - sum1 + sum2);
}

} // namespace detail

// Monobit test: S = sum of (2*bit - 1), p = erfc(|S| / sqrt(2n)).
inline TestResult frequency_test(const BitSequence& seq, double alpha = 0.01)
{
  detail::require_nonempty(seq, "frequency_test");
  const std::size_t n = seq.size();
  std::int64_t s = 0;
  for (Bit b : seq) s += 2 * static_cast<int>(b) - 1;
  const double p = erfc(std::fabs(static_cast<double>(s)) /
                        std::sqrt(2.0 * static_cast<double>(n)));
  std::string note;
  if (n < 100) note = "n < 100: below the recommended minimum length";
  return detail::make_result("Frequency", {p}, alpha, std::move(note));
}

enum class CusumMode
{
  Forward,
  Backward,
};

// Maximal excursion from zero of the +-1 random walk, forward or backward.
inline TestResult cusum_test(const BitSequence& seq, CusumMode mode,
                             double alpha = 0.01)
{
  detail::require_nonempty(seq, "cusum_test");
  const std::size_t n = seq.size();
  std::int64_t sum = 0;
  std::int64_t max_abs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Bit b = mode == CusumMode::Forward ? seq[i] : seq[n - 1 - i];
    sum += 2 * static_cast<int>(b) - 1;
    max_abs = std::max(max_abs, std::abs(sum));
  }
  const double p = detail::cusum_pvalue(n, static_cast<std::size_t>(max_abs));
  std::string note;
  if (n < 100) note = "n < 100: below the recommended minimum length";
  return detail::make_result(mode == CusumMode::Forward
                               ? "Cumulative Sums (forward)"
                               : "Cumulative Sums (backward)",
                             {p}, alpha, std::move(note));
}

// Compares the frequencies of overlapping m- and (m+1)-bit patterns:
// chi^2 = 2n(ln 2 - ApEn(m)), p = igamc(2^(m-1), chi^2/2).
inline TestResult approx_entropy_test(const BitSequence& seq, unsigned m,
                                      double alpha = 0.01)
{
  detail::require_nonempty(seq, "approx_entropy_test");
  const std::size_t n = seq.size();
  if (m < 1)
    throw ParamError("approx_entropy_test: require m >= 1");
  if (m >= 62 || (std::size_t{1} << m) > n)
    throw ParamError("approx_entropy_test: m = " + std::to_string(m) +
                     " too large for n = " + std::to_string(n));
  const double apen = detail::phi(seq, m) - detail::phi(seq, m + 1);
  const double chi2 = 2.0 * static_cast<double>(n) * (std::numbers::ln2 - apen);
  const double p = igamc(std::exp2(static_cast<double>(m - 1)),
                         std::max(chi2, 0.0) / 2.0);
  std::string note;
  if (std::exp2(static_cast<double>(m) + 4.0) > static_cast<double>(n))
    note = "m above the recommended bound m < log2(n) - 4";
  return detail::make_result("Approximate Entropy", {p}, alpha,
                             std::move(note));
}

// Probabilities of the seven linear-complexity categories for a random
// block; exact rationals, summing to 1.
inline constexpr std::array<double, 7> kLinComplexityCategoryProb = {
  1.0 / 96, 1.0 / 32, 1.0 / 8, 1.0 / 2, 1.0 / 4, 1.0 / 16, 1.0 / 48};

// Distribution of per-block linear complexity around its expected value,
// classified into the seven standard categories.
inline TestResult linear_complexity_test(const BitSequence& seq, unsigned block,
                                         double alpha = 0.01)
{
  detail::require_nonempty(seq, "linear_complexity_test");
  if (block < 500 || block > 5000)
    throw ParamError("linear_complexity_test: require 500 <= M <= 5000, got " +
                     std::to_string(block));
  const std::size_t n = seq.size();
  const std::size_t blocks = n / block;
  if (blocks == 0)
    throw ParamError("linear_complexity_test: sequence shorter than one block");

  const double m_len = static_cast<double>(block);
  const double sign_mean = block % 2 == 0 ? 1.0 : -1.0;
  const double mean = m_len / 2.0 + (9.0 + sign_mean) / 36.0 -
                      (m_len / 3.0 + 2.0 / 9.0) / std::exp2(m_len);
  const double sign_t = block % 2 == 0 ? 1.0 : -1.0;

  std::array<std::uint32_t, 7> nu{};
  const std::span<const Bit> all = seq.bits();
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::size_t len =
      berlekamp_massey(all.subspan(i * block, block));
    const double t = sign_t * (static_cast<double>(len) - mean) + 2.0 / 9.0;
    int cat;
    if (t <= -2.5) cat = 0;
    else if (t <= -1.5) cat = 1;
    else if (t <= -0.5) cat = 2;
    else if (t <= 0.5) cat = 3;
    else if (t <= 1.5) cat = 4;
    else if (t <= 2.5) cat = 5;
    else cat = 6;
    nu[static_cast<std::size_t>(cat)] += 1;
  }

  double chi2 = 0.0;
  for (std::size_t i = 0; i < 7; ++i) {
    const double expected =
      static_cast<double>(blocks) * kLinComplexityCategoryProb[i];
    const double diff = static_cast<double>(nu[i]) - expected;
    chi2 += diff * diff / expected;
  }
  const double p = igamc(3.0, chi2 / 2.0);
  std::string note;
  if (blocks < 200)
    note = "fewer than the recommended 200 blocks (" + std::to_string(blocks) +
           ")";
  return detail::make_result("Linear Complexity", {p}, alpha, std::move(note));
}

// Overlapping m-bit pattern counts via the psi^2 statistics; reports the
// first and second difference p-values.
inline TestResult serial_test(const BitSequence& seq, unsigned m,
                              double alpha = 0.01)
{
  detail::require_nonempty(seq, "serial_test");
  const std::size_t n = seq.size();
  if (m < 2)
    throw ParamError("serial_test: require m >= 2");
  if (m >= 64 || (std::size_t{1} << m) > n)
    throw ParamError("serial_test: m = " + std::to_string(m) +
                     " too large for n = " + std::to_string(n));
  const double psi_m = detail::psi_squared(seq, m);
  const double psi_m1 = detail::psi_squared(seq, m - 1);
  const double psi_m2 = detail::psi_squared(seq, m - 2);
  const double del1 = psi_m - psi_m1;
  const double del2 = psi_m - 2.0 * psi_m1 + psi_m2;
  const double p1 = igamc(std::exp2(static_cast<double>(m) - 2.0),
                          std::max(del1, 0.0) / 2.0);
  const double p2 = igamc(std::exp2(static_cast<double>(m) - 3.0),
                          std::max(del2, 0.0) / 2.0);
  std::string note;
  if (std::exp2(static_cast<double>(m) + 2.0) > static_cast<double>(n))
    note = "m above the recommended bound m < log2(n) - 2";
  return detail::make_result("Serial", {p1, p2}, alpha, std::move(note));
}

// Longest run of ones per block, with the standard three-regime block size.
inline TestResult longest_run_test(const BitSequence& seq, double alpha = 0.01)
{
  const std::size_t n = seq.size();
  if (n < 128)
    throw InputError("longest_run_test: require at least 128 bits, got " +
                     std::to_string(n));

  std::size_t block;
  std::size_t k;
  std::vector<double> prob;
  std::vector<std::size_t> edges; // run-length category upper bounds
  if (n < 6272) {
    block = 8;
    k = 3;
    prob = {0.21484375, 0.3671875, 0.23046875, 0.1875};
    edges = {1, 2, 3};
  } else if (n < 750000) {
    block = 128;
    k = 5;
    prob = {0.1174035788, 0.242955959, 0.249363483,
            0.17517706,   0.102701071, 0.112398847};
    edges = {4, 5, 6, 7, 8};
  } else {
    block = 10000;
    k = 6;
    prob = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
    edges = {10, 11, 12, 13, 14, 15};
  }

  const std::size_t blocks = n / block;
  std::vector<std::uint32_t> nu(k + 1, 0);
  for (std::size_t i = 0; i < blocks; ++i) {
    std::size_t longest = 0;
    std::size_t run = 0;
    for (std::size_t j = i * block; j < (i + 1) * block; ++j) {
      if (seq[j]) {
        run += 1;
        longest = std::max(longest, run);
      } else {
        run = 0;
      }
    }
    std::size_t cat = k;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (longest <= edges[e]) {
        cat = e;
        break;
      }
    }
    nu[cat] += 1;
  }

  double chi2 = 0.0;
  for (std::size_t i = 0; i <= k; ++i) {
    const double expected = static_cast<double>(blocks) * prob[i];
    const double diff = static_cast<double>(nu[i]) - expected;
    chi2 += diff * diff / expected;
  }
  const double p = igamc(static_cast<double>(k) / 2.0, chi2 / 2.0);
  return detail::make_result("Longest Run of Ones", {p}, alpha);
}

// Number of runs versus its expectation. Not applicable when the frequency
// prerequisite |pi - 1/2| >= 2/sqrt(n) fails.
inline TestResult runs_test(const BitSequence& seq, double alpha = 0.01)
{
  detail::require_nonempty(seq, "runs_test");
  const std::size_t n = seq.size();
  std::size_t ones = 0;
  for (Bit b : seq) ones += b;
  const double pi = static_cast<double>(ones) / static_cast<double>(n);
  const double tau = 2.0 / std::sqrt(static_cast<double>(n));
  if (std::fabs(pi - 0.5) >= tau) {
    return TestResult{"Runs",
                      {},
                      Verdict::NotApplicable,
                      "frequency prerequisite failed (pi = " +
                        std::to_string(pi) + ")"};
  }
  std::size_t v = 1;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (seq[i] != seq[i + 1]) v += 1;
  const double product = pi * (1.0 - pi);
  double p = 0.0;
  if (product > 0.0) {
    p = erfc(std::fabs(static_cast<double>(v) -
                       2.0 * static_cast<double>(n) * product) /
             (2.0 * std::sqrt(2.0 * static_cast<double>(n)) * product));
  }
  return detail::make_result("Runs", {p}, alpha);
}

} // namespace cozmo::sts
