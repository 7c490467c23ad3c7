#pragma once
// Independent reimplementation of the seven statistical tests, used only to
// cross-check the library's p-values. Deliberately written with different
// machinery: libm's erfc/lgamma instead of the library numerics, closed-form
// incomplete gamma sums (the tests only ever need integer or half-integer a),
// map-based pattern counting and a textbook bool-array Berlekamp-Massey.

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cozmo/bitseq.hpp"

namespace oracle {

using cozmo::Bit;
using cozmo::BitSequence;

// Q(a, x) for a = k or k + 1/2 only, via the Poisson sum / erfc recurrence.
inline double igamc(double a, double x)
{
  if (!(a > 0.0) || !(x >= 0.0))
    throw std::invalid_argument("oracle igamc: bad domain");
  if (x == 0.0) return 1.0;

  const double k_int = std::round(a);
  const double k_half = std::round(a - 0.5);
  if (std::fabs(a - k_int) < 1e-12) {
    // Q(k, x) = sum_{j=0}^{k-1} x^j e^-x / j!
    double q = 0.0;
    for (double j = 0.0; j < k_int - 0.5; j += 1.0) {
      const double lt = j * std::log(x) - x - std::lgamma(j + 1.0);
      if (lt > -745.0) q += std::exp(lt);
    }
    return q;
  }
  if (std::fabs(a - 0.5 - k_half) < 1e-12) {
    // Q(1/2, x) = erfc(sqrt(x)); Q(a+1, x) = Q(a, x) + x^a e^-x / Gamma(a+1)
    double q = std::erfc(std::sqrt(x));
    for (double j = 0.5; j < a - 0.25; j += 1.0) {
      const double lt = j * std::log(x) - x - std::lgamma(j + 1.0);
      if (lt > -745.0) q += std::exp(lt);
    }
    return q;
  }
  throw std::invalid_argument("oracle igamc: a must be integer or half-integer");
}

inline double normal_cdf(double z)
{
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

inline double clamp01(double p)
{
  return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

inline double frequency_pvalue(const BitSequence& seq)
{
  long s = 0;
  for (Bit b : seq) s += b ? 1 : -1;
  return std::erfc(std::labs(s) / std::sqrt(2.0 * double(seq.size())));
}

inline double cusum_pvalue(const BitSequence& seq, bool forward)
{
  const std::size_t n = seq.size();
  long sum = 0, z = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += seq[forward ? i : n - 1 - i] ? 1 : -1;
    z = std::max(z, std::labs(sum));
  }
  const double nn = double(n), zz = double(z);
  double sum1 = 0.0;
  for (long k = long(std::ceil((-nn / zz + 1.0) / 4.0));
       k <= long(std::floor((nn / zz - 1.0) / 4.0)); ++k)
    sum1 += normal_cdf((4 * k + 1) * zz / std::sqrt(nn)) -
            normal_cdf((4 * k - 1) * zz / std::sqrt(nn));
  double sum2 = 0.0;
  for (long k = long(std::ceil((-nn / zz - 3.0) / 4.0));
       k <= long(std::floor((nn / zz - 1.0) / 4.0)); ++k)
    sum2 += normal_cdf((4 * k + 3) * zz / std::sqrt(nn)) -
            normal_cdf((4 * k + 1) * zz / std::sqrt(nn));
  return clamp01(1.0 - sum1 + sum2);
}

// Cyclic overlapping pattern counts keyed by the pattern text.
inline std::map<std::string, long> count_patterns(const BitSequence& seq,
                                                  unsigned m)
{
  const std::size_t n = seq.size();
  std::map<std::string, long> counts;
  for (std::size_t i = 0; i < n; ++i) {
    std::string key(m, '0');
    for (unsigned j = 0; j < m; ++j) key[j] = seq[(i + j) % n] ? '1' : '0';
    counts[key] += 1;
  }
  return counts;
}

inline double apen_pvalue(const BitSequence& seq, unsigned m)
{
  const double n = double(seq.size());
  auto phi = [&](unsigned mm) {
    double acc = 0.0;
    for (const auto& [pat, cnt] : count_patterns(seq, mm))
      acc += (cnt / n) * std::log(cnt / n);
    return acc;
  };
  const double apen = phi(m) - phi(m + 1);
  const double chi2 = 2.0 * n * (std::log(2.0) - apen);
  return igamc(std::pow(2.0, double(m) - 1.0), std::max(chi2, 0.0) / 2.0);
}

inline std::pair<double, double> serial_pvalues(const BitSequence& seq,
                                                unsigned m)
{
  const double n = double(seq.size());
  auto psi2 = [&](unsigned mm) {
    if (mm == 0) return 0.0;
    double acc = 0.0;
    for (const auto& [pat, cnt] : count_patterns(seq, mm))
      acc += double(cnt) * double(cnt);
    return acc * std::pow(2.0, double(mm)) / n - n;
  };
  const double del1 = psi2(m) - psi2(m - 1);
  const double del2 = psi2(m) - 2.0 * psi2(m - 1) + psi2(m - 2);
  return {igamc(std::pow(2.0, double(m) - 2.0), std::max(del1, 0.0) / 2.0),
          igamc(std::pow(2.0, double(m) - 3.0), std::max(del2, 0.0) / 2.0)};
}

// Textbook bool-array Berlekamp-Massey.
inline std::size_t linear_complexity(const std::vector<int>& s)
{
  const std::size_t n = s.size();
  std::vector<int> c(n + 1, 0), b(n + 1, 0), t(n + 1, 0);
  c[0] = b[0] = 1;
  std::size_t l = 0;
  long m = -1;
  for (std::size_t pos = 0; pos < n; ++pos) {
    int d = s[pos];
    for (std::size_t i = 1; i <= l; ++i) d ^= c[i] & s[pos - i];
    if (d == 1) {
      t = c;
      const std::size_t shift = std::size_t(long(pos) - m);
      for (std::size_t j = 0; j + shift < c.size(); ++j)
        if (b[j]) c[j + shift] ^= 1;
      if (l <= pos / 2) {
        l = pos + 1 - l;
        m = long(pos);
        b = t;
      }
    }
  }
  return l;
}

inline double lincomp_pvalue(const BitSequence& seq, unsigned block)
{
  const std::size_t blocks = seq.size() / block;
  const double pi[7] = {1.0 / 96, 1.0 / 32, 1.0 / 8, 1.0 / 2,
                        1.0 / 4,  1.0 / 16, 1.0 / 48};
  const double mean = block / 2.0 + (9.0 + (block % 2 ? -1.0 : 1.0)) / 36.0 -
                      (block / 3.0 + 2.0 / 9.0) / std::pow(2.0, double(block));
  double nu[7] = {0, 0, 0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < blocks; ++i) {
    std::vector<int> blk(block);
    for (unsigned j = 0; j < block; ++j) blk[j] = seq[i * block + j];
    const double l = double(linear_complexity(blk));
    const double t = (block % 2 ? -1.0 : 1.0) * (l - mean) + 2.0 / 9.0;
    if (t <= -2.5) nu[0] += 1;
    else if (t <= -1.5) nu[1] += 1;
    else if (t <= -0.5) nu[2] += 1;
    else if (t <= 0.5) nu[3] += 1;
    else if (t <= 1.5) nu[4] += 1;
    else if (t <= 2.5) nu[5] += 1;
    else nu[6] += 1;
  }
  double chi2 = 0.0;
  for (int i = 0; i < 7; ++i)
    chi2 += (nu[i] - blocks * pi[i]) * (nu[i] - blocks * pi[i]) /
            (blocks * pi[i]);
  return igamc(3.0, chi2 / 2.0);
}

inline double longest_run_pvalue(const BitSequence& seq)
{
  const std::size_t n = seq.size();
  std::size_t block, k;
  std::vector<double> pi;
  std::vector<long> lo; // lowest run length of each category
  if (n < 6272) {
    block = 8; k = 3;
    pi = {0.21484375, 0.3671875, 0.23046875, 0.1875};
    lo = {0, 2, 3, 4};
  } else if (n < 750000) {
    block = 128; k = 5;
    pi = {0.1174035788, 0.242955959, 0.249363483,
          0.17517706,   0.102701071, 0.112398847};
    lo = {0, 5, 6, 7, 8, 9};
  } else {
    block = 10000; k = 6;
    pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
    lo = {0, 11, 12, 13, 14, 15, 16};
  }
  const std::size_t blocks = n / block;
  std::vector<double> nu(k + 1, 0.0);
  for (std::size_t i = 0; i < blocks; ++i) {
    long longest = 0, run = 0;
    for (std::size_t j = i * block; j < (i + 1) * block; ++j) {
      run = seq[j] ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    std::size_t cat = 0;
    for (std::size_t e = 0; e <= k; ++e)
      if (longest >= lo[e]) cat = e;
    nu[cat] += 1;
  }
  double chi2 = 0.0;
  for (std::size_t i = 0; i <= k; ++i)
    chi2 += (nu[i] - blocks * pi[i]) * (nu[i] - blocks * pi[i]) /
            (blocks * pi[i]);
  return igamc(k / 2.0, chi2 / 2.0);
}

// Returns false when the frequency prerequisite fails (not applicable).
inline bool runs_pvalue(const BitSequence& seq, double& p_out)
{
  const std::size_t n = seq.size();
  double ones = 0;
  for (Bit b : seq) ones += b;
  const double pi = ones / double(n);
  if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(double(n))) return false;
  double v = 1;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (seq[i] != seq[i + 1]) v += 1;
  p_out = std::erfc(std::fabs(v - 2.0 * n * pi * (1.0 - pi)) /
                    (2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi)));
  return true;
}

} // namespace oracle
