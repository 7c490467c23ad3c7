#pragma once
#include <cstdint>
#include <span>
#include <vector>

#include "cozmo/bitseq.hpp"
#include "cozmo/errors.hpp"

namespace cozmo::sts {

// Length of the shortest LFSR generating the sequence, computed by the
// Berlekamp-Massey algorithm over GF(2). The connection polynomials are kept
// word-packed so a step costs O(n/64); blocks of a few thousand bits stay
// cheap even inside the linear-complexity test's per-block loop.
inline std::size_t berlekamp_massey(std::span<const Bit> s)
{
  const std::size_t n = s.size();
  if (n == 0)
    throw InputError("berlekamp_massey: empty sequence");

  const std::size_t words = n / 64 + 4;
  // rev holds the sequence reversed: bit j of rev is s[n-1-j]. The
  // discrepancy at step N is then the parity of C & (rev >> (n-1-N)).
  std::vector<std::uint64_t> rev(words, 0), c(words, 0), b(words, 0),
    tmp(words, 0);
  for (std::size_t j = 0; j < n; ++j)
    if (s[n - 1 - j])
      rev[j >> 6] |= std::uint64_t{1} << (j & 63);

  c[0] = 1;
  b[0] = 1;
  std::size_t len = 0;   // current LFSR length L
  std::size_t dist = 1;  // N - m, distance to the last length change

  auto xor_shifted = [&](std::vector<std::uint64_t>& dst,
                         const std::vector<std::uint64_t>& src,
                         std::size_t k) {
    const std::size_t w0 = k >> 6;
    const unsigned off = static_cast<unsigned>(k & 63);
    for (std::size_t w = 0; w < src.size(); ++w) {
      if (src[w] == 0) continue;
      if (w + w0 < dst.size()) dst[w + w0] ^= src[w] << off;
      if (off != 0 && w + w0 + 1 < dst.size())
        dst[w + w0 + 1] ^= src[w] >> (64 - off);
    }
  };

  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t shift = n - 1 - pos;
    const std::size_t w0 = shift >> 6;
    const unsigned off = static_cast<unsigned>(shift & 63);
    const std::size_t active = (len + 64) >> 6;

    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < active; ++w) {
      std::uint64_t r = (w0 + w < words) ? rev[w0 + w] >> off : 0;
      if (off != 0 && w0 + w + 1 < words) r |= rev[w0 + w + 1] << (64 - off);
      acc ^= c[w] & r;
    }
    const bool d = __builtin_popcountll(acc) & 1;

    if (!d) {
      ++dist;
    } else if (2 * len <= pos) {
      tmp = c;
      xor_shifted(c, b, dist);
      b = tmp;
      len = pos + 1 - len;
      dist = 1;
    } else {
      xor_shifted(c, b, dist);
      ++dist;
    }
  }
  return len;
}

inline std::size_t berlekamp_massey(const BitSequence& seq)
{
  return berlekamp_massey(seq.bits());
}

} // namespace cozmo::sts
