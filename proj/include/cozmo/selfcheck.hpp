#pragma once
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cozmo/a51.hpp"
#include "cozmo/bitseq.hpp"
#include "cozmo/sts/berlekamp_massey.hpp"
#include "cozmo/trivium.hpp"

namespace cozmo {

struct CheckResult
{
  std::string name;
  bool passed = false;
  std::string detail;
};

// Exhaustive minimal-LFSR search, the ground truth for Berlekamp-Massey on
// short sequences. An LFSR of length L generates s iff
// s[j] = XOR_{i=1..L} c_i * s[j-i] for every j in [L, n); the first L bits
// are free initial state.
inline std::size_t min_lfsr_length(std::span<const Bit> s)
{
  const std::size_t n = s.size();
  bool all_zero = true;
  for (Bit b : s)
    if (b) all_zero = false;
  if (all_zero) return 0;

  for (std::size_t len = 1; len < n; ++len) {
    for (std::uint32_t taps = 0; taps < (std::uint32_t{1} << len); ++taps) {
      bool ok = true;
      for (std::size_t j = len; j < n && ok; ++j) {
        int bit = 0;
        for (std::size_t i = 1; i <= len; ++i)
          bit ^= ((taps >> (i - 1)) & 1u) & s[j - i];
        ok = bit == s[j];
      }
      if (ok) return len;
    }
  }
  return n; // length n always suffices: nothing constrains the free state
}

namespace detail {

// Standard update with the AND gates forced to zero; probing this map on the
// 288 unit vectors recovers the transition matrix column by column.
inline TriviumBits linearized_trivium_clock(const TriviumBits& z)
{
  auto at1 = [&](int i) -> Bit { return z[static_cast<std::size_t>(i - 1)]; };
  const Bit a = at1(66) ^ at1(93) ^ at1(171);
  const Bit b = at1(162) ^ at1(177) ^ at1(264);
  const Bit c = at1(243) ^ at1(288) ^ at1(69);
  TriviumBits out{};
  for (std::size_t i = 287; i > 0; --i) out[i] = z[i - 1];
  out[0] = c;
  out[93] = a;
  out[177] = b;
  return out;
}

inline TriviumState random_loaded_state(std::mt19937_64& rng)
{
  TriviumKey key;
  TriviumIV iv;
  for (auto& b : key.bits) b = static_cast<Bit>(rng() & 1u);
  for (auto& b : iv.bits) b = static_cast<Bit>(rng() & 1u);
  return trivium_load(key, iv);
}

} // namespace detail

// Majority output equals the at-least-two-ones rule on all 8 inputs.
inline CheckResult check_majority_truth_table()
{
  for (int v = 0; v < 8; ++v) {
    const Bit l = static_cast<Bit>(v >> 2 & 1);
    const Bit m = static_cast<Bit>(v >> 1 & 1);
    const Bit n = static_cast<Bit>(v & 1);
    const Bit expected = (l + m + n >= 2) ? 1 : 0;
    if (majority(l, m, n) != expected)
      return {"majority truth table", false,
              "mismatch at input " + std::to_string(v)};
  }
  return {"majority truth table", true, "8/8 inputs"};
}

// Transition matrix equals the matrix extracted by probing the linearized
// cipher with unit vectors.
inline CheckResult check_transition_matrix()
{
  const TriviumParams params;
  const TriviumMatrix a = trivium_transition_matrix(params);
  for (std::size_t col = 0; col < 288; ++col) {
    TriviumBits e{};
    e[col] = 1;
    const TriviumBits image = detail::linearized_trivium_clock(e);
    for (std::size_t row = 0; row < 288; ++row) {
      if (a.get(row, col) != (image[row] != 0))
        return {"transition matrix vs unit-vector probing", false,
                "mismatch at row " + std::to_string(row + 1) + ", column " +
                  std::to_string(col + 1)};
    }
  }
  return {"transition matrix vs unit-vector probing", true, "288 columns"};
}

// Matrix-form update agrees with the shift-register form over random loaded
// states; covers at least 10^4 steps in total.
inline CheckResult check_matrix_equivalence(std::uint64_t seed,
                                            std::size_t states = 10,
                                            std::size_t steps = 1200)
{
  std::mt19937_64 rng(seed);
  const TriviumParams params;
  const TriviumMatrix a = trivium_transition_matrix(params);
  for (std::size_t s = 0; s < states; ++s) {
    TriviumState direct = detail::random_loaded_state(rng);
    TriviumBits vec = direct.s;
    for (std::size_t step = 0; step < steps; ++step) {
      detail::trivium_clock_in_place(direct);
      vec = trivium_step_matrix(vec, a, params);
      if (vec != direct.s)
        return {"matrix form vs shift-register form", false,
                "divergence at state " + std::to_string(s) + ", step " +
                  std::to_string(step)};
    }
  }
  return {"matrix form vs shift-register form", true,
          std::to_string(states * steps) + " steps"};
}

// Berlekamp-Massey equals exhaustive search on every short sequence and a
// sample of longer ones.
inline CheckResult check_berlekamp_massey(std::uint64_t seed)
{
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << n); ++v) {
      std::vector<Bit> bits(n);
      for (std::size_t i = 0; i < n; ++i)
        bits[i] = static_cast<Bit>(v >> i & 1u);
      const std::span<const Bit> s(bits.data(), bits.size());
      if (sts::berlekamp_massey(s) != min_lfsr_length(s))
        return {"berlekamp-massey vs exhaustive search", false,
                "mismatch on sequence " + std::to_string(v) + " of length " +
                  std::to_string(n)};
    }
  }
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Bit> bits(16);
    for (auto& b : bits) b = static_cast<Bit>(rng() & 1u);
    const std::span<const Bit> s(bits.data(), bits.size());
    if (sts::berlekamp_massey(s) != min_lfsr_length(s))
      return {"berlekamp-massey vs exhaustive search", false,
              "mismatch on random length-16 trial " + std::to_string(trial)};
  }
  return {"berlekamp-massey vs exhaustive search", true,
          "all lengths <= 12 plus 200 random length-16"};
}

// The cross-validation suite behind the CLI's verify command.
inline std::vector<CheckResult> run_selfcheck(std::uint64_t seed = 0x5eed)
{
  return {
    check_majority_truth_table(),
    check_transition_matrix(),
    check_matrix_equivalence(seed),
    check_berlekamp_massey(seed + 1),
  };
}

} // namespace cozmo
