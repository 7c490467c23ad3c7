#pragma once
#include <array>
#include <cstdint>
#include <cstring>
#include <string_view>
#include <utility>

#include "cozmo/bitseq.hpp"
#include "cozmo/errors.hpp"

namespace cozmo {

// 80-bit secret key K1..K80. K1 is the most significant bit of the first
// key byte (20 hex digits).
struct TriviumKey
{
  std::array<Bit, 80> bits{};

  static TriviumKey from_hex(std::string_view hex)
  {
    if (hex.size() != 20)
      throw LengthError("TriviumKey: expected 20 hex digits, got " +
                        std::to_string(hex.size()));
    TriviumKey k;
    const BitSequence seq = BitSequence::from_hex(hex);
    for (std::size_t i = 0; i < 80; ++i) k.bits[i] = seq[i];
    return k;
  }

  static TriviumKey from_bits(const BitSequence& seq)
  {
    if (seq.size() != 80)
      throw LengthError("TriviumKey: expected 80 bits, got " +
                        std::to_string(seq.size()));
    TriviumKey k;
    for (std::size_t i = 0; i < 80; ++i) k.bits[i] = seq[i];
    return k;
  }

  bool operator==(const TriviumKey&) const = default;
};

// 80-bit initialization vector IV1..IV80, same conventions as the key.
struct TriviumIV
{
  std::array<Bit, 80> bits{};

  static TriviumIV from_hex(std::string_view hex)
  {
    if (hex.size() != 20)
      throw LengthError("TriviumIV: expected 20 hex digits, got " +
                        std::to_string(hex.size()));
    TriviumIV iv;
    const BitSequence seq = BitSequence::from_hex(hex);
    for (std::size_t i = 0; i < 80; ++i) iv.bits[i] = seq[i];
    return iv;
  }

  static TriviumIV from_bits(const BitSequence& seq)
  {
    if (seq.size() != 80)
      throw LengthError("TriviumIV: expected 80 bits, got " +
                        std::to_string(seq.size()));
    TriviumIV iv;
    for (std::size_t i = 0; i < 80; ++i) iv.bits[i] = seq[i];
    return iv;
  }

  bool operator==(const TriviumIV&) const = default;
};

// The 288-bit internal state s1..s288 (stored at s[0..287]) plus the number
// of clock operations applied since loading.
struct TriviumState
{
  std::array<Bit, 288> s{};
  std::uint64_t clocks = 0;

  bool operator==(const TriviumState&) const = default;
};

// Register geometry of the cipher, used by the matrix-form oracle.
//
// All positions are multiples of three. n1, n2, n3 locate the register ends
// 3n1, 3n2, 3n3 (93, 177, 288); u1, u3, u5 locate the feed-forward taps
// 3u1, 3u3, 3u5 (66, 162, 243) and u2, u4, u6 the cross-feed taps
// 3u2, 3u4, 3u6 (69, 171, 264). The output taps are 3u1^3n1, 3u3^3n2,
// 3u5^3n3 pairs; the AND gates sit at (3ni-2, 3ni-1).
struct TriviumParams
{
  unsigned n1 = 31, n2 = 59, n3 = 96;
  unsigned u1 = 22, u2 = 23, u3 = 54, u4 = 57, u5 = 81, u6 = 88;

  void validate() const
  {
    if (3 * n3 != 288)
      throw ParamError("TriviumParams: 3*n3 must be 288");
    if (!(n1 < n2 && n2 < n3))
      throw ParamError("TriviumParams: require n1 < n2 < n3");
    if (!(0 < u1 && u1 < n1 && 0 < u2 && u2 < n1))
      throw ParamError("TriviumParams: u1, u2 must lie inside register 1");
    if (!(n1 < u3 && u3 < n2 && n1 < u4 && u4 < n2))
      throw ParamError("TriviumParams: u3, u4 must lie inside register 2");
    if (!(n2 < u5 && u5 < n3 && n2 < u6 && u6 < n3))
      throw ParamError("TriviumParams: u5, u6 must lie inside register 3");
  }
};

namespace detail {

// One cipher step on the state in place; returns the output bit.
inline Bit trivium_clock_in_place(TriviumState& st)
{
  auto s = [&](int i) -> Bit { return st.s[static_cast<std::size_t>(i - 1)]; };

  const Bit t1 = s(66) ^ s(93);
  const Bit t2 = s(162) ^ s(177);
  const Bit t3 = s(243) ^ s(288);
  const Bit z = t1 ^ t2 ^ t3;

  const Bit a = t1 ^ (s(91) & s(92)) ^ s(171);   // -> s94
  const Bit b = t2 ^ (s(175) & s(176)) ^ s(264); // -> s178
  const Bit c = t3 ^ (s(286) & s(287)) ^ s(69);  // -> s1

  std::memmove(st.s.data() + 1, st.s.data(), 287);
  st.s[0] = c;
  st.s[93] = a;
  st.s[177] = b;
  st.clocks += 1;
  return z;
}

} // namespace detail

// Loads key and IV into a fresh state:
//   (s1..s93)    <- (K1..K80, 0...0)
//   (s94..s177)  <- (IV1..IV80, 0...0)
//   (s178..s288) <- (0...0, 1, 1, 1)
inline TriviumState trivium_load(const TriviumKey& key, const TriviumIV& iv)
{
  TriviumState st;
  for (std::size_t i = 0; i < 80; ++i) st.s[i] = key.bits[i];
  for (std::size_t i = 0; i < 80; ++i) st.s[93 + i] = iv.bits[i];
  st.s[285] = st.s[286] = st.s[287] = 1;
  return st;
}

// One standard cipher update. Returns the successor state and the output bit.
inline std::pair<TriviumState, Bit> trivium_clock(const TriviumState& state)
{
  TriviumState next = state;
  const Bit z = detail::trivium_clock_in_place(next);
  return {next, z};
}

// 1152 initialization clockings with discarded output. Only valid on a
// freshly loaded state.
inline TriviumState trivium_warmup(const TriviumState& state)
{
  if (state.clocks != 0)
    throw UsageError("trivium_warmup: state has already been clocked (" +
                     std::to_string(state.clocks) + " times)");
  TriviumState st = state;
  for (int i = 0; i < 1152; ++i) detail::trivium_clock_in_place(st);
  return st;
}

// Load, warm up, and collect n keystream bits in generation order. The
// cipher's nominal output bound of 2^64 bits per (key, IV) is not enforced.
inline BitSequence trivium_keystream(const TriviumKey& key, const TriviumIV& iv,
                                     std::size_t n)
{
  TriviumState st = trivium_warmup(trivium_load(key, iv));
  BitSequence out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(detail::trivium_clock_in_place(st));
  return out;
}

// --- Matrix form ------------------------------------------------------------
//
// The state update can be written z(t+1) = A*z(t) + b(t) over GF(2), where A
// is a sparse 288x288 matrix (three tap rows plus the subdiagonal shift) and
// b(t) carries the three AND-gate products. These routines exist as a
// cross-validation oracle for the shift-register form; they are not the
// production keystream path.

using TriviumBits = std::array<Bit, 288>;

// 288x288 binary matrix, each row packed into 64-bit words.
struct TriviumMatrix
{
  static constexpr std::size_t kWords = 5; // ceil(288 / 64)
  std::array<std::array<std::uint64_t, kWords>, 288> rows{};

  void set(std::size_t row, std::size_t col)
  {
    rows[row][col >> 6] |= std::uint64_t{1} << (col & 63);
  }

  bool get(std::size_t row, std::size_t col) const
  {
    return (rows[row][col >> 6] >> (col & 63)) & 1u;
  }
};

// Builds the state-transition matrix A. Row and column numbering is 1-based
// in the construction below to match the state bit numbering; storage is
// 0-based.
inline TriviumMatrix trivium_transition_matrix(const TriviumParams& params)
{
  params.validate();
  TriviumMatrix a;
  auto set1 = [&](unsigned row, unsigned col) { a.set(row - 1, col - 1); };

  // Row 1: linear part of the feedback into s1.
  set1(1, 3 * params.u2);
  set1(1, 3 * params.u5);
  set1(1, 3 * params.n3);
  // Row 3n1+1: linear part of the feedback into s94 (s93 comes from the
  // subdiagonal case below).
  set1(3 * params.n1 + 1, 3 * params.u1);
  set1(3 * params.n1 + 1, 3 * params.u4);
  // Row 3n2+1: linear part of the feedback into s178.
  set1(3 * params.n2 + 1, 3 * params.u3);
  set1(3 * params.n2 + 1, 3 * params.u6);
  // Shift: s_i(t+1) gets s_{i-1}(t) for every i > 1.
  for (unsigned i = 2; i <= 3 * params.n3; ++i) set1(i, i - 1);

  return a;
}

namespace detail {

inline std::array<std::uint64_t, TriviumMatrix::kWords>
pack_state_vector(const TriviumBits& z)
{
  std::array<std::uint64_t, TriviumMatrix::kWords> packed{};
  for (std::size_t i = 0; i < z.size(); ++i)
    packed[i >> 6] |= std::uint64_t{z[i]} << (i & 63);
  return packed;
}

} // namespace detail

// One step of the matrix form: A*z(t) + b(t), with b(t) the three AND-gate
// products placed at rows 1, 3n1+1, 3n2+1.
inline TriviumBits trivium_step_matrix(const TriviumBits& z,
                                       const TriviumMatrix& a,
                                       const TriviumParams& params)
{
  const auto packed = detail::pack_state_vector(z);

  TriviumBits out{};
  for (std::size_t i = 0; i < 288; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < TriviumMatrix::kWords; ++w)
      acc ^= a.rows[i][w] & packed[w];
    out[i] = static_cast<Bit>(__builtin_popcountll(acc) & 1);
  }

  auto at1 = [&](unsigned i) -> Bit { return z[i - 1]; };
  out[0] ^= at1(3 * params.n3 - 2) & at1(3 * params.n3 - 1);
  out[3 * params.n1] ^= at1(3 * params.n1 - 2) & at1(3 * params.n1 - 1);
  out[3 * params.n2] ^= at1(3 * params.n2 - 2) & at1(3 * params.n2 - 1);
  return out;
}

inline TriviumBits trivium_step_matrix(const TriviumBits& z,
                                       const TriviumParams& params)
{
  return trivium_step_matrix(z, trivium_transition_matrix(params), params);
}

} // namespace cozmo
