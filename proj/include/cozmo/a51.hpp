#pragma once
#include <array>
#include <cstdint>
#include <cstring>
#include <string_view>
#include <utility>

#include "cozmo/bitseq.hpp"
#include "cozmo/errors.hpp"

namespace cozmo {

// 64-bit key K1..K64; K1 is the most significant bit of the first key byte
// (16 hex digits).
struct A51Key
{
  std::array<Bit, 64> bits{};

  static A51Key from_hex(std::string_view hex)
  {
    if (hex.size() != 16)
      throw LengthError("A51Key: expected 16 hex digits, got " +
                        std::to_string(hex.size()));
    A51Key k;
    const BitSequence seq = BitSequence::from_hex(hex);
    for (std::size_t i = 0; i < 64; ++i) k.bits[i] = seq[i];
    return k;
  }

  static A51Key from_bits(const BitSequence& seq)
  {
    if (seq.size() != 64)
      throw LengthError("A51Key: expected 64 bits, got " +
                        std::to_string(seq.size()));
    A51Key k;
    for (std::size_t i = 0; i < 64; ++i) k.bits[i] = seq[i];
    return k;
  }

  bool operator==(const A51Key&) const = default;
};

// Three shift registers of 19, 22 and 23 bits. In the global numbering
// r0..r63 used throughout, register A is r0..r18, register B is r19..r40 and
// register C is r41..r63; each register's cell 0 is its insertion end.
struct A51State
{
  std::array<Bit, 19> reg_a{};
  std::array<Bit, 22> reg_b{};
  std::array<Bit, 23> reg_c{};

  bool operator==(const A51State&) const = default;
};

// maj(L, M, N) = (L & M) ^ (M & N) ^ (L & N): 1 iff at least two inputs are 1.
inline Bit majority(Bit l, Bit m, Bit n)
{
  return (l & m) ^ (m & n) ^ (l & n);
}

namespace detail {

// Pre-clock output bit: XOR of the last cell of each register.
inline Bit a51_output(const A51State& st)
{
  return st.reg_a[18] ^ st.reg_b[21] ^ st.reg_c[22];
}

template<std::size_t N>
inline void shift_in(std::array<Bit, N>& reg, Bit head)
{
  std::memmove(reg.data() + 1, reg.data(), N - 1);
  reg[0] = head;
}

inline Bit feedback_a(const A51State& st)
{
  return st.reg_a[13] ^ st.reg_a[16] ^ st.reg_a[17] ^ st.reg_a[18];
}

inline Bit feedback_b(const A51State& st)
{
  return st.reg_b[20] ^ st.reg_b[21];
}

inline Bit feedback_c(const A51State& st)
{
  return st.reg_c[7] ^ st.reg_c[20] ^ st.reg_c[21] ^ st.reg_c[22];
}

// Majority-controlled step: registers whose clock tap (r8, r29, r51) agrees
// with the majority shift, the others stay untouched.
inline void a51_step_in_place(A51State& st)
{
  const Bit m = majority(st.reg_a[8], st.reg_b[10], st.reg_c[10]);
  const Bit fa = feedback_a(st);
  const Bit fb = feedback_b(st);
  const Bit fc = feedback_c(st);
  if (st.reg_a[8] == m) shift_in(st.reg_a, fa);
  if (st.reg_b[10] == m) shift_in(st.reg_b, fb);
  if (st.reg_c[10] == m) shift_in(st.reg_c, fc);
}

// Setup step: all three registers shift and the injected bit is XORed into
// every feedback path.
inline void a51_step_all_in_place(A51State& st, Bit injected)
{
  const Bit fa = feedback_a(st) ^ injected;
  const Bit fb = feedback_b(st) ^ injected;
  const Bit fc = feedback_c(st) ^ injected;
  shift_in(st.reg_a, fa);
  shift_in(st.reg_b, fb);
  shift_in(st.reg_c, fc);
}

} // namespace detail

// Order-preserving fill: K1..K19 -> r0..r18, K20..K41 -> r19..r40,
// K42..K64 -> r41..r63.
inline A51State a51_load_raw(const A51Key& key)
{
  A51State st;
  for (std::size_t i = 0; i < 19; ++i) st.reg_a[i] = key.bits[i];
  for (std::size_t i = 0; i < 22; ++i) st.reg_b[i] = key.bits[19 + i];
  for (std::size_t i = 0; i < 23; ++i) st.reg_c[i] = key.bits[41 + i];
  return st;
}

// GSM-style loading: zero state, 64 all-register clocks injecting the key
// bits (least significant bit of each key byte first), 22 injecting the
// frame number (least significant bit first), then the majority-clocked
// mixing phase. The mixing phase is the usual 100 discarded steps plus one
// further step, so that the first pre-clock output bit of a51_keystream is
// the first bit of the published burst vectors.
inline A51State a51_load_standard(const A51Key& key, std::uint32_t frame)
{
  if (frame >= (std::uint32_t{1} << 22))
    throw ParamError("a51_load_standard: frame number must be < 2^22, got " +
                     std::to_string(frame));
  A51State st;
  for (std::size_t i = 0; i < 64; ++i) {
    const Bit key_bit = key.bits[8 * (i / 8) + (7 - i % 8)];
    detail::a51_step_all_in_place(st, key_bit);
  }
  for (std::size_t i = 0; i < 22; ++i) {
    const Bit frame_bit = static_cast<Bit>((frame >> i) & 1u);
    detail::a51_step_all_in_place(st, frame_bit);
  }
  for (int i = 0; i < 101; ++i) detail::a51_step_in_place(st);
  return st;
}

// One step: emits r18^r40^r63 of the current state, then clocks the
// registers that agree with the majority of (r8, r29, r51).
inline std::pair<A51State, Bit> a51_clock(const A51State& state)
{
  const Bit out = detail::a51_output(state);
  A51State next = state;
  detail::a51_step_in_place(next);
  return {next, out};
}

// n successive a51_clock outputs in order.
inline BitSequence a51_keystream(A51State state, std::size_t n)
{
  BitSequence out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(detail::a51_output(state));
    detail::a51_step_in_place(state);
  }
  return out;
}

} // namespace cozmo
