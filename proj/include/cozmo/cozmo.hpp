#pragma once
#include <cstdint>
#include <utility>

#include "cozmo/a51.hpp"
#include "cozmo/bitseq.hpp"
#include "cozmo/trivium.hpp"

namespace cozmo {

// Merged generator: a warmed-up Trivium instance drives an A5/1-shaped
// register bank through the cross-feed p3. A state is only usable for
// keystream generation once warmed (1152 Trivium clockings plus 64 combined
// steps, 1216 in total).
//
// Caution: the cross-feed routing admits an absorbing configuration in which
// register A stops clocking for good and the fresh Trivium bit is discarded
// every step. Streams reach it after roughly 10^5 steps in practice, after
// which the output is constant. The generator is implemented as defined;
// treat long outputs accordingly.
struct CozmoState
{
  TriviumState trivium;
  A51State regs;
  bool warmed = false;
  std::uint64_t steps = 0; // keystream steps emitted since warm-up

  bool operator==(const CozmoState&) const = default;
};

namespace detail {

// One combined step. In order: capture the output bit from the current
// registers, clock Trivium for z, form the feedback bits
//   p1 = r13^r16^r17^r18, p2 = r39^r40, p3 = r48^r61^r62^r63^z,
// then shift the registers in majority, inserting p3 into A, p1 into B and
// p2 into C. Registers not in majority stay untouched and their feedback bit
// is discarded; z is consumed either way.
inline Bit cozmo_step_in_place(CozmoState& st)
{
  const Bit t = a51_output(st.regs);
  const Bit z = trivium_clock_in_place(st.trivium);

  const Bit p1 = feedback_a(st.regs);
  const Bit p2 = feedback_b(st.regs);
  const Bit p3 = feedback_c(st.regs) ^ z;

  const Bit m = majority(st.regs.reg_a[8], st.regs.reg_b[10], st.regs.reg_c[10]);
  if (st.regs.reg_a[8] == m) shift_in(st.regs.reg_a, p3);
  if (st.regs.reg_b[10] == m) shift_in(st.regs.reg_b, p1);
  if (st.regs.reg_c[10] == m) shift_in(st.regs.reg_c, p2);
  return t;
}

// Loading step: same feedback routing, but the stop/go control is disabled
// and all three registers shift, exactly as in the standard A5/1 loading
// phase. 64 of these flush the zero state through the A -> B -> C cross-feed
// chain (19 + 22 + 23 cells), so every register cell has been written by the
// time keystream generation starts. Majority-clocked warm-up from the
// all-zero state would instead freeze register A for good: its clock tap
// traps the first 1 while B and C, fed only from A's still-empty deep taps,
// keep inserting zeros, and the output stays 0 forever.
inline void cozmo_load_step_in_place(CozmoState& st)
{
  const Bit z = trivium_clock_in_place(st.trivium);
  const Bit p1 = feedback_a(st.regs);
  const Bit p2 = feedback_b(st.regs);
  const Bit p3 = feedback_c(st.regs) ^ z;
  shift_in(st.regs.reg_a, p3);
  shift_in(st.regs.reg_b, p1);
  shift_in(st.regs.reg_c, p2);
}

} // namespace detail

// Loads and warms the Trivium core (1152 clockings), zeroes the register
// bank, then runs 64 loading steps that feed Trivium output through the
// register bank with all registers clocking and no output taken. The
// returned state has consumed exactly 1216 Trivium clockings and emitted
// nothing.
inline CozmoState cozmo_init(const TriviumKey& key, const TriviumIV& iv)
{
  CozmoState st;
  st.trivium = trivium_warmup(trivium_load(key, iv));
  for (int i = 0; i < 64; ++i) detail::cozmo_load_step_in_place(st);
  st.warmed = true;
  st.steps = 0;
  return st;
}

// One keystream step: emits r18^r40^r63, then feeds one Trivium bit through
// the register bank.
inline std::pair<CozmoState, Bit> cozmo_step(const CozmoState& state)
{
  CozmoState next = state;
  const Bit t = detail::cozmo_step_in_place(next);
  next.steps += 1;
  return {next, t};
}

// Initialize from (key, iv) and collect n keystream bits in order.
inline BitSequence cozmo_keystream(const TriviumKey& key, const TriviumIV& iv,
                                   std::size_t n)
{
  CozmoState st = cozmo_init(key, iv);
  BitSequence out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(detail::cozmo_step_in_place(st));
    st.steps += 1;
  }
  return out;
}

// XOR the data with the keystream. Running the same call on the output
// restores the input.
inline BitSequence cozmo_encrypt(const TriviumKey& key, const TriviumIV& iv,
                                 const BitSequence& data)
{
  return bitseq_xor(data, cozmo_keystream(key, iv, data.size()));
}

} // namespace cozmo
