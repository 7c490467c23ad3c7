#include <doctest.h>

#include <random>

#include "cozmo/trivium.hpp"
#include "support/estream_trivium.hpp"

using namespace cozmo;

namespace {

TriviumKey zero_key()
{
  return TriviumKey{};
}

TriviumIV zero_iv()
{
  return TriviumIV{};
}

TriviumKey random_key(std::mt19937_64& rng)
{
  TriviumKey k;
  for (auto& b : k.bits) b = static_cast<Bit>(rng() & 1u);
  return k;
}

TriviumIV random_iv(std::mt19937_64& rng)
{
  TriviumIV iv;
  for (auto& b : iv.bits) b = static_cast<Bit>(rng() & 1u);
  return iv;
}

} // namespace

TEST_CASE("loading layout")
{
  SUBCASE("all-zero key and IV")
  {
    const TriviumState st = trivium_load(zero_key(), zero_iv());
    for (int i = 0; i < 285; ++i) CHECK(st.s[i] == 0);
    CHECK(st.s[285] == 1);
    CHECK(st.s[286] == 1);
    CHECK(st.s[287] == 1);
    CHECK(st.clocks == 0);
  }
  SUBCASE("K1 lands at s1")
  {
    TriviumKey key = zero_key();
    key.bits[0] = 1;
    const TriviumState st = trivium_load(key, zero_iv());
    CHECK(st.s[0] == 1);
    for (int i = 1; i < 285; ++i) CHECK(st.s[i] == 0);
  }
  SUBCASE("IV1 lands at s94")
  {
    TriviumIV iv = zero_iv();
    iv.bits[0] = 1;
    const TriviumState st = trivium_load(zero_key(), iv);
    CHECK(st.s[93] == 1);
    for (int i = 0; i < 285; ++i)
      if (i != 93) CHECK(st.s[i] == 0);
  }
}

TEST_CASE("loading invariant holds for random keys and IVs")
{
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 50; ++trial) {
    const TriviumKey key = random_key(rng);
    const TriviumIV iv = random_iv(rng);
    const TriviumState st = trivium_load(key, iv);
    for (int i = 0; i < 80; ++i) CHECK(st.s[i] == key.bits[i]);
    for (int i = 80; i < 93; ++i) CHECK(st.s[i] == 0);
    for (int i = 0; i < 80; ++i) CHECK(st.s[93 + i] == iv.bits[i]);
    for (int i = 173; i < 285; ++i) CHECK(st.s[i] == 0);
    CHECK(st.s[285] == 1);
    CHECK(st.s[286] == 1);
    CHECK(st.s[287] == 1);
    CHECK(st.clocks == 0);
  }
}

TEST_CASE("first clock of the zero-loaded state outputs 1")
{
  // Output taps on the freshly loaded zero state: only s288 is set.
  const TriviumState st = trivium_load(zero_key(), zero_iv());
  const auto [next, z] = trivium_clock(st);
  CHECK(z == 1);
  CHECK(next.clocks == 1);
  CHECK(next.s.size() == 288);
}

TEST_CASE("warmup applies exactly 1152 clockings, once")
{
  const TriviumState loaded = trivium_load(zero_key(), zero_iv());
  const TriviumState warm = trivium_warmup(loaded);
  CHECK(warm.clocks == 1152);
  CHECK_THROWS_AS(trivium_warmup(warm), UsageError);

  // Warm-up twice from the same loaded state is bit-identical.
  CHECK(trivium_warmup(loaded) == warm);
}

TEST_CASE("warm-up plus generation equals clocking 1152+n times")
{
  std::mt19937_64 rng(21);
  const TriviumKey key = random_key(rng);
  const TriviumIV iv = random_iv(rng);

  const std::size_t n = 64;
  const BitSequence stream = trivium_keystream(key, iv, n);

  TriviumState st = trivium_load(key, iv);
  BitSequence manual;
  for (std::size_t i = 0; i < 1152 + n; ++i) {
    const auto [next, z] = trivium_clock(st);
    st = next;
    if (i >= 1152) manual.push_back(z);
  }
  CHECK(stream == manual);
}

TEST_CASE("keystream basics")
{
  std::mt19937_64 rng(22);
  const TriviumKey key = random_key(rng);
  const TriviumIV iv = random_iv(rng);
  CHECK(trivium_keystream(key, iv, 0).empty());
  CHECK(trivium_keystream(key, iv, 256) == trivium_keystream(key, iv, 256));
}

TEST_CASE("keystream matches the eSTREAM reference vectors")
{
  SUBCASE("set 6, vector 0")
  {
    const TriviumKey key =
      estream::key_from_vector_hex("0053A6F94C9FF24598EB");
    const TriviumIV iv = estream::iv_from_vector_hex("0D74DB42A91077DE45AC");
    const BitSequence stream = trivium_keystream(key, iv, 256);
    CHECK(estream::stream_bytes_hex(stream) ==
          "F4CD954A717F26A7D6930830C4E7CF08"
          "19F80E03F25F342C64ADC66ABA7F8A8E");
  }
  SUBCASE("set 1, vector 0")
  {
    const TriviumKey key =
      estream::key_from_vector_hex("80000000000000000000");
    const TriviumIV iv = estream::iv_from_vector_hex("00000000000000000000");
    const BitSequence stream = trivium_keystream(key, iv, 128);
    CHECK(estream::stream_bytes_hex(stream) ==
          "38EB86FF730D7A9CAF8DF13A4420540D");
  }
}

TEST_CASE("transition matrix shape")
{
  const TriviumParams params;
  params.validate();
  const TriviumMatrix a = trivium_transition_matrix(params);

  SUBCASE("every row has at most 3 ones")
  {
    for (std::size_t row = 0; row < 288; ++row) {
      int ones = 0;
      for (std::size_t col = 0; col < 288; ++col) ones += a.get(row, col);
      CHECK(ones <= 3);
      CHECK(ones >= 1);
    }
  }
  SUBCASE("row 2 has a single 1 at column 1")
  {
    for (std::size_t col = 0; col < 288; ++col)
      CHECK(a.get(1, col) == (col == 0));
  }
  SUBCASE("feedback rows carry three taps")
  {
    int ones_row1 = 0, ones_row94 = 0, ones_row178 = 0;
    for (std::size_t col = 0; col < 288; ++col) {
      ones_row1 += a.get(0, col);
      ones_row94 += a.get(93, col);
      ones_row178 += a.get(177, col);
    }
    CHECK(ones_row1 == 3);
    CHECK(ones_row94 == 3);
    CHECK(ones_row178 == 3);
  }
}

TEST_CASE("matrix step has the zero state as fixed point")
{
  const TriviumParams params;
  const TriviumBits zero{};
  CHECK(trivium_step_matrix(zero, params) == zero);
}

TEST_CASE("nonlinear segment is nonzero in at most 3 positions")
{
  std::mt19937_64 rng(23);
  const TriviumParams params;
  const TriviumMatrix a = trivium_transition_matrix(params);
  for (int trial = 0; trial < 20; ++trial) {
    TriviumBits z{};
    for (auto& b : z) b = static_cast<Bit>(rng() & 1u);

    // b(t) = full step minus the linear part.
    const TriviumBits full = trivium_step_matrix(z, a, params);
    TriviumBits linear{};
    for (std::size_t i = 0; i < 288; ++i) {
      std::uint64_t acc = 0;
      const auto packed = cozmo::detail::pack_state_vector(z);
      for (std::size_t w = 0; w < TriviumMatrix::kWords; ++w)
        acc ^= a.rows[i][w] & packed[w];
      linear[i] = static_cast<Bit>(__builtin_popcountll(acc) & 1);
    }
    int nonzero = 0;
    for (std::size_t i = 0; i < 288; ++i) nonzero += full[i] != linear[i];
    CHECK(nonzero <= 3);
  }
}

TEST_CASE("matrix form tracks the shift-register form")
{
  std::mt19937_64 rng(24);
  const TriviumParams params;
  const TriviumMatrix a = trivium_transition_matrix(params);

  TriviumState direct = trivium_load(random_key(rng), random_iv(rng));
  TriviumBits vec = direct.s;
  for (int step = 0; step < 10000; ++step) {
    detail::trivium_clock_in_place(direct);
    vec = trivium_step_matrix(vec, a, params);
    REQUIRE(vec == direct.s);
  }
}

TEST_CASE("params validation rejects bad geometry")
{
  TriviumParams p;
  p.n3 = 95;
  CHECK_THROWS_AS(p.validate(), ParamError);
  p = TriviumParams{};
  p.u1 = 40; // beyond register 1
  CHECK_THROWS_AS(p.validate(), ParamError);
}
