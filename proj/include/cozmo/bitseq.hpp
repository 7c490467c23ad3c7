#pragma once
#include <cctype>
#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cozmo/errors.hpp"

namespace cozmo {

// A single bit, stored as 0 or 1.
using Bit = std::uint8_t;

// Ordered sequence of bits. Index 0 is the first-generated / first-transmitted
// bit. Byte-oriented conversions are MSB-first: bit 0 of the sequence is the
// most significant bit of the first byte. Immutable value semantics: every
// operation returns a new sequence.
class BitSequence
{
public:
  BitSequence() = default;

  explicit BitSequence(std::vector<Bit> bits)
    : bits_(std::move(bits))
  {
    for (Bit b : bits_) {
      if (b > 1)
        throw FormatError("BitSequence: bit values must be 0 or 1");
    }
  }

  // Hex text, two digits per byte, expanded MSB-first.
  static BitSequence from_hex(std::string_view text)
  {
    if (text.size() % 2 != 0)
      throw LengthError("from_hex: odd number of hex digits (" +
                        std::to_string(text.size()) + ")");
    BitSequence out;
    out.bits_.reserve(text.size() * 4);
    for (std::size_t i = 0; i < text.size(); i += 2) {
      const int hi = hex_digit(text[i], i);
      const int lo = hex_digit(text[i + 1], i + 1);
      const unsigned byte = static_cast<unsigned>(hi << 4 | lo);
      for (int j = 7; j >= 0; --j)
        out.bits_.push_back(static_cast<Bit>((byte >> j) & 1u));
    }
    return out;
  }

  // ASCII '0'/'1' text; whitespace is skipped, anything else rejects.
  static BitSequence from_ascii(std::string_view text)
  {
    BitSequence out;
    out.bits_.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (c == '0' || c == '1') {
        out.bits_.push_back(static_cast<Bit>(c - '0'));
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        throw FormatError("from_ascii: character '" + std::string(1, c) +
                          "' at position " + std::to_string(i) +
                          " is not '0', '1' or whitespace");
      }
    }
    return out;
  }

  // Packed bytes, MSB-first.
  static BitSequence from_bytes(std::span<const std::uint8_t> bytes)
  {
    BitSequence out;
    out.bits_.reserve(bytes.size() * 8);
    for (std::uint8_t byte : bytes)
      for (int j = 7; j >= 0; --j)
        out.bits_.push_back(static_cast<Bit>((byte >> j) & 1u));
    return out;
  }

  // Exact inverse of from_hex. Requires byte alignment.
  std::string to_hex() const
  {
    static constexpr char digits[] = "0123456789ABCDEF";
    const std::vector<std::uint8_t> bytes = to_bytes();
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
      out.push_back(digits[b >> 4]);
      out.push_back(digits[b & 0xF]);
    }
    return out;
  }

  std::string to_ascii() const
  {
    std::string out(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
      out[i] = static_cast<char>('0' + bits_[i]);
    return out;
  }

  std::vector<std::uint8_t> to_bytes() const
  {
    if (bits_.size() % 8 != 0)
      throw LengthError("to_bytes: length " + std::to_string(bits_.size()) +
                        " is not a multiple of 8");
    std::vector<std::uint8_t> out(bits_.size() / 8, 0);
    for (std::size_t i = 0; i < bits_.size(); ++i)
      out[i / 8] |= static_cast<std::uint8_t>(bits_[i] << (7 - i % 8));
    return out;
  }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  Bit operator[](std::size_t i) const { return bits_[i]; }
  std::span<const Bit> bits() const { return {bits_.data(), bits_.size()}; }

  void push_back(Bit b)
  {
    if (b > 1)
      throw FormatError("push_back: bit value must be 0 or 1");
    bits_.push_back(b);
  }

  void reserve(std::size_t n) { bits_.reserve(n); }

  auto begin() const { return bits_.begin(); }
  auto end() const { return bits_.end(); }

  bool operator==(const BitSequence&) const = default;

private:
  static int hex_digit(char c, std::size_t pos)
  {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw FormatError("from_hex: character '" + std::string(1, c) +
                      "' at position " + std::to_string(pos) +
                      " is not a hex digit");
  }

  std::vector<Bit> bits_;
};

// Elementwise exclusive-or of two equal-length sequences.
inline BitSequence bitseq_xor(const BitSequence& a, const BitSequence& b)
{
  if (a.size() != b.size())
    throw LengthError("bitseq_xor: length mismatch (" +
                      std::to_string(a.size()) + " vs " +
                      std::to_string(b.size()) + ")");
  std::vector<Bit> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] ^ b[i];
  return BitSequence(std::move(out));
}

inline BitSequence operator^(const BitSequence& a, const BitSequence& b)
{
  return bitseq_xor(a, b);
}

} // namespace cozmo
