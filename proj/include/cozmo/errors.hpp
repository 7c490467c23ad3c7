#pragma once
#include <stdexcept>
#include <string>

namespace cozmo {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// Malformed textual input (bad hex digit, bad '0'/'1' character, ...).
struct FormatError : Error
{
  using Error::Error;
};

// Length preconditions (mismatched XOR operands, non-byte-aligned hex, ...).
struct LengthError : Error
{
  using Error::Error;
};

// API misuse that is detectable at runtime (double warm-up, ...).
struct UsageError : Error
{
  using Error::Error;
};

// Statistical-test parameter out of its admissible range.
struct ParamError : Error
{
  using Error::Error;
};

// Input sequence unusable for the requested operation (empty, too short).
struct InputError : Error
{
  using Error::Error;
};

} // namespace cozmo
