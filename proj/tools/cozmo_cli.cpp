// Command-line front end: keystream generation, XOR encryption/decryption,
// the randomness battery and the built-in cross-validation suite.
//
// Exit codes: 0 success / all tests pass, 1 battery or verification failure,
// 2 usage error, 3 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cozmo/a51.hpp"
#include "cozmo/bitseq.hpp"
#include "cozmo/cozmo.hpp"
#include "cozmo/selfcheck.hpp"
#include "cozmo/sts/battery.hpp"
#include "cozmo/sts/report.hpp"
#include "cozmo/trivium.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTestFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoFailure : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file_bytes(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open '" + path + "' for reading");
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) throw IoFailure("read error on '" + path + "'");
  return data;
}

void write_output(const std::string& path, const void* data, std::size_t size)
{
  if (path == "-") {
    std::cout.write(static_cast<const char*>(data),
                    static_cast<std::streamsize>(size));
    std::cout.flush();
    if (!std::cout) throw IoFailure("write error on stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open '" + path + "' for writing");
  out.write(static_cast<const char*>(data),
            static_cast<std::streamsize>(size));
  out.flush();
  if (!out) throw IoFailure("write error on '" + path + "'");
}

struct CipherArgs
{
  std::string cipher;
  std::string key_hex;
  std::string iv_hex;   // empty = not given
  std::string key_file; // hex read from file when --key is absent
  std::string iv_file;
  std::int64_t frame = -1; // -1 = not given
};

std::string read_hex_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open '" + path + "' for reading");
  std::string hex;
  char c;
  while (in.get(c))
    if (!std::isspace(static_cast<unsigned char>(c))) hex.push_back(c);
  return hex;
}

// Applies --key-file/--iv-file, leaving plain hex in key_hex/iv_hex.
void resolve_key_material(CipherArgs& args)
{
  if (!args.key_file.empty()) {
    if (!args.key_hex.empty())
      throw cozmo::UsageError("give --key or --key-file, not both");
    args.key_hex = read_hex_file(args.key_file);
  }
  if (!args.iv_file.empty()) {
    if (!args.iv_hex.empty())
      throw cozmo::UsageError("give --iv or --iv-file, not both");
    args.iv_hex = read_hex_file(args.iv_file);
  }
}

cozmo::BitSequence generate_keystream(const CipherArgs& args, std::size_t n)
{
  using namespace cozmo;
  if (args.key_hex.empty())
    throw UsageError(args.cipher + ": --key or --key-file is required");
  const bool has_iv = !args.iv_hex.empty();
  const bool has_frame = args.frame >= 0;

  if (args.cipher == "trivium" || args.cipher == "cozmo") {
    if (!has_iv)
      throw UsageError(args.cipher + ": --iv is required (20 hex digits)");
    if (has_frame)
      throw UsageError(args.cipher + ": --frame is not accepted");
    const TriviumKey key = TriviumKey::from_hex(args.key_hex);
    const TriviumIV iv = TriviumIV::from_hex(args.iv_hex);
    return args.cipher == "trivium" ? trivium_keystream(key, iv, n)
                                    : cozmo_keystream(key, iv, n);
  }
  if (args.cipher == "a51-raw" || args.cipher == "a51-standard") {
    if (has_iv)
      throw UsageError(args.cipher + ": --iv is not accepted");
    const A51Key key = A51Key::from_hex(args.key_hex);
    if (args.cipher == "a51-raw") {
      if (has_frame)
        throw UsageError("a51-raw: --frame is not accepted");
      return a51_keystream(a51_load_raw(key), n);
    }
    const std::uint32_t frame =
      has_frame ? static_cast<std::uint32_t>(args.frame) : 0u;
    return a51_keystream(a51_load_standard(key, frame), n);
  }
  throw cozmo::UsageError("unknown cipher '" + args.cipher + "'");
}

std::string encode_bits(const cozmo::BitSequence& bits,
                        const std::string& format)
{
  if (format == "ascii") return bits.to_ascii();
  if (format == "hex") {
    if (bits.size() % 8 != 0)
      throw cozmo::UsageError("hex output requires a multiple of 8 bits");
    return bits.to_hex();
  }
  if (format == "raw") {
    if (bits.size() % 8 != 0)
      throw cozmo::UsageError("raw output requires a multiple of 8 bits");
    const std::vector<std::uint8_t> bytes = bits.to_bytes();
    return std::string(bytes.begin(), bytes.end());
  }
  throw cozmo::UsageError("unknown format '" + format + "'");
}

cozmo::BitSequence decode_bits(const std::vector<std::uint8_t>& data,
                               const std::string& format)
{
  using namespace cozmo;
  if (format == "raw") return BitSequence::from_bytes(data);
  std::string text(data.begin(), data.end());
  if (format == "ascii") return BitSequence::from_ascii(text);
  if (format == "hex") {
    std::string stripped;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) stripped.push_back(c);
    return BitSequence::from_hex(stripped);
  }
  throw UsageError("unknown format '" + format + "'");
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"cozmo: Trivium / A5/1 / merged-generator keystream toolkit"};
  app.require_subcommand(1);

  const std::vector<std::string> kCiphers = {"trivium", "a51-raw",
                                             "a51-standard", "cozmo"};
  const std::vector<std::string> kFormats = {"raw", "ascii", "hex"};

  // --- gen ---
  CipherArgs gen_args;
  std::uint64_t gen_bits = 0;
  std::string gen_format = "ascii";
  std::string gen_out = "-";
  CLI::App* gen = app.add_subcommand("gen", "generate keystream bits");
  gen->add_option("--cipher", gen_args.cipher, "generator to use")
    ->required()
    ->check(CLI::IsMember(kCiphers));
  gen->add_option("--key", gen_args.key_hex, "key as hex digits");
  gen->add_option("--key-file", gen_args.key_file,
                  "read the key hex from this file");
  gen->add_option("--iv", gen_args.iv_hex, "IV as hex digits (trivium/cozmo)");
  gen->add_option("--iv-file", gen_args.iv_file,
                  "read the IV hex from this file");
  gen->add_option("--frame", gen_args.frame,
                  "frame number 0..2^22-1 (a51-standard, default 0)");
  gen->add_option("-n,--bits", gen_bits, "number of keystream bits")
    ->required();
  gen->add_option("--format", gen_format, "output format")
    ->check(CLI::IsMember(kFormats));
  gen->add_option("--out", gen_out, "output path, '-' for stdout");

  // --- crypt ---
  CipherArgs crypt_args;
  std::string crypt_in;
  std::string crypt_out;
  CLI::App* crypt =
    app.add_subcommand("crypt", "XOR a file with the keystream "
                                "(same command encrypts and decrypts)");
  crypt->add_option("--cipher", crypt_args.cipher, "generator to use")
    ->required()
    ->check(CLI::IsMember(kCiphers));
  crypt->add_option("--key", crypt_args.key_hex, "key as hex digits");
  crypt->add_option("--key-file", crypt_args.key_file,
                    "read the key hex from this file");
  crypt->add_option("--iv", crypt_args.iv_hex,
                    "IV as hex digits (trivium/cozmo)");
  crypt->add_option("--iv-file", crypt_args.iv_file,
                    "read the IV hex from this file");
  crypt->add_option("--frame", crypt_args.frame,
                    "frame number (a51-standard, default 0)");
  crypt->add_option("--in", crypt_in, "input path")->required();
  crypt->add_option("--out", crypt_out, "output path, '-' for stdout")
    ->required();

  // --- test ---
  CipherArgs test_args;
  std::uint64_t test_bits = 1000000;
  std::string test_in;
  std::string test_in_format = "raw";
  cozmo::sts::BatteryConfig config;
  bool test_json = false;
  CLI::App* test =
    app.add_subcommand("test", "run the 7-test randomness battery");
  test->add_option("--in", test_in, "read the sequence from this path");
  test->add_option("--in-format", test_in_format,
                   "input file format (with --in)")
    ->check(CLI::IsMember(kFormats));
  test->add_option("--cipher", test_args.cipher,
                   "generate the sequence with this cipher instead")
    ->check(CLI::IsMember(kCiphers));
  test->add_option("--key", test_args.key_hex, "key as hex digits");
  test->add_option("--key-file", test_args.key_file,
                   "read the key hex from this file");
  test->add_option("--iv", test_args.iv_hex, "IV as hex digits");
  test->add_option("--iv-file", test_args.iv_file,
                   "read the IV hex from this file");
  test->add_option("--frame", test_args.frame, "frame number (a51-standard)");
  test->add_option("-n,--bits", test_bits,
                   "number of bits to generate (with --cipher)");
  test->add_option("--alpha", config.alpha, "significance level");
  test->add_option("--m-serial", config.m_serial, "serial test block length");
  test->add_option("--m-apen", config.m_apen,
                   "approximate entropy block length");
  test->add_option("--m-lincomp,--M-lincomp", config.block_lincomp,
                   "linear complexity block size");
  test->add_flag("--json", test_json, "emit the report as JSON");

  // --- verify ---
  std::uint64_t verify_seed = 0x5eed;
  CLI::App* verify =
    app.add_subcommand("verify", "run the built-in cross-validation suite");
  verify->add_option("--seed", verify_seed,
                     "seed for the randomized checks (default fixed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      resolve_key_material(gen_args);
      const cozmo::BitSequence bits =
        generate_keystream(gen_args, static_cast<std::size_t>(gen_bits));
      const std::string encoded = encode_bits(bits, gen_format);
      write_output(gen_out, encoded.data(), encoded.size());
      return kExitOk;
    }

    if (crypt->parsed()) {
      resolve_key_material(crypt_args);
      const std::vector<std::uint8_t> input = read_file_bytes(crypt_in);
      const cozmo::BitSequence keystream =
        generate_keystream(crypt_args, input.size() * 8);
      const std::vector<std::uint8_t> pad = keystream.to_bytes();
      std::vector<std::uint8_t> output(input.size());
      for (std::size_t i = 0; i < input.size(); ++i)
        output[i] = input[i] ^ pad[i];
      write_output(crypt_out, output.data(), output.size());
      return kExitOk;
    }

    if (test->parsed()) {
      const bool from_file = !test_in.empty();
      const bool from_cipher = !test_args.cipher.empty();
      if (from_file == from_cipher)
        throw cozmo::UsageError(
          "test: give exactly one of --in or --cipher/--key/...");
      cozmo::BitSequence seq;
      if (from_file) {
        seq = decode_bits(read_file_bytes(test_in), test_in_format);
      } else {
        resolve_key_material(test_args);
        seq = generate_keystream(test_args,
                                 static_cast<std::size_t>(test_bits));
      }
      const cozmo::sts::TestReport report = cozmo::sts::run_battery(seq, config);
      if (test_json)
        std::cout << cozmo::sts::to_json(report).dump(2) << "\n";
      else
        std::cout << cozmo::sts::render_text(report);
      return report.all_pass ? kExitOk : kExitTestFailure;
    }

    if (verify->parsed()) {
      const std::vector<cozmo::CheckResult> results =
        cozmo::run_selfcheck(verify_seed);
      bool all = true;
      for (const cozmo::CheckResult& r : results) {
        std::cout << (r.passed ? "ok   " : "FAIL ") << r.name;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << "\n";
        all = all && r.passed;
      }
      std::cout << (all ? "verify: all checks passed\n"
                        : "verify: FAILURES detected\n");
      return all ? kExitOk : kExitTestFailure;
    }
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const cozmo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
