#pragma once

// Newline-delimited text protocol for remote oracles. One request per line:
//
//   HELLO         -> MODE <kp|cp> SIZE <H> <W>
//   ENC <hex>     -> CT <hex>            (chosen-plaintext oracles only)
//   SAMPLE        -> PT <hex> CT <hex>   (known-plaintext oracles only)
//   COUNT         -> QUERIES <n>
//   anything else -> ERR <reason>
//
// Hex is lowercase on output and case-insensitive on input.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdwb/oracle.hpp"

namespace pdwb::wire {

std::string to_hex(std::span<const std::uint8_t> bytes);
std::optional<std::vector<std::uint8_t>> from_hex(std::string_view text);

/// Whitespace-separated tokens of one line (trailing CR tolerated).
std::vector<std::string_view> tokenize(std::string_view line);

/// Server side: answer one request line against an oracle. The reply has no
/// trailing newline. Never throws for malformed input.
std::string respond(Oracle& oracle, std::string_view line);

struct Hello {
  AttackModel model = AttackModel::ChosenPlaintext;
  std::size_t height = 0;
  std::size_t width = 0;
};

/// Client side parsers. Throw std::runtime_error on unexpected replies and
/// ModelViolation on mode refusals.
Hello parse_hello(std::string_view reply);
Image parse_ct(std::string_view reply, std::size_t height, std::size_t width);
PlainCipherPair parse_sample(std::string_view reply, std::size_t height, std::size_t width);
std::size_t parse_count(std::string_view reply);

}  // namespace pdwb::wire
