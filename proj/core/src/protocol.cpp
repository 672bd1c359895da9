#include "pdwb/protocol.hpp"

#include <charconv>

#include "pdwb/word.hpp"

namespace pdwb::wire {

namespace {

int nibble(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}

std::optional<std::size_t> parse_size(std::string_view tok) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

[[noreturn]] void reject(std::string_view reply) {
  if (reply.starts_with("ERR mode")) throw ModelViolation(std::string(reply.substr(4)));
  throw std::runtime_error("unexpected oracle reply: " + std::string(reply.substr(0, 80)));
}

Image image_from_hex(std::string_view hex, std::size_t height, std::size_t width,
                     std::string_view reply) {
  auto bytes = from_hex(hex);
  if (!bytes || bytes->size() != height * width) reject(reply);
  return Image(height, width, std::move(*bytes));
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (const auto b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

std::optional<std::vector<std::uint8_t>> from_hex(std::string_view text) {
  if (text.size() % 2 != 0) return std::nullopt;
  std::vector<std::uint8_t> out(text.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = nibble(text[2 * i]);
    const int lo = nibble(text[2 * i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string respond(Oracle& oracle, std::string_view line) {
  const auto tok = tokenize(line);
  if (tok.empty()) return "ERR empty request";
  const auto& cmd = tok[0];
  const std::string mode(to_string(oracle.model()));

  if (cmd == "HELLO" && tok.size() == 1) {
    return "MODE " + mode + " SIZE " + std::to_string(oracle.height()) + " " +
           std::to_string(oracle.width());
  }
  if (cmd == "COUNT" && tok.size() == 1) return "QUERIES " + std::to_string(oracle.query_count());
  if (cmd == "ENC") {
    if (oracle.model() != AttackModel::ChosenPlaintext) return "ERR mode " + mode + " refuses ENC";
    if (tok.size() != 2) return "ERR ENC takes one hex argument";
    auto bytes = from_hex(tok[1]);
    if (!bytes) return "ERR bad hex";
    const std::size_t need = oracle.height() * oracle.width();
    if (bytes->size() != need) return "ERR expected " + std::to_string(need) + " bytes";
    const Image c = oracle.encrypt(Image(oracle.height(), oracle.width(), std::move(*bytes)));
    return "CT " + to_hex(c.pixels());
  }
  if (cmd == "SAMPLE" && tok.size() == 1) {
    if (oracle.model() != AttackModel::KnownPlaintext) {
      return "ERR mode " + mode + " refuses SAMPLE";
    }
    const auto pair = oracle.sample();
    return "PT " + to_hex(pair.plain.pixels()) + " CT " + to_hex(pair.cipher.pixels());
  }
  return "ERR unknown request '" + std::string(cmd.substr(0, 16)) + "'";
}

Hello parse_hello(std::string_view reply) {
  const auto tok = tokenize(reply);
  if (tok.size() != 5 || tok[0] != "MODE" || tok[2] != "SIZE") reject(reply);
  Hello h;
  try {
    h.model = parse_model(tok[1]);
  } catch (const std::invalid_argument&) {
    reject(reply);
  }
  const auto H = parse_size(tok[3]);
  const auto W = parse_size(tok[4]);
  if (!H || !W || *H < 2 || *W < 2) reject(reply);
  h.height = *H;
  h.width = *W;
  return h;
}

Image parse_ct(std::string_view reply, std::size_t height, std::size_t width) {
  const auto tok = tokenize(reply);
  if (tok.size() != 2 || tok[0] != "CT") reject(reply);
  return image_from_hex(tok[1], height, width, reply);
}

PlainCipherPair parse_sample(std::string_view reply, std::size_t height, std::size_t width) {
  const auto tok = tokenize(reply);
  if (tok.size() != 4 || tok[0] != "PT" || tok[2] != "CT") reject(reply);
  return {image_from_hex(tok[1], height, width, reply),
          image_from_hex(tok[3], height, width, reply)};
}

std::size_t parse_count(std::string_view reply) {
  const auto tok = tokenize(reply);
  if (tok.size() != 2 || tok[0] != "QUERIES") reject(reply);
  const auto n = parse_size(tok[1]);
  if (!n) reject(reply);
  return *n;
}

}  // namespace pdwb::wire
