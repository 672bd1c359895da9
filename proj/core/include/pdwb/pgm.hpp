#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdwb/image.hpp"

namespace pdwb {

/// Malformed or out-of-contract PGM input. offset() is the byte position at
/// which parsing stopped.
class PgmError : public std::runtime_error {
 public:
  PgmError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Binary P5 with maxval 255. Header comments are skipped on read.
Image read_pgm(std::span<const std::uint8_t> bytes);
/// Emits "P5\n<W> <H>\n255\n" followed by the raw payload; no comments.
std::vector<std::uint8_t> write_pgm(const Image& img);

Image load_pgm(const std::filesystem::path& path);
void save_pgm(const std::filesystem::path& path, const Image& img);

}  // namespace pdwb
