#include "pdwb/image.hpp"

#include <stdexcept>
#include <string>

#include "pdwb/word.hpp"

namespace pdwb {

Image::Image(std::size_t height, std::size_t width, std::uint8_t fill)
    : height_(height), width_(width), pixels_(height * width, fill) {
  if (height == 0 || width == 0) throw ContractViolation("image dimensions must be positive");
}

Image::Image(std::size_t height, std::size_t width, std::vector<std::uint8_t> pixels)
    : height_(height), width_(width), pixels_(std::move(pixels)) {
  if (height == 0 || width == 0) throw ContractViolation("image dimensions must be positive");
  if (pixels_.size() != height * width) {
    throw ContractViolation("pixel buffer has " + std::to_string(pixels_.size()) +
                            " bytes, expected " + std::to_string(height * width));
  }
}

std::pair<std::size_t, std::size_t> to_grid(std::size_t l, std::size_t width) {
  if (l == 0 || width == 0) throw ContractViolation("stretch index is 1-based");
  return {(l + width - 1) / width, ((l - 1) % width) + 1};
}

std::size_t to_stretch(std::size_t row, std::size_t col, std::size_t width) {
  if (row == 0 || col == 0 || col > width) throw ContractViolation("grid index is 1-based");
  return (row - 1) * width + col;
}

std::vector<std::uint8_t> stretch(const Image& img) {
  return {img.pixels().begin(), img.pixels().end()};
}

Image reshape(std::span<const std::uint8_t> seq, std::size_t height, std::size_t width) {
  return Image(height, width, std::vector<std::uint8_t>(seq.begin(), seq.end()));
}

std::vector<std::uint64_t> suffix_sums(const Image& img) {
  const std::size_t L = img.size();
  std::vector<std::uint64_t> S(L + 1, 0);
  std::uint64_t acc = 0;
  for (std::size_t l = L; l >= 1; --l) {
    S[l] = acc;
    acc += img.pos(l);
  }
  return S;
}

}  // namespace pdwb
