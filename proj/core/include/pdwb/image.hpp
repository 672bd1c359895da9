#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pdwb {

/// H x W grid of 8-bit pixels stored row-major. The 1-D "stretch" of an
/// image is exactly its pixel buffer: 1-based position l maps to row
/// ceil(l / W), column ((l - 1) mod W) + 1.
class Image {
 public:
  Image() = default;
  Image(std::size_t height, std::size_t width, std::uint8_t fill = 0);
  Image(std::size_t height, std::size_t width, std::vector<std::uint8_t> pixels);

  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t size() const { return pixels_.size(); }

  // 0-based row/column access.
  std::uint8_t& at(std::size_t row, std::size_t col) { return pixels_[row * width_ + col]; }
  std::uint8_t at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }

  /// 1-based stretched access, 1 <= l <= size().
  std::uint8_t& pos(std::size_t l) { return pixels_[l - 1]; }
  std::uint8_t pos(std::size_t l) const { return pixels_[l - 1]; }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  bool same_shape(const Image& other) const {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// 1-based stretch index -> 1-based (row, column).
std::pair<std::size_t, std::size_t> to_grid(std::size_t l, std::size_t width);
/// 1-based (row, column) -> 1-based stretch index.
std::size_t to_stretch(std::size_t row, std::size_t col, std::size_t width);

/// Row-major flattening and its inverse.
std::vector<std::uint8_t> stretch(const Image& img);
Image reshape(std::span<const std::uint8_t> seq, std::size_t height, std::size_t width);

/// Suffix sums S_l = sum_{i=l+1}^{L} p(i) indexed 1..L (index 0 unused,
/// S_L = 0).
std::vector<std::uint64_t> suffix_sums(const Image& img);

}  // namespace pdwb
