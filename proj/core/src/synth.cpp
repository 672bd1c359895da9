#include "pdwb/synth.hpp"

#include <string>

#include "pdwb/prng.hpp"
#include "pdwb/word.hpp"

namespace pdwb {

namespace {

void require_dims(std::size_t height, std::size_t width) {
  if (height < 2 || width < 2) throw ContractViolation("synthetic images need H, W >= 2");
}

}  // namespace

Image synth_constant(std::size_t height, std::size_t width, std::uint8_t value) {
  require_dims(height, width);
  return Image(height, width, value);
}

Image synth_single_pixel(std::size_t height, std::size_t width, std::size_t l0,
                         std::uint8_t value) {
  require_dims(height, width);
  if (l0 == 0 || l0 > height * width) {
    throw ContractViolation("pixel position " + std::to_string(l0) + " outside [1, " +
                            std::to_string(height * width) + "]");
  }
  Image img(height, width, 0);
  img.pos(l0) = value;
  return img;
}

Image synth_uniform(std::size_t height, std::size_t width, std::uint64_t seed) {
  require_dims(height, width);
  SplitMixStream rng(seed);
  Image img(height, width, 0);
  for (auto& px : img.pixels()) px = rng.next_byte();
  return img;
}

Image synth_mosaic(std::size_t height, std::size_t width, std::uint64_t seed) {
  require_dims(height, width);
  SplitMixStream rng(seed);
  Image img(height, width, 0);
  for (std::size_t br = 0; br < height; br += kMosaicBlock) {
    for (std::size_t bc = 0; bc < width; bc += kMosaicBlock) {
      const std::uint8_t level = rng.next_byte();
      for (std::size_t r = br; r < height && r < br + kMosaicBlock; ++r) {
        for (std::size_t c = bc; c < width && c < bc + kMosaicBlock; ++c) img.at(r, c) = level;
      }
    }
  }
  return img;
}

}  // namespace pdwb
