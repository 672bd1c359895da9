#pragma once

#include <cstddef>
#include <cstdint>

#include "pdwb/image.hpp"

namespace pdwb {

enum class SynthKind { Constant, SinglePixel, UniformRandom, Mosaic };

inline constexpr std::size_t kMosaicBlock = 8;

Image synth_constant(std::size_t height, std::size_t width, std::uint8_t value);
/// Zero image except 1-based stretch position l0, which holds value.
Image synth_single_pixel(std::size_t height, std::size_t width, std::size_t l0,
                         std::uint8_t value);
/// Pixels drawn row-major from the SplitMix64 byte stream seeded with seed.
Image synth_uniform(std::size_t height, std::size_t width, std::uint64_t seed);
/// 8x8 blocks (clipped at the border) of one random gray level each, levels
/// drawn block-row-major from the seeded byte stream.
Image synth_mosaic(std::size_t height, std::size_t width, std::uint64_t seed);

}  // namespace pdwb
