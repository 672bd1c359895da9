#pragma once

// Three single-round permutation-diffusion image ciphers over 8-bit pixels.
//
//   Parvin : row/column circular shifts, then
//            c(l) = s(l) ^ (c(l-1) + k(l)) ^ k(l),              c(0) = k(0)
//   Norouzi: c(l) = p(l) ^ (c(l-1) + k(l)) ^ g_mul(S_l, k(l)),  c(0) = k(0)
//            with S_l the sum of the plain pixels after position l
//   Yang   : the Norouzi chain on P gives P', then columns are relabelled by
//            U and rows by V: c(v(i), u(j)) = p'(i, j)
//
// Grid indices are 0-based internally. Shift and permutation streams keep
// their 1-based values: Parvin shifts lie in [1, W] / [1, H] and only their
// residue matters; Yang's U, V are permutations of {1..W} / {1..H}.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdwb/image.hpp"

namespace pdwb {

enum class CipherId { Parvin, Norouzi, Yang };

std::string_view to_string(CipherId id);
/// Accepts "parvin", "norouzi", "yang". Throws std::invalid_argument.
CipherId parse_cipher(std::string_view name);

struct Seed {
  std::uint64_t master = 0;
  CipherId cipher = CipherId::Parvin;
};

struct KeyMaterial {
  CipherId cipher = CipherId::Parvin;
  std::size_t height = 0;
  std::size_t width = 0;
  /// k(0..L)
  std::vector<std::uint8_t> K;
  /// Parvin: u(1..H) row shifts in [1, W]. Yang: permutation of 1..W.
  std::vector<std::uint32_t> U;
  /// Parvin: v(1..W) column shifts in [1, H]. Yang: permutation of 1..H.
  std::vector<std::uint32_t> V;

  std::size_t length() const { return height * width; }
  friend bool operator==(const KeyMaterial&, const KeyMaterial&) = default;
};

/// Deterministic stand-in key schedule. SplitMix64 seeded with the master
/// seed is read as a little-endian byte stream: K (L+1 bytes) first, then U,
/// then V. Bounded draws use 32-bit rejection sampling; permutations use
/// Fisher-Yates from the identity (i = m-1 down to 1, j uniform in [0, i]).
KeyMaterial key_schedule(const Seed& seed, std::size_t height, std::size_t width);

/// Throws ContractViolation when streams are mis-sized, out of range, or
/// (for Yang) not bijective.
void validate(const KeyMaterial& km);

Image parvin_encrypt(const Image& P, const KeyMaterial& km);
Image parvin_decrypt(const Image& C, const KeyMaterial& km);
Image norouzi_encrypt(const Image& P, const KeyMaterial& km);
Image norouzi_decrypt(const Image& C, const KeyMaterial& km);
Image yang_encrypt(const Image& P, const KeyMaterial& km);
Image yang_decrypt(const Image& C, const KeyMaterial& km);

/// Dispatch on km.cipher.
Image encrypt(const Image& P, const KeyMaterial& km);
Image decrypt(const Image& C, const KeyMaterial& km);

// Stages, exposed for the attacks.

/// Row shift by U then column shift by V: P -> S.
Image parvin_permute(const Image& P, std::span<const std::uint32_t> U,
                     std::span<const std::uint32_t> V);
Image parvin_unpermute(const Image& S, std::span<const std::uint32_t> U,
                       std::span<const std::uint32_t> V);
/// 0-based (row, col) of P -> 0-based (row, col) in S.
std::pair<std::size_t, std::size_t> parvin_route(std::size_t row, std::size_t col,
                                                 std::span<const std::uint32_t> U,
                                                 std::span<const std::uint32_t> V,
                                                 std::size_t height, std::size_t width);

/// c(l) = s(l) ^ (c(l-1) + k(l)) ^ k(l); returns c(1..L) as an image.
Image parvin_diffuse(const Image& S, std::span<const std::uint8_t> K);
Image parvin_undiffuse(const Image& C, std::span<const std::uint8_t> K);

/// One Parvin diffusion step and its inverse.
constexpr std::uint8_t parvin_mix(std::uint8_t prev, std::uint8_t k) {
  return static_cast<std::uint8_t>(static_cast<std::uint8_t>(prev + k) ^ k);
}

/// The Norouzi chain on P (also Yang's P').
Image bidirectional_diffuse(const Image& P, std::span<const std::uint8_t> K);
/// Backward recovery of P from the chain, starting at l = L where S_L = 0.
Image bidirectional_undiffuse(const Image& chain, std::span<const std::uint8_t> K);

/// c(v(i), u(j)) = p'(i, j).
Image yang_permute(const Image& Pp, std::span<const std::uint32_t> U,
                   std::span<const std::uint32_t> V);
Image yang_unpermute(const Image& C, std::span<const std::uint32_t> U,
                     std::span<const std::uint32_t> V);

}  // namespace pdwb
