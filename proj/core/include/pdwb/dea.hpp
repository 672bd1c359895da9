#pragma once

// Differential equation of modulo addition:
//
//     (alpha + k) ^ (beta + k) = y      (mod 2^n)
//
// plus the carry-chain identities that let key bits be read off plane by
// plane, and the multiplicative term used by the bidirectional diffusion.

#include <cstdint>

#include "pdwb/word.hpp"

namespace pdwb {

/// One known instance (alpha, beta, y). y always comes from an oracle.
struct Triple {
  Word alpha;
  Word beta;
  Word y;

  Triple() = default;
  Triple(Word a, Word b, Word out);

  unsigned width() const { return alpha.width(); }
};

/// Carry bits c_0..c_n of a + k; c_0 is always 0.
class CarryChain {
 public:
  CarryChain(std::uint64_t bits, unsigned width) : bits_(bits), width_(width) {}

  /// 0 <= i <= width()
  unsigned bit(unsigned i) const;
  unsigned width() const { return width_; }
  /// Bit i of the result holds c_i.
  std::uint64_t bits() const { return bits_; }

 private:
  std::uint64_t bits_;
  unsigned width_;
};

Word dea_eval(Word alpha, Word beta, Word k);

/// c_{i+1} = k_i a_i ^ k_i c_i ^ a_i c_i, c_0 = 0.
CarryChain carry_chain(Word a, Word k);

/// y ^ alpha ^ beta; bit i equals c_i ^ c~_i for the true key.
Word tilde_y(const Triple& t);

/// k_i = y~_{i+1} ^ alpha_i c_i ^ beta_i c~_i. Only meaningful when y_i = 1.
unsigned k_bit_rule(unsigned alpha_i, unsigned beta_i, unsigned c_i, unsigned ctilde_i,
                    unsigned ytilde_next);

/// floor(S * k * 10^8 / 256^4) mod 256 in exact integer arithmetic.
/// S is the integer numerator of the real weight S / 256^4.
std::uint8_t g_mul(std::uint64_t S, std::uint8_t k);
std::uint8_t g_mul(std::uint64_t S, Word k);

namespace raw {

// Unchecked fast paths over plain integers; callers guarantee width.
constexpr std::uint32_t add(std::uint32_t a, std::uint32_t b, unsigned n) {
  return static_cast<std::uint32_t>((std::uint64_t{a} + b) & width_mask(n));
}

constexpr std::uint32_t sub(std::uint32_t a, std::uint32_t b, unsigned n) {
  return static_cast<std::uint32_t>((std::uint64_t{a} - b) & width_mask(n));
}

constexpr std::uint32_t dea(std::uint32_t alpha, std::uint32_t beta, std::uint32_t k,
                            unsigned n) {
  return add(alpha, k, n) ^ add(beta, k, n);
}

/// Carries of a + k packed so that bit i is c_i (bits 0..n).
constexpr std::uint64_t carries(std::uint32_t a, std::uint32_t k, unsigned n) {
  const std::uint64_t sum = std::uint64_t{a} + k;
  const std::uint64_t mask = (std::uint64_t{1} << (n + 1)) - 1;
  return (sum ^ a ^ k) & mask;
}

}  // namespace raw

}  // namespace pdwb
