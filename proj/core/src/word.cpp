#include "pdwb/word.hpp"

#include "pdwb/dea.hpp"

namespace pdwb {

Word::Word(std::uint64_t value, unsigned width) : width_(width) {
  if (width < kMinWidth || width > kMaxWidth) {
    throw ContractViolation("word width must be in [2, 32], got " + std::to_string(width));
  }
  if (value > width_mask(width)) {
    throw ContractViolation("value " + std::to_string(value) + " does not fit in " +
                            std::to_string(width) + " bits");
  }
  value_ = static_cast<std::uint32_t>(value);
}

unsigned Word::bit(unsigned i) const {
  if (i >= width_) {
    throw ContractViolation("bit index " + std::to_string(i) + " out of range");
  }
  return (value_ >> i) & 1u;
}

void require_same_width(const Word& a, const Word& b) {
  if (a.width() != b.width()) {
    throw ContractViolation("width mismatch: " + std::to_string(a.width()) + " vs " +
                            std::to_string(b.width()));
  }
}

Word mod_add(Word a, Word b) {
  require_same_width(a, b);
  return Word(raw::add(a.value(), b.value(), a.width()), a.width());
}

Word mod_sub(Word a, Word b) {
  require_same_width(a, b);
  return Word(raw::sub(a.value(), b.value(), a.width()), a.width());
}

Triple::Triple(Word a, Word b, Word out) : alpha(a), beta(b), y(out) {
  require_same_width(a, b);
  require_same_width(a, out);
}

unsigned CarryChain::bit(unsigned i) const {
  if (i > width_) {
    throw ContractViolation("carry index " + std::to_string(i) + " out of range");
  }
  return static_cast<unsigned>((bits_ >> i) & 1u);
}

Word dea_eval(Word alpha, Word beta, Word k) {
  require_same_width(alpha, beta);
  require_same_width(alpha, k);
  return Word(raw::dea(alpha.value(), beta.value(), k.value(), k.width()), k.width());
}

CarryChain carry_chain(Word a, Word k) {
  require_same_width(a, k);
  const unsigned n = a.width();
  // Walk the bit recurrence directly rather than using raw::carries so the
  // two routes can be checked against each other.
  std::uint64_t bits = 0;
  unsigned c = 0;
  for (unsigned i = 0; i < n; ++i) {
    const unsigned ai = (a.value() >> i) & 1u;
    const unsigned ki = (k.value() >> i) & 1u;
    c = (ki & ai) ^ (ki & c) ^ (ai & c);
    bits |= std::uint64_t{c} << (i + 1);
  }
  return CarryChain(bits, n);
}

Word tilde_y(const Triple& t) {
  return Word(t.y.value() ^ t.alpha.value() ^ t.beta.value(), t.width());
}

unsigned k_bit_rule(unsigned alpha_i, unsigned beta_i, unsigned c_i, unsigned ctilde_i,
                    unsigned ytilde_next) {
  return (ytilde_next ^ (alpha_i & c_i) ^ (beta_i & ctilde_i)) & 1u;
}

std::uint8_t g_mul(std::uint64_t S, std::uint8_t k) {
  // S * k * 10^8 stays below 2^128 for any 64-bit S.
  __extension__ using u128 = unsigned __int128;
  const u128 num = static_cast<u128>(S) * k * static_cast<u128>(100000000u);
  return static_cast<std::uint8_t>((num >> 32) & 0xFFu);
}

std::uint8_t g_mul(std::uint64_t S, Word k) {
  if (k.width() != 8) {
    throw ContractViolation("g_mul expects an 8-bit key word");
  }
  return g_mul(S, static_cast<std::uint8_t>(k.value()));
}

}  // namespace pdwb
