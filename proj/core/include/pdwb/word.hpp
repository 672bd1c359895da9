#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pdwb {

/// Raised when a caller breaks a documented precondition (width mismatch,
/// out-of-range argument). Distinct from data-dependent failures.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

inline constexpr unsigned kMinWidth = 2;
inline constexpr unsigned kMaxWidth = 32;

constexpr std::uint64_t width_mask(unsigned n) {
  return (std::uint64_t{1} << n) - 1;
}

/// An n-bit unsigned value, 2 <= n <= 32, always reduced modulo 2^n.
class Word {
 public:
  constexpr Word() = default;
  explicit Word(std::uint64_t value, unsigned width = 8);

  constexpr std::uint32_t value() const { return value_; }
  constexpr unsigned width() const { return width_; }
  constexpr std::uint64_t modulus() const { return std::uint64_t{1} << width_; }

  /// i-th bit, 0 <= i < width().
  unsigned bit(unsigned i) const;

  friend constexpr bool operator==(const Word&, const Word&) = default;

 private:
  std::uint32_t value_ = 0;
  unsigned width_ = 8;
};

Word mod_add(Word a, Word b);
Word mod_sub(Word a, Word b);

/// Throws ContractViolation unless both words share a width.
void require_same_width(const Word& a, const Word& b);

}  // namespace pdwb
