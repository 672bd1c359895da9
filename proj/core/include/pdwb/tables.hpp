#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pdwb {

/// Set of admissible k_i values for a lookup cell, as a 2-bit mask:
/// bit 0 set means k_i = 0 is reachable, bit 1 set means k_i = 1 is.
/// An empty set marks an unreachable combination.
using KSet = std::uint8_t;
inline constexpr KSet kUnreachable = 0b00;
inline constexpr KSet kOnlyZero = 0b01;
inline constexpr KSet kOnlyOne = 0b10;
inline constexpr KSet kEither = 0b11;

/// k_i lookup: rows (y_i, y~_{i+1}) in order (0,0),(0,1),(1,0),(1,1);
/// columns (alpha_i, beta_i, c_i) in order
/// (000),(100),(010),(001),(110),(101),(011),(111).
using KBitTable = std::array<std::array<KSet, 8>, 4>;

/// y~_{i+1} lookup: rows (k_i, c_i) in order (0,0),(0,1),(1,0),(1,1);
/// columns (alpha_i, beta_i, y~_i) in binary order (000),(001),...,(111).
using CarryTable = std::array<std::array<std::uint8_t, 8>, 4>;

/// Column order of the k_i table, as (alpha_i, beta_i, c_i).
inline constexpr std::array<std::array<unsigned, 3>, 8> kKBitColumns{{
    {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
    {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1},
}};

/// Published reference values, transcribed cell by cell.
const KBitTable& published_kbit_table();
const CarryTable& published_carry_table();

/// Both tables regenerated by enumerating every (alpha_i, beta_i, k_i, c_i,
/// c~_i) through the one-plane carry recurrence.
KBitTable enumerate_kbit_table();
CarryTable enumerate_carry_table();

struct TableReport {
  KBitTable kbit;
  CarryTable carry;
  std::vector<std::string> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Regenerates both tables and lists every cell that differs from the
/// published reference.
TableReport verify_tables();

std::string format_kset(KSet s);

}  // namespace pdwb
