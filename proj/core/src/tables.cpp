#include "pdwb/tables.hpp"

#include <sstream>

namespace pdwb {

namespace {

struct PlaneOut {
  unsigned carry_next;
  unsigned carry_tilde_next;
};

PlaneOut step(unsigned alpha, unsigned beta, unsigned k, unsigned c, unsigned ct) {
  return {(k & alpha) ^ (k & c) ^ (alpha & c), (k & beta) ^ (k & ct) ^ (beta & ct)};
}

}  // namespace

const KBitTable& published_kbit_table() {
  static const KBitTable table{{
      {kEither, kEither, kUnreachable, kEither, kEither, kUnreachable, kEither, kEither},
      {kUnreachable, kUnreachable, kEither, kUnreachable, kUnreachable, kEither, kUnreachable,
       kUnreachable},
      {kOnlyZero, kOnlyZero, kOnlyZero, kOnlyZero, kOnlyOne, kOnlyOne, kOnlyOne, kOnlyOne},
      {kOnlyOne, kOnlyOne, kOnlyOne, kOnlyOne, kOnlyZero, kOnlyZero, kOnlyZero, kOnlyZero},
  }};
  return table;
}

const CarryTable& published_carry_table() {
  static const CarryTable table{{
      {0, 0, 0, 1, 0, 0, 0, 1},
      {0, 0, 1, 0, 1, 1, 0, 1},
      {0, 1, 1, 1, 1, 0, 0, 0},
      {0, 1, 0, 0, 0, 1, 0, 0},
  }};
  return table;
}

KBitTable enumerate_kbit_table() {
  KBitTable out{};
  for (unsigned col = 0; col < 8; ++col) {
    const auto [alpha, beta, c] = kKBitColumns[col];
    for (unsigned ct = 0; ct < 2; ++ct) {
      for (unsigned k = 0; k < 2; ++k) {
        const unsigned y = alpha ^ beta ^ c ^ ct;
        const auto [cn, ctn] = step(alpha, beta, k, c, ct);
        const unsigned yt_next = cn ^ ctn;
        out[y * 2 + yt_next][col] |= static_cast<KSet>(1u << k);
      }
    }
  }
  return out;
}

CarryTable enumerate_carry_table() {
  CarryTable out{};
  for (unsigned k = 0; k < 2; ++k) {
    for (unsigned c = 0; c < 2; ++c) {
      for (unsigned col = 0; col < 8; ++col) {
        const unsigned alpha = (col >> 2) & 1u;
        const unsigned beta = (col >> 1) & 1u;
        const unsigned yt = col & 1u;
        const unsigned ct = yt ^ c;
        const auto [cn, ctn] = step(alpha, beta, k, c, ct);
        out[k * 2 + c][col] = static_cast<std::uint8_t>(cn ^ ctn);
      }
    }
  }
  return out;
}

std::string format_kset(KSet s) {
  switch (s) {
    case kUnreachable:
      return "-";
    case kOnlyZero:
      return "0";
    case kOnlyOne:
      return "1";
    default:
      return "0,1";
  }
}

TableReport verify_tables() {
  TableReport report{enumerate_kbit_table(), enumerate_carry_table(), {}};

  const auto& kref = published_kbit_table();
  for (unsigned row = 0; row < 4; ++row) {
    for (unsigned col = 0; col < 8; ++col) {
      if (report.kbit[row][col] != kref[row][col]) {
        const auto [a, b, c] = kKBitColumns[col];
        std::ostringstream msg;
        msg << "k-bit table row (y_i, y~_i+1)=(" << (row >> 1) << "," << (row & 1)
            << ") column (alpha,beta,c)=(" << a << "," << b << "," << c << "): enumerated "
            << format_kset(report.kbit[row][col]) << ", published "
            << format_kset(kref[row][col]);
        report.mismatches.push_back(msg.str());
      }
    }
  }

  const auto& cref = published_carry_table();
  for (unsigned row = 0; row < 4; ++row) {
    for (unsigned col = 0; col < 8; ++col) {
      if (report.carry[row][col] != cref[row][col]) {
        std::ostringstream msg;
        msg << "carry table row (k,c)=(" << (row >> 1) << "," << (row & 1)
            << ") column (alpha,beta,y~)=(" << ((col >> 2) & 1) << "," << ((col >> 1) & 1)
            << "," << (col & 1) << "): enumerated " << int(report.carry[row][col])
            << ", published " << int(cref[row][col]);
        report.mismatches.push_back(msg.str());
      }
    }
  }
  return report;
}

}  // namespace pdwb
