#include <doctest.h>

#include "pdwb/tables.hpp"

using namespace pdwb;

TEST_SUITE("tables") {

TEST_CASE("regenerated tables equal the published ones") {
  const auto rep = verify_tables();
  CHECK(rep.ok());
  CHECK(rep.kbit == published_kbit_table());
  CHECK(rep.carry == published_carry_table());
}

TEST_CASE("published k table cells") {
  const auto& t = published_kbit_table();
  // y_i = 0 never constrains k_i
  for (unsigned col = 0; col < 8; ++col) {
    CHECK((t[0][col] == kEither || t[0][col] == kUnreachable));
    CHECK((t[1][col] == kEither || t[1][col] == kUnreachable));
  }
  // y_i = 1 with alpha = beta = c_i = 0 forces c~_i = 1, so y~_{i+1} = k_i
  CHECK(t[2][0] == kOnlyZero);
  CHECK(t[3][0] == kOnlyOne);
}

TEST_CASE("carry table rows follow the one-plane recurrence") {
  const auto& t = published_carry_table();
  for (unsigned k = 0; k < 2; ++k) {
    for (unsigned c = 0; c < 2; ++c) {
      for (unsigned col = 0; col < 8; ++col) {
        const unsigned a = (col >> 2) & 1u;
        const unsigned b = (col >> 1) & 1u;
        const unsigned yt = col & 1u;
        const unsigned ct = c ^ yt;
        const unsigned c_next = (k & a) ^ (k & c) ^ (a & c);
        const unsigned ct_next = (k & b) ^ (k & ct) ^ (b & ct);
        CHECK(t[k * 2 + c][col] == (c_next ^ ct_next));
      }
    }
  }
}

TEST_CASE("format_kset") {
  CHECK(format_kset(kOnlyZero) == "0");
  CHECK(format_kset(kOnlyOne) == "1");
}

}
