#include <doctest.h>

#include "pdwb/dea.hpp"
#include "pdwb/prng.hpp"

using namespace pdwb;

TEST_SUITE("word-dea") {

TEST_CASE("words reduce modulo 2^n") {
  CHECK_THROWS_AS(Word(300, 8), ContractViolation);
  CHECK(Word(0xF, 4).value() == 0xF);
  CHECK(mod_add(Word(200), Word(100)).value() == 44);
  CHECK(mod_sub(Word(3), Word(5)).value() == 254);
  CHECK(Word(0b1010, 4).bit(1) == 1);
  CHECK(Word(0b1010, 4).bit(0) == 0);
  CHECK_THROWS_AS(Word(1, 1), ContractViolation);
  CHECK_THROWS_AS(Word(1, 33), ContractViolation);
  CHECK_THROWS_AS(mod_add(Word(1, 8), Word(1, 7)), ContractViolation);
}

TEST_CASE("g_mul matches exact integer floor") {
  // floor(S * k * 10^8 / 2^32) mod 256, values from an arbitrary-precision oracle
  CHECK(g_mul(300, 100) == 186);
  CHECK(g_mul((std::uint64_t{1} << 40) + 7, 255) == 41);
  CHECK(g_mul(0, 77) == 0);
  CHECK(g_mul(123456, 0) == 0);
}

TEST_CASE("g_mul shifts by k * 10^8 when S grows by 2^32") {
  SplitMixStream rng(3);
  for (int t = 0; t < 1000; ++t) {
    const std::uint64_t S = rng.next_word() >> 24;
    const auto k = rng.next_byte();
    const auto shifted = static_cast<std::uint8_t>(g_mul(S, k) + k * 100000000ull % 256);
    CHECK(g_mul(S + (std::uint64_t{1} << 32), k) == shifted);
  }
}

TEST_CASE("carry chain agrees with the integer sum") {
  SplitMixStream rng(11);
  for (int t = 0; t < 2000; ++t) {
    const unsigned n = 2 + rng.uniform_below(31);
    const std::uint64_t a = rng.next_word() & width_mask(n);
    const std::uint64_t k = rng.next_word() & width_mask(n);
    const auto c = carry_chain(Word(a, n), Word(k, n));
    CHECK(c.bit(0) == 0);
    for (unsigned i = 0; i < n; ++i) {
      const std::uint64_t low = width_mask(i + 1);
      // c_{i+1} is the carry out of bits 0..i
      CHECK(c.bit(i + 1) == (((a & low) + (k & low)) >> (i + 1)));
    }
  }
}

TEST_CASE("dea_eval and tilde_y") {
  const Word a(3), b(5), k(7);
  const Word y = dea_eval(a, b, k);
  CHECK(y.value() == ((3 + 7) ^ (5 + 7)));
  const Triple t(a, b, y);
  CHECK(tilde_y(t).value() == (y.value() ^ 3 ^ 5));
  // bit i of y~ is c_i ^ c~_i
  const auto c1 = carry_chain(a, k);
  const auto c2 = carry_chain(b, k);
  for (unsigned i = 0; i < 8; ++i) CHECK(tilde_y(t).bit(i) == (c1.bit(i) ^ c2.bit(i)));
  CHECK_THROWS_AS(Triple(Word(1, 8), Word(1, 6), Word(0, 8)), ContractViolation);
}

TEST_CASE("k_bit_rule recovers k_i whenever y_i = 1") {
  for (unsigned n : {4u, 6u}) {
    for (std::uint32_t a = 0; a < (1u << n); ++a) {
      for (std::uint32_t b = 0; b < (1u << n); ++b) {
        for (std::uint32_t k = 0; k < (1u << n); ++k) {
          const Triple t(Word(a, n), Word(b, n), dea_eval(Word(a, n), Word(b, n), Word(k, n)));
          const auto c1 = carry_chain(t.alpha, Word(k, n));
          const auto c2 = carry_chain(t.beta, Word(k, n));
          const Word yt = tilde_y(t);
          for (unsigned i = 0; i + 1 < n; ++i) {
            if (!t.y.bit(i)) continue;
            REQUIRE(k_bit_rule(t.alpha.bit(i), t.beta.bit(i), c1.bit(i), c2.bit(i),
                               yt.bit(i + 1)) == ((k >> i) & 1u));
          }
        }
      }
    }
  }
}

}
