#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "pdwb/prng.hpp"
#include "pdwb/solvers.hpp"

using namespace pdwb;

namespace {

TripleSet triples_for(std::uint32_t k, unsigned n, std::size_t g, SplitMixStream& rng) {
  TripleSet G(n);
  for (std::size_t i = 0; i < g; ++i) {
    const auto a = static_cast<std::uint32_t>(rng.next_word() & width_mask(n));
    const auto b = static_cast<std::uint32_t>(rng.next_word() & width_mask(n));
    G.add(a, b, raw::dea(a, b, k, n));
  }
  return G;
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("brute force set for (3, 5, 6)") {
  TripleSet G(8);
  G.add(3, 5, 6);
  // every k < 128 with (3 + k) ^ (5 + k) = 6, enumerated independently
  const std::vector<std::uint32_t> expect{0,  7,  8,  15, 16, 23,  24,  31,  32,  39,  40,
                                          47, 48, 55, 56, 63, 64,  71,  72,  79,  80,  87,
                                          88, 95, 96, 103, 104, 111, 112, 119, 120, 127};
  CHECK(brute_force_solve(G) == expect);
}

TEST_CASE("inconsistent triples leave no candidate") {
  TripleSet G(8);
  G.add(0, 0, 1);  // (0 + k) ^ (0 + k) is always 0
  CHECK(brute_force_solve(G).empty());
}

TEST_CASE("TripleSet covering subsets") {
  TripleSet G(8);
  G.add(1, 2, 0b0100);
  G.add(3, 4, 0b0110);
  CHECK(G.first_covering(1) == 1);
  CHECK(G.first_covering(2) == 0);
  CHECK(G.first_covering(0) == 2);
  CHECK(G.covering(2).size() == 2);
  CHECK_THROWS_AS(G.add(Triple(Word(1, 6), Word(1, 6), Word(0, 6))), ContractViolation);
}

TEST_CASE("bit-plane: marked bits above a complete marked prefix are right") {
  SplitMixStream rng(21);
  for (int t = 0; t < 3000; ++t) {
    const unsigned n = 3 + rng.uniform_below(8);
    const auto k = static_cast<std::uint32_t>(rng.next_word() & width_mask(n - 1));
    const auto G = triples_for(k, n, 1 + rng.uniform_below(4), rng);
    const auto cands = brute_force_solve(G);
    REQUIRE(std::find(cands.begin(), cands.end(), k) != cands.end());
    const auto est = bit_plane_solve(G);
    CHECK_FALSE(est.bit_determined(n - 1));
    const unsigned prefix = est.determined_prefix();
    const auto low = static_cast<std::uint32_t>(width_mask(prefix));
    CHECK((est.value & low) == (k & low));
    if (est.low_bits_determined()) {
      CHECK(std::find(cands.begin(), cands.end(), est.value & est.low_mask()) != cands.end());
    }
    // combined marks exactly the bits all candidates share, so they are right
    const auto comb = combined_solve(G);
    CHECK(comb.determined_prefix() >= prefix);
    for (unsigned i = 0; i + 1 < n; ++i) {
      if (comb.bit_determined(i)) CHECK(((comb.value >> i) & 1u) == ((k >> i) & 1u));
    }
  }
}

TEST_CASE("bit-plane: a bit marked past a gap can be wrong") {
  // y covers bits 0, 1 and 3 but not 2; bit 3 rides on the default for bit 2.
  bool saw_wrong = false;
  for (std::uint32_t k = 0; k < 128 && !saw_wrong; ++k) {
    for (std::uint32_t a = 0; a < 256 && !saw_wrong; ++a) {
      for (std::uint32_t b = 0; b < 256 && !saw_wrong; ++b) {
        const auto y = raw::dea(a, b, k, 8);
        if ((y & 0b1111u) != 0b1011u) continue;
        TripleSet G(8);
        G.add(a, b, y);
        const auto est = bit_plane_solve(G);
        REQUIRE(est.determined_prefix() == 2);
        REQUIRE(est.bit_determined(3));
        saw_wrong = ((est.value >> 3) & 1u) != ((k >> 3) & 1u);
      }
    }
  }
  CHECK(saw_wrong);
}

TEST_CASE("single triple: i trailing ones of y fix i low bits") {
  SplitMixStream rng(5);
  for (int t = 0; t < 20000; ++t) {
    const auto a = rng.next_byte();
    const auto b = rng.next_byte();
    const auto k = rng.next_byte() & 0x7Fu;
    const auto y = raw::dea(a, b, k, 8);
    TripleSet G(8);
    G.add(a, b, y);
    unsigned ones = 0;
    while (ones < 7 && ((y >> ones) & 1u)) ++ones;
    CHECK(bit_plane_solve(G).determined_prefix() >= ones);
  }
}

TEST_CASE("chosen query pairs fix k mod 2^{n-1}") {
  for (unsigned n = 3; n <= 10; ++n) {
    for (const auto& qs : {theorem1_queries(n), theorem1_alternate_queries(n)}) {
      for (std::uint32_t k = 0; k < (1u << (n - 1)); ++k) {
        TripleSet G(n);
        for (const auto& q : qs) G.add(q.alpha.value(), q.beta.value(), raw::dea(q.alpha.value(), q.beta.value(), k, n));
        const auto est = bit_plane_solve(G);
        REQUIRE(est.low_bits_determined());
        CHECK(est.value == k);
        CHECK(brute_force_solve(G) == std::vector<std::uint32_t>{k});
      }
    }
  }
  const auto q = theorem1_queries(8);
  CHECK(q[0].alpha.value() == 0x00);
  CHECK(q[0].beta.value() == 0xAA);
  CHECK(q[1].alpha.value() == 0xAA);
  CHECK(q[1].beta.value() == 0x55);
}

TEST_CASE("confirm_probability closed form") {
  CHECK(confirm_probability(0, 1) == doctest::Approx(0.5));
  CHECK(confirm_probability(6, 8) == doctest::Approx(std::pow(1 - 1.0 / 256, 7)));
  CHECK_THROWS_AS(confirm_probability(7, 2), ContractViolation);
}

TEST_CASE("mult_solve agrees with direct enumeration") {
  SplitMixStream rng(9);
  for (int t = 0; t < 2000; ++t) {
    const auto k = rng.next_byte();
    std::vector<MulTriple> G;
    const std::size_t g = 1 + rng.uniform_below(3);
    for (std::size_t i = 0; i < g; ++i) {
      const auto a = rng.next_byte();
      const std::uint64_t S = rng.next_word() >> 40;
      G.push_back({a, S, static_cast<std::uint8_t>(static_cast<std::uint8_t>(a + k) ^ g_mul(S, k))});
    }
    std::vector<std::uint8_t> direct;
    for (unsigned c = 0; c < 256; ++c) {
      bool ok = true;
      for (const auto& m : G) {
        ok = ok && (static_cast<std::uint8_t>(m.alpha + c) ^ g_mul(m.S, static_cast<std::uint8_t>(c))) == m.y;
      }
      if (ok) direct.push_back(static_cast<std::uint8_t>(c));
    }
    CHECK(mult_candidates(G) == direct);
    const auto sol = mult_solve(G);
    REQUIRE(sol.candidate_count >= 1);
    if (direct.size() == 1) {
      CHECK(sol.estimate.value == k);
      CHECK(sol.estimate.fully_determined());
    } else {
      CHECK(sol.estimate.determined_mask == 0);
    }
  }
}

}
