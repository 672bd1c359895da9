#include <doctest.h>

#include "pdwb/ciphers.hpp"
#include "pdwb/word.hpp"
#include "pdwb/prng.hpp"
#include "support.hpp"

using namespace pdwb;

namespace {

const CipherId kAll[] = {CipherId::Parvin, CipherId::Norouzi, CipherId::Yang};

}  // namespace

TEST_SUITE("ciphers") {

TEST_CASE("key schedule, seed 0, 2x2") {
  const std::vector<std::uint8_t> K{0xAF, 0xCD, 0x1D, 0x7B, 0x39};
  const auto p = key_schedule(Seed{0, CipherId::Parvin}, 2, 2);
  CHECK(p.K == K);
  CHECK(p.U == std::vector<std::uint32_t>{1, 2});
  CHECK(p.V == std::vector<std::uint32_t>{1, 2});
  const auto n = key_schedule(Seed{0, CipherId::Norouzi}, 2, 2);
  CHECK(n.K == K);
  CHECK(n.U.empty());
  const auto y = key_schedule(Seed{0, CipherId::Yang}, 2, 2);
  CHECK(y.U == std::vector<std::uint32_t>{2, 1});
  CHECK(y.V == std::vector<std::uint32_t>{1, 2});
}

TEST_CASE("golden ciphertexts") {
  // Reference values from an independent implementation of the three ciphers.
  const auto P = test::image_of(2, 2, {1, 2, 3, 4});
  auto enc = [&](CipherId id, const Image& img, std::uint64_t seed) {
    return encrypt(img, key_schedule(Seed{seed, id}, img.height(), img.width()));
  };
  CHECK(enc(CipherId::Parvin, P, 0) == test::image_of(2, 2, {178, 211, 55, 77}));
  CHECK(enc(CipherId::Norouzi, P, 0) == test::image_of(2, 2, {87, 114, 229, 26}));
  CHECK(enc(CipherId::Yang, P, 0) == test::image_of(2, 2, {114, 87, 26, 229}));

  Image Q(3, 4, 0);
  for (std::size_t l = 1; l <= 12; ++l) Q.pos(l) = static_cast<std::uint8_t>(10 * (l - 1));
  CHECK(enc(CipherId::Parvin, Q, 7) ==
        test::image_of(3, 4, {135, 219, 43, 143, 143, 145, 205, 225, 19, 79, 189, 107}));
  CHECK(enc(CipherId::Norouzi, Q, 7) ==
        test::image_of(3, 4, {35, 171, 9, 130, 62, 81, 133, 16, 238, 85, 93, 90}));
  CHECK(enc(CipherId::Yang, Q, 7) ==
        test::image_of(3, 4, {90, 238, 93, 85, 16, 62, 133, 81, 130, 35, 9, 171}));
}

TEST_CASE("round trips over shapes and seeds") {
  SplitMixStream rng(17);
  for (const auto id : kAll) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t H = 2 + rng.uniform_below(9);
      const std::size_t W = 2 + rng.uniform_below(9);
      const auto km = key_schedule(Seed{rng.next_word(), id}, H, W);
      const auto P = test::random_image(H, W, rng);
      CHECK(decrypt(encrypt(P, km), km) == P);
    }
  }
}

TEST_CASE("stage inverses") {
  SplitMixStream rng(4);
  const auto km = key_schedule(Seed{5, CipherId::Parvin}, 5, 7);
  const auto P = test::random_image(5, 7, rng);
  CHECK(parvin_unpermute(parvin_permute(P, km.U, km.V), km.U, km.V) == P);
  CHECK(parvin_undiffuse(parvin_diffuse(P, km.K), km.K) == P);
  CHECK(bidirectional_undiffuse(bidirectional_diffuse(P, km.K), km.K) == P);
  const auto ky = key_schedule(Seed{5, CipherId::Yang}, 5, 7);
  CHECK(yang_unpermute(yang_permute(P, ky.U, ky.V), ky.U, ky.V) == P);
}

TEST_CASE("parvin permutation is a bijection on positions") {
  const auto km = key_schedule(Seed{8, CipherId::Parvin}, 6, 9);
  std::vector<bool> hit(54, false);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      const auto [r, c] = parvin_route(i, j, km.U, km.V, 6, 9);
      REQUIRE(r < 6);
      REQUIRE(c < 9);
      CHECK_FALSE(hit[r * 9 + c]);
      hit[r * 9 + c] = true;
    }
  }
}

TEST_CASE("parvin: flipping the MSB of k(l), l >= 1, leaves ciphertexts unchanged") {
  SplitMixStream rng(6);
  for (int t = 0; t < 30; ++t) {
    const auto km = key_schedule(Seed{rng.next_word(), CipherId::Parvin}, 4, 5);
    const auto P = test::random_image(4, 5, rng);
    auto alt = km;
    for (std::size_t l = 1; l < alt.K.size(); ++l) {
      if (rng.next_byte() & 1u) alt.K[l] ^= 0x80;
    }
    CHECK(encrypt(P, alt) == encrypt(P, km));
  }
  // (k0, k1) only act through (k0 + k1) ^ k1
  for (unsigned a = 0; a < 256; a += 37) {
    for (unsigned b = 0; b < 256; b += 41) {
      CHECK(parvin_mix(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) ==
            static_cast<std::uint8_t>(((a + b) & 0xFF) ^ b));
    }
  }
}

TEST_CASE("yang with identity permutations equals norouzi") {
  SplitMixStream rng(12);
  for (int t = 0; t < 20; ++t) {
    auto n = key_schedule(Seed{rng.next_word(), CipherId::Norouzi}, 5, 6);
    auto y = n;
    y.cipher = CipherId::Yang;
    y.U = {1, 2, 3, 4, 5, 6};
    y.V = {1, 2, 3, 4, 5};
    const auto P = test::random_image(5, 6, rng);
    CHECK(encrypt(P, y) == encrypt(P, n));
  }
}

TEST_CASE("norouzi: the MSB of k(l) matters") {
  const auto km = key_schedule(Seed{3, CipherId::Norouzi}, 4, 4);
  SplitMixStream rng(1);
  const auto P = test::random_image(4, 4, rng);
  std::size_t differing = 0;
  for (std::size_t l = 1; l <= 16; ++l) {
    auto alt = km;
    alt.K[l] ^= 0x80;
    differing += encrypt(P, alt) != encrypt(P, km) ? 1 : 0;
  }
  CHECK(differing > 0);
}

TEST_CASE("contract violations") {
  auto km = key_schedule(Seed{1, CipherId::Yang}, 3, 3);
  CHECK_THROWS_AS(encrypt(Image(3, 4, 0), km), ContractViolation);
  km.U = {1, 1, 2};
  CHECK_THROWS_AS(validate(km), ContractViolation);
  auto kp = key_schedule(Seed{1, CipherId::Parvin}, 3, 3);
  kp.U[0] = 4;
  CHECK_THROWS_AS(validate(kp), ContractViolation);
  auto kn = key_schedule(Seed{1, CipherId::Norouzi}, 3, 3);
  kn.K.pop_back();
  CHECK_THROWS_AS(validate(kn), ContractViolation);
  CHECK_THROWS_AS(key_schedule(Seed{1, CipherId::Norouzi}, 1, 3), ContractViolation);
  CHECK_THROWS_AS(norouzi_encrypt(Image(3, 3, 0), km), ContractViolation);
  CHECK(parse_cipher("yang") == CipherId::Yang);
  CHECK_THROWS_AS(parse_cipher("aes"), std::invalid_argument);
}

TEST_CASE("key schedules are deterministic per seed") {
  CHECK(key_schedule(Seed{99, CipherId::Yang}, 8, 8) == key_schedule(Seed{99, CipherId::Yang}, 8, 8));
  CHECK(key_schedule(Seed{99, CipherId::Yang}, 8, 8).K != key_schedule(Seed{98, CipherId::Yang}, 8, 8).K);
}

}
