#include <doctest.h>

#include <set>

#include "pdwb/attacks.hpp"
#include "pdwb/experiments.hpp"
#include "pdwb/synth.hpp"
#include "support.hpp"

using namespace pdwb;

namespace {

bool decrypts(const RecoveredKey& rk, const KeyMaterial& truth, std::uint64_t seed) {
  const auto P = synth_uniform(truth.height, truth.width, seed);
  return decrypt(encrypt(P, truth), rk.to_key_material()) == P;
}

KeyMaterial identity_shift_key(std::uint64_t seed, std::size_t H, std::size_t W) {
  auto km = key_schedule(Seed{seed, CipherId::Parvin}, H, W);
  km.U.assign(H, static_cast<std::uint32_t>(W));
  km.V.assign(W, static_cast<std::uint32_t>(H));
  return km;
}

}  // namespace

TEST_SUITE("attacks") {

TEST_CASE("parvin pair reduction is sound") {
  SplitMixStream rng(2);
  for (int t = 0; t < 10; ++t) {
    LocalOracle o(key_schedule(Seed{rng.next_word(), CipherId::Parvin}, 5, 6),
                  AttackModel::KnownPlaintext, rng.next_word());
    std::vector<PlainCipherPair> pairs;
    for (int i = 0; i < 4; ++i) pairs.push_back(o.sample());
    const auto& km = o.hidden_key();
    const auto sets = reduce_parvin_pairs(pairs, km.U, km.V);
    REQUIRE(sets.size() == 31);
    CHECK(sets[0].empty());
    CHECK(sets[1].empty());
    for (std::size_t l = 2; l <= 30; ++l) {
      CHECK(sets[l].size() == 3);
      for (const auto& tr : sets[l].triples()) {
        CHECK(dea_eval(tr.alpha, tr.beta, Word(km.K[l])) == tr.y);
      }
    }
  }
}

TEST_CASE("kp parvin: the confirmed low-bit prefix is always right") {
  SplitMixStream rng(3);
  for (int t = 0; t < 10; ++t) {
    LocalOracle o(identity_shift_key(rng.next_word(), 8, 8), AttackModel::KnownPlaintext,
                  rng.next_word());
    const auto rk = kp_attack_parvin_diffusion(o, 4);
    const auto& K = o.hidden_key().K;
    for (std::size_t l = 2; l < K.size(); ++l) {
      const auto& e = rk.K_est[l];
      const auto low = static_cast<std::uint32_t>(width_mask(e.determined_prefix()));
      CHECK((e.value & low) == (K[l] & low));
    }
    CHECK(rk.queries_used == 4);
  }
}

TEST_CASE("kp norouzi: more images never lower the recovery rate") {
  SplitMixStream rng(4);
  for (int t = 0; t < 5; ++t) {
    LocalOracle o(key_schedule(Seed{rng.next_word(), CipherId::Norouzi}, 16, 16),
                  AttackModel::KnownPlaintext, rng.next_word());
    std::vector<PlainCipherPair> pairs;
    for (int i = 0; i < 4; ++i) pairs.push_back(o.sample());
    double prev = 0;
    std::size_t prev_resolved = 0;
    for (std::size_t g = 1; g <= 4; ++g) {
      const auto rk = kp_attack_norouzi(std::span(pairs).first(g));
      const double rate = recovery_rate(rk, o.hidden_key());
      CHECK(rk.resolved_count() >= prev_resolved);
      // resolved positions are always correct
      for (std::size_t l = 0; l < rk.K_est.size(); ++l) {
        if (rk.resolved(l)) CHECK(rk.K_est[l].value == o.hidden_key().K[l]);
      }
      if (g >= 2) CHECK(rate >= prev - 1.0);  // lucky defaults may drop out
      prev = rate;
      prev_resolved = rk.resolved_count();
    }
  }
}

TEST_CASE("kp norouzi needs a kp oracle") {
  LocalOracle o(key_schedule(Seed{1, CipherId::Norouzi}, 4, 4), AttackModel::ChosenPlaintext);
  CHECK_THROWS_AS(kp_attack_norouzi(o, 2), ModelViolation);
  CHECK_THROWS_AS(cp_attack_norouzi(*std::make_unique<LocalOracle>(
                      key_schedule(Seed{1, CipherId::Norouzi}, 4, 4), AttackModel::KnownPlaintext)),
                  ModelViolation);
}

TEST_CASE("parvin permutation recovery across shapes") {
  SplitMixStream rng(5);
  for (int t = 0; t < 30; ++t) {
    const std::size_t H = 2 + rng.uniform_below(14);
    const std::size_t W = 2 + rng.uniform_below(14);
    LocalOracle o(key_schedule(Seed{rng.next_word(), CipherId::Parvin}, H, W),
                  AttackModel::ChosenPlaintext);
    const auto perm = cp_attack_parvin_permutation(o);
    CHECK(perm.U == o.hidden_key().U);
    CHECK(perm.V == o.hidden_key().V);
    CHECK(o.query_count() <= H + W + 2);
    CHECK(perm.transcript.size() == o.query_count());
  }
}

TEST_CASE("parvin full cp attack decrypts") {
  SplitMixStream rng(6);
  for (int t = 0; t < 5; ++t) {
    LocalOracle o(key_schedule(Seed{rng.next_word(), CipherId::Parvin}, 12, 10),
                  AttackModel::ChosenPlaintext);
    const auto rk = cp_attack_parvin_full(o);
    CHECK(rk.complete());
    CHECK(decrypts(rk, o.hidden_key(), rng.next_word()));
    CHECK(recovery_rate(rk, o.hidden_key()) == doctest::Approx(100.0));
  }
}

TEST_CASE("norouzi cp attack decrypts") {
  SplitMixStream rng(7);
  for (int t = 0; t < 5; ++t) {
    LocalOracle o(key_schedule(Seed{rng.next_word(), CipherId::Norouzi}, 8, 8),
                  AttackModel::ChosenPlaintext);
    const auto rk = cp_attack_norouzi(o);
    CHECK(rk.complete());
    CHECK(rk.queries_used <= 8 * 64);
    CHECK(decrypts(rk, o.hidden_key(), rng.next_word()));
  }
}

TEST_CASE("yang: difference cardinalities 2 then 3") {
  SplitMixStream rng(8);
  std::set<std::size_t> firsts, seconds;
  for (int t = 0; t < 60; ++t) {
    const std::size_t H = 3 + rng.uniform_below(6);
    const std::size_t W = 3 + rng.uniform_below(6);
    LocalOracle o(key_schedule(Seed{rng.next_word(), CipherId::Yang}, H, W),
                  AttackModel::ChosenPlaintext);
    const auto perm = cp_attack_yang_permutation(o);
    REQUIRE(perm.diff_cardinalities.size() == 2);
    firsts.insert(perm.diff_cardinalities[0]);
    seconds.insert(perm.diff_cardinalities[1]);
    CHECK(perm.U == o.hidden_key().U);
    CHECK(perm.V == o.hidden_key().V);
  }
  CHECK(firsts == std::set<std::size_t>{2});
  CHECK(seconds == std::set<std::size_t>{3});
}

TEST_CASE("yang full cp attack decrypts") {
  SplitMixStream rng(9);
  for (int t = 0; t < 3; ++t) {
    LocalOracle o(key_schedule(Seed{rng.next_word(), CipherId::Yang}, 8, 8),
                  AttackModel::ChosenPlaintext);
    const auto rk = cp_attack_yang_full(o);
    CHECK(rk.complete());
    CHECK(rk.permutation_queries < rk.queries_used);
    CHECK(decrypts(rk, o.hidden_key(), rng.next_word()));
  }
}

TEST_CASE("recovery rate and equivalences") {
  const auto km = key_schedule(Seed{5, CipherId::Parvin}, 2, 2);
  RecoveredKey rk;
  rk.cipher = CipherId::Parvin;
  rk.height = 2;
  rk.width = 2;
  rk.equivalence = {Equivalence::ChainSeed, Equivalence::ChainSeed, Equivalence::MsbFree,
                    Equivalence::MsbFree, Equivalence::MsbFree};
  rk.K_est.resize(5);
  rk.K_est[0].value = parvin_mix(km.K[0], km.K[1]);
  rk.K_est[1].value = 0;
  for (std::size_t l = 2; l < 5; ++l) rk.K_est[l].value = km.K[l] ^ 0x80u;
  CHECK(recovery_rate(rk, km) == doctest::Approx(100.0));
  rk.K_est[4].value ^= 1;
  CHECK(recovery_rate(rk, km) == doctest::Approx(80.0));
}

}
