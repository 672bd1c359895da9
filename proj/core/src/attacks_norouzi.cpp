#include <string>

#include "pdwb/attacks.hpp"
#include "pdwb/prng.hpp"
#include "pdwb/word.hpp"

namespace pdwb {

namespace {

struct Observed {
  Image plain;
  Image cipher;
  std::vector<std::uint64_t> S;  // suffix sums of plain
};

Observed observe(Image plain, Image cipher) {
  auto S = suffix_sums(plain);
  return {std::move(plain), std::move(cipher), std::move(S)};
}

// (alpha + k) ^ g(S, k) = y at position l >= 2 of one image.
MulTriple mul_triple(const Observed& o, std::size_t l) {
  return {o.cipher.pos(l - 1), o.S[l], static_cast<std::uint8_t>(o.cipher.pos(l) ^ o.plain.pos(l))};
}

struct SeedSolutions {
  std::size_t count = 0;
  std::uint8_t k0 = 0;
  std::uint8_t k1 = 0;
};

// Joint search for (k(0), k(1)) over c(1) ^ p(1) = (k(0) + k(1)) ^ g(S_1, k(1)).
// The first image fixes k(0) for each k(1); the rest filter.
SeedSolutions solve_chain_seed(const std::vector<Observed>& obs) {
  SeedSolutions out;
  const auto& first = obs.front();
  const auto y0 = static_cast<std::uint8_t>(first.cipher.pos(1) ^ first.plain.pos(1));
  for (unsigned k1 = 0; k1 < 256; ++k1) {
    const auto kk1 = static_cast<std::uint8_t>(k1);
    const auto k0 = static_cast<std::uint8_t>((y0 ^ g_mul(first.S[1], kk1)) - kk1);
    bool ok = true;
    for (std::size_t i = 1; i < obs.size() && ok; ++i) {
      const auto y = static_cast<std::uint8_t>(obs[i].cipher.pos(1) ^ obs[i].plain.pos(1));
      ok = y == (static_cast<std::uint8_t>(k0 + kk1) ^ g_mul(obs[i].S[1], kk1));
    }
    if (!ok) continue;
    if (out.count++ == 0) {
      out.k0 = k0;
      out.k1 = kk1;
    }
  }
  return out;
}

RecoveredKey blank_norouzi_key(std::size_t H, std::size_t W) {
  RecoveredKey rk;
  rk.cipher = CipherId::Norouzi;
  rk.height = H;
  rk.width = W;
  rk.K_est.assign(H * W + 1, KeyEstimate{});
  rk.equivalence.assign(H * W + 1, Equivalence::Exact);
  return rk;
}

void set_seed_estimate(RecoveredKey& rk, const SeedSolutions& sol) {
  if (sol.count == 0) throw ModelViolation("no (k(0), k(1)) fits the first position");
  const std::uint32_t mask = sol.count == 1 ? 0xFF : 0;
  rk.K_est[0] = KeyEstimate{sol.k0, mask, 8};
  rk.K_est[1] = KeyEstimate{sol.k1, mask, 8};
}

Image random_image(std::size_t H, std::size_t W, SplitMixStream& rng) {
  Image img(H, W, 0);
  for (auto& px : img.pixels()) px = rng.next_byte();
  return img;
}

}  // namespace

RecoveredKey kp_attack_norouzi(std::span<const PlainCipherPair> pairs) {
  if (pairs.empty()) throw ContractViolation("need at least one pair");
  std::vector<Observed> obs;
  for (const auto& p : pairs) {
    if (!p.plain.same_shape(pairs[0].plain) || !p.cipher.same_shape(pairs[0].plain)) {
      throw ContractViolation("pairs differ in size");
    }
    obs.push_back(observe(p.plain, p.cipher));
  }
  const std::size_t L = pairs[0].plain.size();
  auto rk = blank_norouzi_key(pairs[0].plain.height(), pairs[0].plain.width());

  std::vector<MulTriple> G(obs.size());
  for (std::size_t l = 2; l <= L; ++l) {
    for (std::size_t i = 0; i < obs.size(); ++i) G[i] = mul_triple(obs[i], l);
    const auto sol = mult_solve(G);
    if (sol.candidate_count == 0) {
      throw ModelViolation("no keystream byte fits position " + std::to_string(l));
    }
    rk.K_est[l] = sol.estimate;
  }
  set_seed_estimate(rk, solve_chain_seed(obs));
  rk.queries_used = pairs.size();
  return rk;
}

RecoveredKey kp_attack_norouzi(Oracle& oracle, std::size_t images) {
  oracle.require_model(AttackModel::KnownPlaintext);
  std::vector<PlainCipherPair> pairs;
  for (std::size_t i = 0; i < images; ++i) pairs.push_back(oracle.sample());
  auto rk = kp_attack_norouzi(pairs);
  rk.queries_used = oracle.query_count();
  return rk;
}

RecoveredKey cp_attack_norouzi(Oracle& oracle, const NorouziCpOptions& options) {
  oracle.require_model(AttackModel::ChosenPlaintext);
  const std::size_t H = oracle.height();
  const std::size_t W = oracle.width();
  const std::size_t L = H * W;
  SplitMixStream rng(options.seed);
  auto rk = blank_norouzi_key(H, W);

  Image base = random_image(H, W, rng);
  Image cbase = oracle.encrypt(base);
  const Observed b = observe(base, cbase);

  // A probe differs from the base only at l, so both share S_l and the
  // multiplicative terms cancel in their XOR difference: the pair is a DEA
  // instance (c1(l-1) + k) ^ (c2(l-1) + k) = c1(l) ^ c2(l) ^ p1(l) ^ p2(l).
  // Keeping each image's own equation also pins the MSB through g(S_l, k).
  // At l = L the suffix sum is zero and the base alone gives k(L).
  // Two things can stall a position: a flip at l may leave c(l-1) unchanged
  // (small k at earlier positions), and a shared S_l may hide the MSB
  // (g(S, k) ^ g(S, k ^ 128) = 128 for every k). Whenever a probe fails to
  // shrink the candidate set the flipped pixel rotates through l, l-1 and
  // l+1: flipping l-1 moves c(l-1) directly, flipping l+1 changes S_l.
  for (std::size_t l = L; l >= 2; --l) {
    std::vector<MulTriple> G{mul_triple(b, l)};
    std::vector<std::size_t> flips{l, l - 1};
    if (l < L) flips.push_back(l + 1);
    std::size_t which = 0;
    auto sol = mult_solve(G);
    for (std::size_t probes = 0;
         sol.candidate_count > 1 && probes < options.max_probes_per_position; ++probes) {
      const std::size_t flip = flips[which];
      Image p = base;
      p.pos(flip) ^= static_cast<std::uint8_t>(1 + rng.uniform_below(255));
      const Image c = oracle.encrypt(p);
      std::uint64_t S = b.S[l];
      if (flip > l) S = S - base.pos(flip) + p.pos(flip);
      G.push_back({c.pos(l - 1), S, static_cast<std::uint8_t>(c.pos(l) ^ p.pos(l))});
      const auto before = sol.candidate_count;
      sol = mult_solve(G);
      if (sol.candidate_count >= before) which = (which + 1) % flips.size();
    }
    if (sol.candidate_count == 0) {
      throw ModelViolation("no keystream byte fits position " + std::to_string(l));
    }
    rk.K_est[l] = sol.estimate;
  }

  // At l = 1 both chains start from k(0), so probes carry no difference
  // information; fresh random images supply independent equations instead.
  std::vector<Observed> obs{b};
  auto seed = solve_chain_seed(obs);
  for (std::size_t extra = 0; seed.count > 1 && extra < options.max_probes_per_position;
       ++extra) {
    Image p = random_image(H, W, rng);
    Image c = oracle.encrypt(p);
    obs.push_back(observe(std::move(p), std::move(c)));
    seed = solve_chain_seed(obs);
  }
  set_seed_estimate(rk, seed);
  rk.queries_used = oracle.query_count();
  return rk;
}

}  // namespace pdwb
