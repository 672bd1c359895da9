#include <algorithm>
#include <array>
#include <bitset>
#include <string>

#include "pdwb/attacks.hpp"
#include "pdwb/prng.hpp"
#include "pdwb/word.hpp"

namespace pdwb {

namespace {

// Residue of x mod m written in [1, m], so 0 reads as the full shift m.
std::uint32_t shift_value(long long x, std::size_t m) {
  const auto mm = static_cast<long long>(m);
  const auto r = ((x % mm) + mm) % mm;
  return static_cast<std::uint32_t>(r == 0 ? mm : r);
}

void require_pairs(std::span<const PlainCipherPair> pairs, std::size_t at_least) {
  if (pairs.size() < at_least) {
    throw ContractViolation("need at least " + std::to_string(at_least) + " pairs");
  }
  for (const auto& p : pairs) {
    if (!p.plain.same_shape(pairs[0].plain) || !p.cipher.same_shape(pairs[0].plain)) {
      throw ContractViolation("pairs differ in size");
    }
  }
}

Image permuted(const Image& plain, std::span<const std::uint32_t> U,
               std::span<const std::uint32_t> V) {
  return U.empty() ? plain : parvin_permute(plain, U, V);
}

RecoveredKey blank_parvin_key(std::size_t H, std::size_t W) {
  RecoveredKey rk;
  rk.cipher = CipherId::Parvin;
  rk.height = H;
  rk.width = W;
  rk.K_est.assign(H * W + 1, KeyEstimate{});
  rk.equivalence.assign(H * W + 1, Equivalence::MsbFree);
  rk.equivalence[0] = Equivalence::ChainSeed;
  rk.equivalence[1] = Equivalence::ChainSeed;
  return rk;
}

// c(1) = s(1) ^ z with z = (k(0) + k(1)) ^ k(1). The canonical key pair
// realizing z is (k(0), k(1)) = (z, 0).
void set_chain_seed(RecoveredKey& rk, std::uint8_t z) {
  rk.K_est[0] = KeyEstimate{z, 0xFF, 8};
  rk.K_est[1] = KeyEstimate{0, 0, 8};
}

}  // namespace

std::vector<TripleSet> reduce_parvin_pairs(std::span<const PlainCipherPair> pairs,
                                           std::span<const std::uint32_t> U,
                                           std::span<const std::uint32_t> V) {
  require_pairs(pairs, 2);
  const std::size_t L = pairs[0].plain.size();
  std::vector<Image> S;
  S.reserve(pairs.size());
  for (const auto& p : pairs) S.push_back(permuted(p.plain, U, V));

  std::vector<TripleSet> out(L + 1, TripleSet(8));
  const auto& c1 = pairs[0].cipher;
  for (std::size_t l = 2; l <= L; ++l) {
    for (std::size_t j = 1; j < pairs.size(); ++j) {
      const auto& cj = pairs[j].cipher;
      out[l].add(c1.pos(l - 1), cj.pos(l - 1),
                 c1.pos(l) ^ cj.pos(l) ^ S[0].pos(l) ^ S[j].pos(l));
    }
  }
  return out;
}

RecoveredKey kp_attack_parvin_diffusion(std::span<const PlainCipherPair> pairs,
                                        std::span<const std::uint32_t> U,
                                        std::span<const std::uint32_t> V) {
  const auto G = reduce_parvin_pairs(pairs, U, V);
  const auto& first = pairs[0];
  auto rk = blank_parvin_key(first.plain.height(), first.plain.width());
  for (std::size_t l = 2; l < G.size(); ++l) rk.K_est[l] = bit_plane_solve(G[l]);
  const Image s1 = permuted(first.plain, U, V);
  set_chain_seed(rk, static_cast<std::uint8_t>(first.cipher.pos(1) ^ s1.pos(1)));
  rk.U_est.assign(U.begin(), U.end());
  rk.V_est.assign(V.begin(), V.end());
  rk.queries_used = pairs.size();
  return rk;
}

RecoveredKey kp_attack_parvin_diffusion(Oracle& oracle, std::size_t images) {
  oracle.require_model(AttackModel::KnownPlaintext);
  std::vector<PlainCipherPair> pairs;
  for (std::size_t i = 0; i < images; ++i) pairs.push_back(oracle.sample());
  auto rk = kp_attack_parvin_diffusion(pairs);
  rk.queries_used = oracle.query_count();
  return rk;
}

PermutationRecovery cp_attack_parvin_permutation(Oracle& oracle) {
  oracle.require_model(AttackModel::ChosenPlaintext);
  const std::size_t H = oracle.height();
  const std::size_t W = oracle.width();
  PermutationRecovery out;
  out.U.assign(H, 0);
  out.V.assign(W, 0);

  const Image zero(H, W, 0);
  const Image c0 = oracle.encrypt(zero);
  out.transcript.push_back({zero, c0});

  // The probe pixel lands at one S position and the first ciphertext
  // difference sits exactly there with value 128.
  auto probe = [&](std::size_t row, std::size_t col) {
    Image p = zero;
    p.at(row, col) = 128;
    Image c = oracle.encrypt(p);
    out.transcript.push_back({p, c});
    for (std::size_t l = 1; l <= c.size(); ++l) {
      const auto d = c.pos(l) ^ c0.pos(l);
      if (d == 0) continue;
      if (d != 128) {
        throw ModelViolation("first ciphertext difference is " + std::to_string(d) +
                             ", expected 128");
      }
      return std::pair{(l - 1) / W, (l - 1) % W};
    }
    throw ModelViolation("probe produced no ciphertext difference");
  };

  std::vector<bool> have_v(W, false);
  for (std::size_t d = 0; d < H; ++d) {
    const std::size_t j = d % W;
    const auto [r, c] = probe(d, j);
    out.U[d] = shift_value(static_cast<long long>(c) - static_cast<long long>(j), W);
    out.V[c] = shift_value(static_cast<long long>(r) - static_cast<long long>(d), H);
    have_v[c] = true;
  }
  for (std::size_t c = 0; c < W; ++c) {
    if (have_v[c]) continue;
    const std::size_t j = (c + W - out.U[0] % W) % W;
    const auto [r, c2] = probe(0, j);
    if (c2 != c) throw ModelViolation("row-0 probe landed in an unexpected column");
    out.V[c] = shift_value(static_cast<long long>(r), H);
    have_v[c] = true;
  }
  return out;
}

namespace {

using Dist = std::array<double, 256>;

// Keystream candidates for bits 0..6 at one position, filtered by triples
// (c(l-1), 0, c(l) ^ s(l)): each image on its own satisfies
// (c(l-1) + k) ^ (0 + k) = c(l) ^ s(l).
class ParvinDiffusionState {
 public:
  explicit ParvinDiffusionState(std::size_t L)
      : L_(L), G_(L + 1, TripleSet(8)), cands_(L + 1), seen_(L + 1) {
    for (std::size_t l = 2; l <= L; ++l) {
      cands_[l].resize(128);
      for (std::size_t k = 0; k < 128; ++k) cands_[l][k] = static_cast<std::uint8_t>(k);
    }
  }

  void add(const Image& S, const Image& C) {
    for (std::size_t l = 2; l <= L_; ++l) {
      const std::uint8_t a = C.pos(l - 1);
      if (seen_[l].test(a)) continue;
      seen_[l].set(a);
      const auto y = static_cast<std::uint8_t>(C.pos(l) ^ S.pos(l));
      G_[l].add(a, 0, y);
      auto& ks = cands_[l];
      std::erase_if(ks, [&](std::uint8_t k) { return parvin_mix(a, k) != y; });
      if (ks.empty()) {
        throw ModelViolation("no keystream byte fits position " + std::to_string(l));
      }
    }
  }

  bool resolved(std::size_t l) const { return cands_[l].size() == 1; }
  std::size_t unresolved() const {
    std::size_t n = 0;
    for (std::size_t l = 2; l <= L_; ++l) n += resolved(l) ? 0 : 1;
    return n;
  }
  const std::vector<std::uint8_t>& candidates(std::size_t l) const { return cands_[l]; }
  const TripleSet& triples(std::size_t l) const { return G_[l]; }

 private:
  std::size_t L_;
  std::vector<TripleSet> G_;
  std::vector<std::vector<std::uint8_t>> cands_;
  std::vector<std::bitset<256>> seen_;
};

// Expected size of the candidate class left after observing mix(a, k) for
// each possible chain value a entering the position.
std::array<double, 256> expected_class_size(const std::vector<std::uint8_t>& ks) {
  std::array<double, 256> out{};
  for (std::size_t a = 0; a < 256; ++a) {
    std::array<unsigned, 256> count{};
    for (const auto k : ks) ++count[parvin_mix(static_cast<std::uint8_t>(a), k)];
    double sq = 0;
    for (const auto c : count) sq += static_cast<double>(c) * c;
    out[a] = sq / static_cast<double>(ks.size());
  }
  return out;
}

// One crafted S image. The attacker tracks a distribution over the chain
// value c(m) the oracle will produce; whenever the next position is still
// ambiguous it picks s(m) so that the entering chain value splits the
// remaining candidates as finely as possible.
Image craft_image(const ParvinDiffusionState& st, std::size_t H, std::size_t W,
                  std::uint8_t z, SplitMixStream& rng) {
  const std::size_t L = H * W;
  Image S(H, W, 0);
  Dist chain{};  // distribution of c(m - 1)
  for (std::size_t m = 1; m <= L; ++m) {
    // R: distribution of (c(m-1) + k(m)) ^ k(m), so c(m) = s(m) ^ R.
    Dist R{};
    if (m == 1) {
      R[z] = 1.0;
    } else {
      const auto& ks = st.candidates(m);
      const double w = 1.0 / static_cast<double>(ks.size());
      for (std::size_t a = 0; a < 256; ++a) {
        if (chain[a] == 0) continue;
        for (const auto k : ks) R[parvin_mix(static_cast<std::uint8_t>(a), k)] += chain[a] * w;
      }
    }

    std::uint8_t s = rng.next_byte();
    if (m < L && !st.resolved(m + 1)) {
      const auto score_of = expected_class_size(st.candidates(m + 1));
      double best = 1e300;
      for (std::size_t cand = 0; cand < 256; ++cand) {
        double score = 0;
        for (std::size_t r = 0; r < 256; ++r) {
          if (R[r] != 0) score += R[r] * score_of[cand ^ r];
        }
        if (score < best - 1e-12) {
          best = score;
          s = static_cast<std::uint8_t>(cand);
        }
      }
    }
    S.pos(m) = s;
    Dist next{};
    for (std::size_t r = 0; r < 256; ++r) next[r ^ s] = R[r];
    chain = next;
  }
  return S;
}

}  // namespace

RecoveredKey cp_attack_parvin_full(Oracle& oracle, const ParvinFullOptions& options) {
  auto perm = cp_attack_parvin_permutation(oracle);
  const std::size_t H = oracle.height();
  const std::size_t W = oracle.width();
  const std::size_t L = H * W;
  auto rk = blank_parvin_key(H, W);
  rk.permutation_queries = oracle.query_count();

  // Every image seen so far is a known plaintext for the diffusion stage.
  ParvinDiffusionState st(L);
  std::uint8_t z = 0;
  bool first = true;
  for (const auto& [plain, cipher] : perm.transcript) {
    const Image S = parvin_permute(plain, perm.U, perm.V);
    const auto zi = static_cast<std::uint8_t>(cipher.pos(1) ^ S.pos(1));
    if (!first && zi != z) throw ModelViolation("inconsistent chain seed at position 1");
    z = zi;
    first = false;
    st.add(S, cipher);
  }

  SplitMixStream rng(options.seed);
  for (std::size_t used = 0; used < options.max_diffusion_images && st.unresolved() > 0;
       ++used) {
    const Image S = craft_image(st, H, W, z, rng);
    const Image C = oracle.encrypt(parvin_unpermute(S, perm.U, perm.V));
    st.add(S, C);
  }

  set_chain_seed(rk, z);
  for (std::size_t l = 2; l <= L; ++l) rk.K_est[l] = combined_solve(st.triples(l));
  rk.U_est = std::move(perm.U);
  rk.V_est = std::move(perm.V);
  rk.queries_used = oracle.query_count();
  return rk;
}

}  // namespace pdwb
