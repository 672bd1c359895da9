#pragma once

// Plaintext attacks on the three ciphers. Each attack talks to an Oracle,
// so the attack model is enforced and its data complexity is the oracle's
// query count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pdwb/ciphers.hpp"
#include "pdwb/oracle.hpp"
#include "pdwb/solvers.hpp"

namespace pdwb {

/// How a recovered keystream byte is compared with the truth.
enum class Equivalence {
  /// All 8 bits matter (the multiplicative term fixes the MSB).
  Exact,
  /// Only bits 0..6 matter: k and k ^ 0x80 encrypt identically.
  MsbFree,
  /// Parvin k(0), k(1): the cipher only ever uses (k(0) + k(1)) ^ k(1).
  ChainSeed,
};

struct RecoveredKey {
  CipherId cipher = CipherId::Parvin;
  std::size_t height = 0;
  std::size_t width = 0;
  /// k(0..L)
  std::vector<KeyEstimate> K_est;
  std::vector<Equivalence> equivalence;
  /// Empty unless the attack recovered the permutation stage.
  std::vector<std::uint32_t> U_est;
  std::vector<std::uint32_t> V_est;
  std::size_t queries_used = 0;
  std::size_t permutation_queries = 0;

  std::size_t length() const { return height * width; }
  /// Whether position l is pinned down under its equivalence.
  bool resolved(std::size_t l) const;
  std::size_t resolved_count() const;
  bool complete() const { return resolved_count() == K_est.size(); }

  /// Key material built from the estimate values. Missing permutation
  /// streams become identity shifts / identity permutations.
  KeyMaterial to_key_material() const;

  friend bool operator==(const RecoveredKey&, const RecoveredKey&) = default;
};

/// Percentage of keystream positions k(0..L) whose estimate matches the
/// truth under the position's equivalence. Undetermined positions count
/// when their default value happens to match.
double recovery_rate(const RecoveredKey& est, const KeyMaterial& truth);

// Parvin

/// Per-position triple sets from known pairs: entry l (2 <= l <= L) pairs
/// image 1 against every other image,
///   (c1(l-1) + k) ^ (cj(l-1) + k) = c1(l) ^ cj(l) ^ s1(l) ^ sj(l).
/// Entries 0 and 1 stay empty (at l = 1 both chains start from k(0)).
/// Empty U and V mean identity shifts.
std::vector<TripleSet> reduce_parvin_pairs(std::span<const PlainCipherPair> pairs,
                                           std::span<const std::uint32_t> U = {},
                                           std::span<const std::uint32_t> V = {});

/// Bit-plane solve per position, k(0) and k(1) from the l = 1 relation.
RecoveredKey kp_attack_parvin_diffusion(std::span<const PlainCipherPair> pairs,
                                        std::span<const std::uint32_t> U = {},
                                        std::span<const std::uint32_t> V = {});
/// Same, drawing `images` samples from a known-plaintext oracle.
RecoveredKey kp_attack_parvin_diffusion(Oracle& oracle, std::size_t images);

struct PermutationRecovery {
  std::vector<std::uint32_t> U;
  std::vector<std::uint32_t> V;
  /// Every query issued, in order.
  std::vector<PlainCipherPair> transcript;
  /// Yang only: |diff| of the first two sliding probes against the reference.
  std::vector<std::size_t> diff_cardinalities;
};

/// All-zero reference plus one 128-probe per row, then first-row probes for
/// the columns the row probes missed. At most 1 + H + (W - 1) queries.
PermutationRecovery cp_attack_parvin_permutation(Oracle& oracle);

struct ParvinFullOptions {
  /// Upper bound on crafted images spent on the diffusion stage.
  std::size_t max_diffusion_images = 12;
  std::uint64_t seed = 0x5EED;
};

/// Permutation recovery, then keystream recovery from the permutation
/// transcript plus adaptively crafted images.
RecoveredKey cp_attack_parvin_full(Oracle& oracle, const ParvinFullOptions& options = {});

// Norouzi

/// Multiplicative solve per position l >= 2 across all images; (k(0), k(1))
/// by a joint 2^16 search over the l = 1 relations.
RecoveredKey kp_attack_norouzi(std::span<const PlainCipherPair> pairs);
RecoveredKey kp_attack_norouzi(Oracle& oracle, std::size_t images);

struct NorouziCpOptions {
  /// Probes per position before giving up on it.
  std::size_t max_probes_per_position = 64;
  std::uint64_t seed = 0xC0FFEE;
};

/// Single-pixel probes against one random base image, position by position
/// from l = L down to 2, then k(0), k(1) from extra random images.
RecoveredKey cp_attack_norouzi(Oracle& oracle, const NorouziCpOptions& options = {});

// Yang

/// Sliding single-pixel probes along the last row and last column.
PermutationRecovery cp_attack_yang_permutation(Oracle& oracle);

/// Permutation recovery, then the Norouzi chosen-plaintext attack on the
/// unpermuted ciphertexts.
RecoveredKey cp_attack_yang_full(Oracle& oracle, const NorouziCpOptions& options = {});

}  // namespace pdwb
