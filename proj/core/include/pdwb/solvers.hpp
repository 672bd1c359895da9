#pragma once

// Key-recovery engines for the additive DEA (alpha+k)^(beta+k)=y and the
// multiplicative variant (alpha+k)^g(S,k)=y.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pdwb/dea.hpp"

namespace pdwb {

/// The known-triple set G. Subsets G_j = {t : y_j = 1} are computed on
/// demand, never cached.
class TripleSet {
 public:
  explicit TripleSet(unsigned width = 8);

  unsigned width() const { return width_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const std::vector<Triple>& triples() const { return triples_; }

  void add(const Triple& t);
  void add(std::uint32_t alpha, std::uint32_t beta, std::uint32_t y);

  /// Index of the first triple (insertion order) with y_j = 1, or size().
  std::size_t first_covering(unsigned j) const;
  /// Materialized G_j.
  std::vector<Triple> covering(unsigned j) const;

 private:
  unsigned width_;
  std::vector<Triple> triples_;
};

/// Solver output: value plus the mask of confirmed bits.
struct KeyEstimate {
  std::uint32_t value = 0;
  std::uint32_t determined_mask = 0;
  unsigned width = 8;

  Word word() const { return Word(value, width); }
  bool bit_determined(unsigned i) const { return (determined_mask >> i) & 1u; }
  /// Mask of the n-1 low bits that the additive equation can fix.
  std::uint32_t low_mask() const { return static_cast<std::uint32_t>(width_mask(width - 1)); }
  /// True when every bit the additive equation can fix is confirmed.
  bool low_bits_determined() const { return (determined_mask & low_mask()) == low_mask(); }
  bool fully_determined() const {
    return determined_mask == static_cast<std::uint32_t>(width_mask(width));
  }
  /// Number of consecutive confirmed bits starting from bit 0.
  unsigned determined_prefix() const;

  friend bool operator==(const KeyEstimate&, const KeyEstimate&) = default;
};

/// Every k in [0, 2^{n-1}) satisfying all triples. Empty means the triples
/// are mutually inconsistent. O(2^{n-1} * g).
std::vector<std::uint32_t> brute_force_solve(const TripleSet& G);

/// Bit-plane propagation. Undetermined bits take the corresponding bit of
/// default_value; the MSB is never marked. O((n-1) * g) plus carry
/// recomputation per selected triple.
KeyEstimate bit_plane_solve(const TripleSet& G, std::uint32_t default_value = 0);

/// Bit-plane estimate refined by the brute-force candidate set: a bit is
/// marked when every consistent candidate agrees on it. Undetermined bits
/// keep the bit-plane value. Falls back to the bit-plane result alone when
/// the candidate set is empty.
KeyEstimate combined_solve(const TripleSet& G);

struct ChosenQuery {
  Word alpha;
  Word beta;
};

/// ((0...0, 1010...), (1010..., 0101...)) truncated to n bits. n > 2.
std::array<ChosenQuery, 2> theorem1_queries(unsigned n);
/// The mirrored pair ((1010..., 0...0), (0...0, 0101...)).
std::array<ChosenQuery, 2> theorem1_alternate_queries(unsigned n);

/// Probability that bits 0..i are all confirmed by g uniform triples:
/// (1 - 2^-g)^(i+1). Requires 0 <= i < n-1.
double confirm_probability(unsigned i, unsigned g, unsigned n = 8);

/// Known instance of (alpha + k) ^ g_mul(S, k) = y over bytes.
struct MulTriple {
  std::uint8_t alpha = 0;
  std::uint64_t S = 0;
  std::uint8_t y = 0;
};

struct MulSolution {
  /// Fully masked on a unique solution. On ambiguity the mask is 0 and the
  /// value holds the smallest surviving candidate.
  KeyEstimate estimate;
  std::size_t candidate_count = 0;
  std::size_t triples_used = 0;
};

/// Candidate-set intersection over all 256 keys, stopping at the first
/// singleton. candidate_count == 0 signals inconsistent data.
MulSolution mult_solve(std::span<const MulTriple> G);

/// All keys consistent with every multiplicative triple (no early stop).
std::vector<std::uint8_t> mult_candidates(std::span<const MulTriple> G);

}  // namespace pdwb
