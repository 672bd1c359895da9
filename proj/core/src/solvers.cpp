#include "pdwb/solvers.hpp"

#include <bitset>
#include <cmath>
#include <string>

namespace pdwb {

TripleSet::TripleSet(unsigned width) : width_(width) {
  if (width < kMinWidth || width > kMaxWidth) {
    throw ContractViolation("triple set width out of range");
  }
}

void TripleSet::add(const Triple& t) {
  if (t.width() != width_) {
    throw ContractViolation("triple width " + std::to_string(t.width()) +
                            " does not match set width " + std::to_string(width_));
  }
  triples_.push_back(t);
}

void TripleSet::add(std::uint32_t alpha, std::uint32_t beta, std::uint32_t y) {
  add(Triple(Word(alpha, width_), Word(beta, width_), Word(y, width_)));
}

std::size_t TripleSet::first_covering(unsigned j) const {
  for (std::size_t idx = 0; idx < triples_.size(); ++idx) {
    if ((triples_[idx].y.value() >> j) & 1u) return idx;
  }
  return triples_.size();
}

std::vector<Triple> TripleSet::covering(unsigned j) const {
  std::vector<Triple> out;
  for (const auto& t : triples_) {
    if ((t.y.value() >> j) & 1u) out.push_back(t);
  }
  return out;
}

unsigned KeyEstimate::determined_prefix() const {
  unsigned i = 0;
  while (i < width && ((determined_mask >> i) & 1u)) ++i;
  return i;
}

std::vector<std::uint32_t> brute_force_solve(const TripleSet& G) {
  const unsigned n = G.width();
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  std::vector<std::uint32_t> out;
  for (std::uint64_t k = 0; k < half; ++k) {
    bool ok = true;
    for (const auto& t : G.triples()) {
      if (raw::dea(t.alpha.value(), t.beta.value(), static_cast<std::uint32_t>(k), n) !=
          t.y.value()) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(static_cast<std::uint32_t>(k));
  }
  return out;
}

KeyEstimate bit_plane_solve(const TripleSet& G, std::uint32_t default_value) {
  const unsigned n = G.width();
  KeyEstimate est;
  est.width = n;
  est.value = static_cast<std::uint32_t>(default_value & width_mask(n));

  for (unsigned i = 0; i + 1 < n; ++i) {
    const std::size_t idx = G.first_covering(i);
    if (idx == G.size()) continue;
    const Triple& t = G.triples()[idx];
    const std::uint32_t a = t.alpha.value();
    const std::uint32_t b = t.beta.value();
    // Carries into plane i only see key bits below i.
    const std::uint32_t low = est.value & static_cast<std::uint32_t>(width_mask(i));
    const unsigned c_i = static_cast<unsigned>((raw::carries(a, low, n) >> i) & 1u);
    const unsigned ct_i = static_cast<unsigned>((raw::carries(b, low, n) >> i) & 1u);
    const std::uint32_t yt = t.y.value() ^ a ^ b;
    const unsigned k_i =
        k_bit_rule((a >> i) & 1u, (b >> i) & 1u, c_i, ct_i, (yt >> (i + 1)) & 1u);
    est.value = (est.value & ~(1u << i)) | (k_i << i);
    est.determined_mask |= 1u << i;
  }
  return est;
}

KeyEstimate combined_solve(const TripleSet& G) {
  KeyEstimate est = bit_plane_solve(G);
  const unsigned n = G.width();
  if (est.low_bits_determined() || n > 20) return est;

  const auto candidates = brute_force_solve(G);
  if (candidates.empty()) return est;

  const std::uint32_t low = est.low_mask();
  std::uint32_t agree = low;
  for (const auto k : candidates) agree &= ~(k ^ candidates.front());
  est.value = (est.value & ~agree) | (candidates.front() & agree);
  est.determined_mask = agree & low;
  return est;
}

namespace {

std::uint32_t repeat_pair(unsigned pair_bits, unsigned n) {
  std::uint64_t v = 0;
  const unsigned reps = (n + 1) / 2;
  for (unsigned j = 0; j < reps; ++j) v |= std::uint64_t{pair_bits} << (2 * j);
  return static_cast<std::uint32_t>(v & width_mask(n));
}

void require_theorem1_width(unsigned n) {
  if (n <= 2 || n > kMaxWidth) {
    throw ContractViolation("chosen-query construction needs 2 < n <= 32, got " +
                            std::to_string(n));
  }
}

}  // namespace

std::array<ChosenQuery, 2> theorem1_queries(unsigned n) {
  require_theorem1_width(n);
  const Word zeros(0, n);
  const Word tens(repeat_pair(0b10, n), n);
  const Word ones(repeat_pair(0b01, n), n);
  return {ChosenQuery{zeros, tens}, ChosenQuery{tens, ones}};
}

std::array<ChosenQuery, 2> theorem1_alternate_queries(unsigned n) {
  require_theorem1_width(n);
  const Word zeros(0, n);
  const Word tens(repeat_pair(0b10, n), n);
  const Word ones(repeat_pair(0b01, n), n);
  return {ChosenQuery{tens, zeros}, ChosenQuery{zeros, ones}};
}

double confirm_probability(unsigned i, unsigned g, unsigned n) {
  if (n < kMinWidth || n > kMaxWidth || i + 1 >= n) {
    throw ContractViolation("confirm_probability needs 0 <= i < n-1");
  }
  const double miss = std::ldexp(1.0, -static_cast<int>(g));
  return std::pow(1.0 - miss, static_cast<double>(i + 1));
}

std::vector<std::uint8_t> mult_candidates(std::span<const MulTriple> G) {
  std::vector<std::uint8_t> out;
  for (unsigned k = 0; k < 256; ++k) {
    const auto kb = static_cast<std::uint8_t>(k);
    bool ok = true;
    for (const auto& t : G) {
      const auto lhs = static_cast<std::uint8_t>(static_cast<std::uint8_t>(t.alpha + kb) ^
                                                 g_mul(t.S, kb));
      if (lhs != t.y) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(kb);
  }
  return out;
}

MulSolution mult_solve(std::span<const MulTriple> G) {
  std::bitset<256> alive;
  alive.set();
  std::size_t used = 0;
  for (const auto& t : G) {
    for (unsigned k = 0; k < 256; ++k) {
      if (!alive[k]) continue;
      const auto kb = static_cast<std::uint8_t>(k);
      const auto lhs =
          static_cast<std::uint8_t>(static_cast<std::uint8_t>(t.alpha + kb) ^ g_mul(t.S, kb));
      if (lhs != t.y) alive.reset(k);
    }
    ++used;
    if (alive.count() <= 1) break;
  }

  MulSolution sol;
  sol.triples_used = used;
  sol.candidate_count = alive.count();
  sol.estimate.width = 8;
  for (unsigned k = 0; k < 256; ++k) {
    if (alive[k]) {
      sol.estimate.value = k;
      break;
    }
  }
  if (sol.candidate_count == 1) sol.estimate.determined_mask = 0xFFu;
  return sol;
}

}  // namespace pdwb
