#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "pdwb/attacks.hpp"
#include "pdwb/synth.hpp"

namespace pdwb {

namespace {

std::vector<std::size_t> diff_positions(const Image& a, const Image& b) {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (a.pixels()[q] != b.pixels()[q]) out.push_back(q);
  }
  return out;
}

// A probe holds v at stretch position m and w at position L; its reference
// holds v + w at L alone. Both have the same total, so they agree on
// p'(1..m-1) and every ciphertext difference lies in pi({m..L}). p'(m)
// differs iff v ^ g(w, k(m)) != g(v + w, k(m)). With w = 0 this fails when
// g(v, k) = v (e.g. k(m) = 43 fixes every byte), so attempts walk through
// totals T = 1, 2, ... and splits w = 0 .. T-1.
struct ProbeValue {
  std::uint8_t v;
  std::uint8_t w;
};

std::vector<ProbeValue> probe_schedule() {
  std::vector<ProbeValue> out;
  for (unsigned T = 1; T < 256; ++T) {
    for (unsigned w = 0; w < T && w < 4; ++w) {
      out.push_back({static_cast<std::uint8_t>(T - w), static_cast<std::uint8_t>(w)});
    }
  }
  return out;
}

class SlidingProber {
 public:
  SlidingProber(Oracle& oracle, PermutationRecovery& out)
      : oracle_(oracle), out_(out), H_(oracle.height()), W_(oracle.width()) {}

  std::vector<std::size_t> diff(std::size_t m, ProbeValue pv) {
    const std::size_t L = H_ * W_;
    Image p(H_, W_, 0);
    p.pos(m) = pv.v;
    p.pos(L) = pv.w;
    const Image c = query(std::move(p));
    return diff_positions(c, reference(static_cast<std::uint8_t>(pv.v + pv.w)));
  }

 private:
  const Image& reference(std::uint8_t total) {
    auto it = refs_.find(total);
    if (it == refs_.end()) {
      it = refs_.emplace(total, query(synth_single_pixel(H_, W_, H_ * W_, total))).first;
    }
    return it->second;
  }

  Image query(Image p) {
    Image c = oracle_.encrypt(p);
    out_.transcript.push_back({std::move(p), c});
    return c;
  }

  Oracle& oracle_;
  PermutationRecovery& out_;
  std::size_t H_, W_;
  std::map<std::uint8_t, Image> refs_;
};

}  // namespace

PermutationRecovery cp_attack_yang_permutation(Oracle& oracle) {
  oracle.require_model(AttackModel::ChosenPlaintext);
  const std::size_t H = oracle.height();
  const std::size_t W = oracle.width();
  const std::size_t L = H * W;
  PermutationRecovery out;
  out.U.assign(W, 0);
  out.V.assign(H, 0);
  SlidingProber prober(oracle, out);
  const auto schedule = probe_schedule();

  // Last row, m = L-1: the difference is {pi(L-1), pi(L)}, same ciphertext
  // row, order unknown.
  std::vector<std::size_t> pair;
  for (std::size_t a = 0; a < schedule.size() && pair.empty(); ++a) {
    const auto d = prober.diff(L - 1, schedule[a]);
    if (d.size() > 2) throw ModelViolation("first sliding probe differs in more than 2 pixels");
    if (d.size() == 2) pair = d;
  }
  if (pair.empty()) throw ModelViolation("no probe value separated the last two pixels");
  if (pair[0] / W != pair[1] / W) throw ModelViolation("last two pixels left the same row");
  out.diff_cardinalities.push_back(pair.size());
  const std::size_t last_row = pair[0] / W;
  out.V[H - 1] = static_cast<std::uint32_t>(last_row + 1);

  // At m = L-2 the chain can close up again at L-1 or L, since
  // (c1 + k) ^ g(w, k) may equal (c2 + k) ^ g(v + w, k). Values are tried
  // until the difference reaches all three positions; the first exposure of
  // pi(L-2) is kept if none does.
  std::set<std::size_t> known(pair.begin(), pair.end());
  for (std::size_t m = L - 2; m + W > L; --m) {
    std::vector<std::size_t> fresh;
    std::size_t cardinality = 0;
    auto settled = [&] { return !fresh.empty() && (m != L - 2 || cardinality == 3); };
    for (std::size_t a = 0; a < schedule.size() && !settled(); ++a) {
      const auto d = prober.diff(m, schedule[a]);
      std::vector<std::size_t> f;
      for (const auto q : d) {
        if (!known.count(q)) f.push_back(q);
      }
      if (f.empty()) continue;
      if (fresh.empty()) fresh = f;
      if (f != fresh) {
        throw ModelViolation("sliding probes disagree on pi(" + std::to_string(m) + ")");
      }
      cardinality = std::max(cardinality, d.size());
    }
    if (m == L - 2) out.diff_cardinalities.push_back(cardinality);
    if (fresh.size() != 1) {
      throw ModelViolation("sliding probe at " + std::to_string(m) + " exposed " +
                           std::to_string(fresh.size()) + " new pixels");
    }
    if (fresh[0] / W != last_row) throw ModelViolation("last-row pixel left its row");
    const std::size_t j = m - 1 - (H - 1) * W;
    out.U[j] = static_cast<std::uint32_t>(fresh[0] % W + 1);
    known.insert(fresh[0]);
  }

  // Last column, m = iW for i = H-1 .. 1. Of the differing pixels only
  // pi(iW) can sit in a row not seen yet, which yields v(i); its column is
  // u(W) and settles the order of the last-row pair.
  std::set<std::size_t> known_rows{last_row};
  for (std::size_t i = H - 1; i >= 1; --i) {
    const std::size_t m = i * W;
    std::set<std::size_t> fresh_rows;
    std::size_t hit = 0;
    for (std::size_t a = 0; a < schedule.size() && fresh_rows.empty(); ++a) {
      for (const auto q : prober.diff(m, schedule[a])) {
        if (!known_rows.count(q / W)) {
          fresh_rows.insert(q / W);
          hit = q;
        }
      }
    }
    if (fresh_rows.size() != 1) {
      throw ModelViolation("last-column probe at row " + std::to_string(i) + " exposed " +
                           std::to_string(fresh_rows.size()) + " new rows");
    }
    out.V[i - 1] = static_cast<std::uint32_t>(hit / W + 1);
    known_rows.insert(hit / W);
    const auto col = static_cast<std::uint32_t>(hit % W + 1);
    if (out.U[W - 1] == 0) {
      const auto a = static_cast<std::uint32_t>(pair[0] % W + 1);
      const auto b = static_cast<std::uint32_t>(pair[1] % W + 1);
      if (col != a && col != b) throw ModelViolation("last column matches neither candidate");
      out.U[W - 1] = col;
      out.U[W - 2] = col == a ? b : a;
    } else if (col != out.U[W - 1]) {
      throw ModelViolation("last-column probes disagree on u(W)");
    }
  }
  return out;
}

RecoveredKey cp_attack_yang_full(Oracle& oracle, const NorouziCpOptions& options) {
  auto perm = cp_attack_yang_permutation(oracle);
  const std::size_t permutation_queries = oracle.query_count();
  const auto U = perm.U;
  const auto V = perm.V;
  MappedOracle view(oracle, [U, V](const Image& c) { return yang_unpermute(c, U, V); });
  auto rk = cp_attack_norouzi(view, options);
  rk.cipher = CipherId::Yang;
  rk.U_est = std::move(perm.U);
  rk.V_est = std::move(perm.V);
  rk.permutation_queries = permutation_queries;
  rk.queries_used = oracle.query_count();
  return rk;
}

}  // namespace pdwb
