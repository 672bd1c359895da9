#include "pdwb/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "pdwb/dea.hpp"
#include "pdwb/prng.hpp"
#include "pdwb/synth.hpp"
#include "pdwb/tables.hpp"
#include "pdwb/word.hpp"

namespace pdwb {

namespace {

unsigned trailing_ones(std::uint32_t y, unsigned n) {
  unsigned i = 0;
  while (i < n && ((y >> i) & 1u)) ++i;
  return i;
}

std::string hex32(std::uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%X", v);
  return buf;
}

// Bits 0..i-1 of est must be marked and match k.
bool lsbs_confirmed(const KeyEstimate& est, std::uint32_t k, unsigned i) {
  const auto m = static_cast<std::uint32_t>(width_mask(i));
  return (est.determined_mask & m) == m && ((est.value ^ k) & m) == 0;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

SuiteResult verify_tables_suite() {
  SuiteResult r;
  r.suite = "tables";
  const auto report = verify_tables();
  r.checks = 4 * 8 * 2;
  if (!report.ok()) r.fail(report.mismatches.front());
  return r;
}

SuiteResult verify_theorem1_suite() {
  SuiteResult r;
  r.suite = "theorem1";
  for (unsigned n = 3; n <= 12; ++n) {
    for (const auto& queries : {theorem1_queries(n), theorem1_alternate_queries(n)}) {
      for (std::uint32_t k = 0; k < (1u << (n - 1)); ++k) {
        const Word kw(k, n);
        TripleSet G(n);
        for (const auto& q : queries) G.add(Triple(q.alpha, q.beta, dea_eval(q.alpha, q.beta, kw)));
        const auto brute = brute_force_solve(G);
        const auto est = bit_plane_solve(G);
        ++r.checks;
        if (brute.size() != 1 || brute[0] != k) {
          r.fail("n=" + std::to_string(n) + " k=" + hex32(k) + ": brute force left " +
                 std::to_string(brute.size()) + " candidates");
        } else if (!est.low_bits_determined() || ((est.value ^ k) & est.low_mask()) != 0) {
          r.fail("n=" + std::to_string(n) + " k=" + hex32(k) + ": bit plane gave " +
                 hex32(est.value) + " mask " + hex32(est.determined_mask));
        }
      }
    }
  }
  return r;
}

SuiteResult verify_theorem2_suite(std::uint64_t seed, std::size_t samples) {
  SuiteResult r;
  r.suite = "theorem2";
  auto check = [&](std::uint32_t a, std::uint32_t b, std::uint32_t k, unsigned n) {
    const Word aw(a, n), bw(b, n), kw(k, n);
    const auto y = dea_eval(aw, bw, kw);
    const unsigned i = std::min(trailing_ones(y.value(), n), n - 1);
    TripleSet G(n);
    G.add(Triple(aw, bw, y));
    ++r.checks;
    if (!lsbs_confirmed(bit_plane_solve(G), k, i)) {
      r.fail("n=" + std::to_string(n) + " alpha=" + hex32(a) + " beta=" + hex32(b) +
             " k=" + hex32(k) + ": " + std::to_string(i) + " trailing ones not confirmed");
    }
  };

  for (std::uint32_t a = 0; a < 16; ++a) {
    for (std::uint32_t b = 0; b < 16; ++b) {
      for (std::uint32_t k = 0; k < 16; ++k) check(a, b, k, 4);
    }
  }

  // Every (alpha, beta) pair with y = 2^i - 1 exactly, every k class.
  for (std::uint32_t k = 0; k < 128; ++k) {
    for (std::uint32_t a = 0; a < 256; ++a) {
      const auto ak = static_cast<std::uint8_t>(a + k);
      for (std::uint32_t b = 0; b < 256; ++b) {
        const auto y = static_cast<std::uint32_t>(ak ^ static_cast<std::uint8_t>(b + k));
        if ((y & (y + 1)) == 0 && y != 0xFF) check(a, b, k, 8);
      }
    }
  }

  SplitMixStream rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    check(rng.next_byte(), rng.next_byte(), rng.next_byte(), 8);
  }

  // Prefix soundness with several triples: marked bits above a gap may be
  // wrong, but an unbroken marked prefix never is.
  for (std::size_t s = 0; s < samples / 10; ++s) {
    const Word kw(rng.next_byte(), 8);
    TripleSet G(8);
    const unsigned g = 1 + rng.uniform_below(4);
    for (unsigned t = 0; t < g; ++t) {
      const Word a(rng.next_byte(), 8), b(rng.next_byte(), 8);
      G.add(Triple(a, b, dea_eval(a, b, kw)));
    }
    const auto est = bit_plane_solve(G);
    const auto brute = brute_force_solve(G);
    ++r.checks;
    const bool in_brute =
        std::find(brute.begin(), brute.end(), kw.value() & 0x7F) != brute.end();
    if (!lsbs_confirmed(est, kw.value(), est.determined_prefix()) || !in_brute) {
      r.fail("multi-triple soundness violated for k=" + hex32(kw.value()));
    }
  }
  return r;
}

std::vector<ProbCurvePoint> prob_curve(unsigned g_max, std::size_t trials, std::uint64_t seed) {
  std::vector<ProbCurvePoint> out;
  SplitMixStream rng(seed);
  for (unsigned g = 1; g <= g_max; ++g) {
    std::array<std::size_t, 7> hits{};
    for (std::size_t t = 0; t < trials; ++t) {
      const Word k(rng.next_byte(), 8);
      TripleSet G(8);
      for (unsigned j = 0; j < g; ++j) {
        const Word a(rng.next_byte(), 8), b(rng.next_byte(), 8);
        G.add(Triple(a, b, dea_eval(a, b, k)));
      }
      const unsigned prefix = bit_plane_solve(G).determined_prefix();
      for (unsigned i = 0; i < 7 && i < prefix; ++i) ++hits[i];
    }
    for (unsigned i = 0; i < 7; ++i) {
      out.push_back({g, i, confirm_probability(i, g),
                     static_cast<double>(hits[i]) / static_cast<double>(trials)});
    }
  }
  return out;
}

std::string prob_curve_csv(const std::vector<ProbCurvePoint>& curve) {
  std::string out = "g,i,analytic,empirical\n";
  for (const auto& p : curve) {
    out += std::to_string(p.g) + "," + std::to_string(p.i) + "," + format_double(p.analytic) +
           "," + format_double(p.empirical) + "\n";
  }
  return out;
}

SuiteResult verify_prob_curve_suite(double tolerance, std::size_t trials, std::uint64_t seed) {
  SuiteResult r;
  r.suite = "prob-curve";
  for (const auto& p : prob_curve(8, trials, seed)) {
    ++r.checks;
    if (std::abs(p.empirical - p.analytic) > tolerance) {
      r.fail("g=" + std::to_string(p.g) + " i=" + std::to_string(p.i) + ": empirical " +
             format_double(p.empirical) + " vs analytic " + format_double(p.analytic));
    }
  }
  return r;
}

void check_supported(AttackModel model, CipherId cipher) {
  if (model == AttackModel::KnownPlaintext && cipher == CipherId::Yang) {
    throw std::invalid_argument("no known-plaintext attack on yang; use --model cp");
  }
}

RecoveredKey run_attack(Oracle& oracle, CipherId cipher, std::size_t images) {
  check_supported(oracle.model(), cipher);
  const bool kp = oracle.model() == AttackModel::KnownPlaintext;
  switch (cipher) {
    case CipherId::Parvin:
      return kp ? kp_attack_parvin_diffusion(oracle, images) : cp_attack_parvin_full(oracle);
    case CipherId::Norouzi:
      return kp ? kp_attack_norouzi(oracle, images) : cp_attack_norouzi(oracle);
    case CipherId::Yang:
      return cp_attack_yang_full(oracle);
  }
  throw std::invalid_argument("unknown cipher");
}

TrialSeeds trial_seeds(std::uint64_t seed, std::size_t trial) {
  SplitMixStream rng(seed ^ (0xA5A5A5A5ull * (trial + 1)));
  TrialSeeds s;
  s.key = rng.next_word();
  s.samples = rng.next_word();
  s.challenge = rng.next_word();
  return s;
}

KeyMaterial trial_key(const AttackSpec& spec, const TrialSeeds& seeds) {
  auto km = key_schedule(Seed{seeds.key, spec.cipher}, spec.height, spec.width);
  if (spec.model == AttackModel::KnownPlaintext && spec.cipher == CipherId::Parvin) {
    km.U.assign(spec.height, static_cast<std::uint32_t>(spec.width));
    km.V.assign(spec.width, static_cast<std::uint32_t>(spec.height));
  }
  return km;
}

TrialOutcome score_trial(const RecoveredKey& rk, const KeyMaterial& truth,
                         std::uint64_t challenge_seed) {
  TrialOutcome o;
  o.recovery_rate = recovery_rate(rk, truth);
  o.resolved = rk.resolved_count();
  o.positions = rk.K_est.size();
  o.queries = rk.queries_used;
  o.permutation_queries = rk.permutation_queries;
  const auto guess = rk.to_key_material();
  o.permutation_exact = guess.U == truth.U && guess.V == truth.V;
  const Image challenge = synth_uniform(truth.height, truth.width, challenge_seed);
  o.exact_decryption = decrypt(encrypt(challenge, truth), guess) == challenge;
  return o;
}

ExperimentReport run_attack_experiment(const AttackSpec& spec) {
  check_supported(spec.model, spec.cipher);
  ExperimentReport rep;
  rep.id = "attack-" + std::string(to_string(spec.model)) + "-" +
           std::string(to_string(spec.cipher));
  rep.spec = spec;
  const bool kp_parvin =
      spec.model == AttackModel::KnownPlaintext && spec.cipher == CipherId::Parvin;
  for (std::size_t t = 0; t < spec.trials; ++t) {
    const auto seeds = trial_seeds(spec.seed, t);
    const auto truth = trial_key(spec, seeds);
    LocalOracle oracle(truth, spec.model, seeds.samples);
    const auto rk = run_attack(oracle, spec.cipher, spec.images);
    auto o = score_trial(rk, truth, seeds.challenge);
    o.trial = t;
    o.key_seed = seeds.key;
    if (kp_parvin) {
      std::array<std::size_t, 7> hits{};
      for (std::size_t l = 2; l < rk.K_est.size(); ++l) {
        const unsigned prefix = rk.K_est[l].determined_prefix();
        for (unsigned i = 0; i < 7 && i < prefix; ++i) ++hits[i];
      }
      const double n = static_cast<double>(rk.K_est.size() - 2);
      for (const auto h : hits) o.prefix_fraction.push_back(static_cast<double>(h) / n);
    }
    rep.trials.push_back(std::move(o));
  }
  return rep;
}

double ExperimentReport::mean_recovery_rate() const {
  if (trials.empty()) return 0;
  double sum = 0;
  for (const auto& t : trials) sum += t.recovery_rate;
  return sum / static_cast<double>(trials.size());
}

std::size_t ExperimentReport::exact_decryptions() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.exact_decryption; }));
}

std::string ExperimentReport::to_csv() const {
  std::string out =
      "trial,key_seed,recovery_rate,resolved,positions,queries,permutation_queries,"
      "permutation_exact,exact_decryption\n";
  for (const auto& t : trials) {
    out += std::to_string(t.trial) + "," + std::to_string(t.key_seed) + "," +
           format_double(t.recovery_rate) + "," + std::to_string(t.resolved) + "," +
           std::to_string(t.positions) + "," + std::to_string(t.queries) + "," +
           std::to_string(t.permutation_queries) + "," + (t.permutation_exact ? "1" : "0") +
           "," + (t.exact_decryption ? "1" : "0") + "\n";
  }
  return out;
}

std::string ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = id;
  j["parameters"] = {
      {"model", std::string(to_string(spec.model))},
      {"cipher", std::string(to_string(spec.cipher))},
      {"height", spec.height},
      {"width", spec.width},
      {"trials", spec.trials},
      {"images", spec.images},
      {"seed", spec.seed},
  };
  j["metrics"] = {
      {"mean_recovery_rate", mean_recovery_rate()},
      {"exact_decryptions", exact_decryptions()},
  };
  if (!trials.empty() && !trials.front().prefix_fraction.empty()) {
    auto curve = nlohmann::ordered_json::array();
    for (unsigned i = 0; i < 7; ++i) {
      double sum = 0;
      for (const auto& t : trials) sum += t.prefix_fraction[i];
      curve.push_back({{"i", i},
                       {"empirical", sum / static_cast<double>(trials.size())},
                       {"analytic", spec.images >= 2
                                        ? confirm_probability(i, static_cast<unsigned>(spec.images - 1))
                                        : 0.0}});
    }
    j["metrics"]["prefix_confirmed"] = curve;
  }
  auto rows = nlohmann::ordered_json::array();
  for (const auto& t : trials) {
    rows.push_back({{"trial", t.trial},
                    {"key_seed", t.key_seed},
                    {"recovery_rate", t.recovery_rate},
                    {"resolved", t.resolved},
                    {"positions", t.positions},
                    {"queries", t.queries},
                    {"permutation_queries", t.permutation_queries},
                    {"permutation_exact", t.permutation_exact},
                    {"exact_decryption", t.exact_decryption}});
  }
  j["trials"] = rows;
  return j.dump(2) + "\n";
}

std::string to_json(const RecoveredKey& rk) {
  nlohmann::ordered_json j;
  j["cipher"] = std::string(to_string(rk.cipher));
  j["height"] = rk.height;
  j["width"] = rk.width;
  j["queries_used"] = rk.queries_used;
  j["permutation_queries"] = rk.permutation_queries;
  j["resolved"] = rk.resolved_count();
  auto K = nlohmann::ordered_json::array();
  auto masks = nlohmann::ordered_json::array();
  for (const auto& e : rk.K_est) {
    K.push_back(e.value);
    masks.push_back(e.determined_mask);
  }
  j["K"] = K;
  j["mask"] = masks;
  j["U"] = rk.U_est;
  j["V"] = rk.V_est;
  return j.dump() + "\n";
}

}  // namespace pdwb
