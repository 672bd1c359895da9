#pragma once

// Verification suites and reproducible attack experiments. Everything here
// is a deterministic function of its arguments, seeds included.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pdwb/attacks.hpp"

namespace pdwb {

struct SuiteResult {
  std::string suite;
  bool passed = true;
  std::size_t checks = 0;
  /// Empty when passed.
  std::string first_failure;

  void fail(std::string why) {
    if (passed) first_failure = std::move(why);
    passed = false;
  }
};

/// k-bit and carry lookup tables regenerated by enumeration and compared
/// cell by cell with the published values.
SuiteResult verify_tables_suite();
/// Both query pairs, every k class, brute force and bit plane, n = 3..12.
SuiteResult verify_theorem1_suite();
/// Single-triple trailing-ones guarantee: n = 4 exhaustive, n = 8 over
/// every k < 128 with y = 2^i - 1 plus `samples` random (alpha, beta, k),
/// and the prefix-soundness of multi-triple solves.
SuiteResult verify_theorem2_suite(std::uint64_t seed = 2, std::size_t samples = 100000);

struct ProbCurvePoint {
  unsigned g = 0;
  unsigned i = 0;
  double analytic = 0;
  double empirical = 0;
};

/// Monte-Carlo estimate of P(bits 0..i confirmed | g uniform triples) at
/// n = 8, against (1 - 2^-g)^(i+1).
std::vector<ProbCurvePoint> prob_curve(unsigned g_max = 8, std::size_t trials = 100000,
                                       std::uint64_t seed = 4);
/// Rows "g,i,analytic,empirical".
std::string prob_curve_csv(const std::vector<ProbCurvePoint>& curve);
SuiteResult verify_prob_curve_suite(double tolerance = 0.02, std::size_t trials = 100000,
                                    std::uint64_t seed = 4);

struct AttackSpec {
  AttackModel model = AttackModel::ChosenPlaintext;
  CipherId cipher = CipherId::Norouzi;
  std::size_t height = 16;
  std::size_t width = 16;
  std::size_t trials = 1;
  /// Known-plaintext attacks: number of sampled pairs.
  std::size_t images = 3;
  std::uint64_t seed = 1;
};

/// Throws std::invalid_argument for combinations without an attack.
void check_supported(AttackModel model, CipherId cipher);

/// Runs the matching attack against any oracle.
RecoveredKey run_attack(Oracle& oracle, CipherId cipher, std::size_t images);

struct TrialSeeds {
  std::uint64_t key = 0;
  std::uint64_t samples = 0;
  std::uint64_t challenge = 0;
};

/// Per-trial seeds derived from the experiment seed.
TrialSeeds trial_seeds(std::uint64_t seed, std::size_t trial);

/// Hidden key for one trial. Known-plaintext Parvin keys get identity
/// shifts, since that attack covers the diffusion stage only.
KeyMaterial trial_key(const AttackSpec& spec, const TrialSeeds& seeds);

struct TrialOutcome {
  std::size_t trial = 0;
  std::uint64_t key_seed = 0;
  double recovery_rate = 0;
  std::size_t resolved = 0;
  std::size_t positions = 0;
  std::size_t queries = 0;
  std::size_t permutation_queries = 0;
  bool permutation_exact = true;
  bool exact_decryption = false;
  /// Known-plaintext Parvin only: fraction of positions l >= 2 whose bits
  /// 0..i are confirmed, i = 0..6.
  std::vector<double> prefix_fraction;
};

/// Scores an attack result against the hidden key, including decryption of
/// a fresh challenge image.
TrialOutcome score_trial(const RecoveredKey& rk, const KeyMaterial& truth,
                         std::uint64_t challenge_seed);

struct ExperimentReport {
  std::string id;
  AttackSpec spec;
  std::vector<TrialOutcome> trials;

  double mean_recovery_rate() const;
  std::size_t exact_decryptions() const;
  std::string to_csv() const;
  std::string to_json() const;
};

ExperimentReport run_attack_experiment(const AttackSpec& spec);

/// Canonical JSON dump of an attack result (estimates, masks, recovered
/// permutation, query counts). Equal keys give equal text.
std::string to_json(const RecoveredKey& rk);

}  // namespace pdwb
