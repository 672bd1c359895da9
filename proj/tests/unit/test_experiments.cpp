#include <doctest.h>

#include "pdwb/experiments.hpp"

using namespace pdwb;

TEST_SUITE("experiments") {

TEST_CASE("suites pass") {
  CHECK(verify_tables_suite().passed);
  CHECK(verify_theorem1_suite().passed);
  const auto t2 = verify_theorem2_suite(2, 5000);
  CHECK(t2.passed);
  CHECK(t2.checks > 5000);
}

TEST_CASE("prob curve csv") {
  const auto curve = prob_curve(2, 2000, 1);
  CHECK(curve.size() == 14);
  const auto csv = prob_curve_csv(curve);
  CHECK(csv.starts_with("g,i,analytic,empirical\n"));
  CHECK(curve[0].analytic == doctest::Approx(0.5));
}

TEST_CASE("supported combinations") {
  CHECK_THROWS_AS(check_supported(AttackModel::KnownPlaintext, CipherId::Yang),
                  std::invalid_argument);
  CHECK_NOTHROW(check_supported(AttackModel::ChosenPlaintext, CipherId::Yang));
  CHECK_NOTHROW(check_supported(AttackModel::KnownPlaintext, CipherId::Parvin));
}

TEST_CASE("trial seeds differ per trial and repeat per seed") {
  const auto a = trial_seeds(1, 0);
  const auto b = trial_seeds(1, 1);
  CHECK(a.key != b.key);
  CHECK(trial_seeds(1, 0).key == a.key);
  CHECK(trial_seeds(1, 0).challenge == a.challenge);
}

TEST_CASE("reports are deterministic") {
  AttackSpec spec;
  spec.model = AttackModel::KnownPlaintext;
  spec.cipher = CipherId::Parvin;
  spec.height = 8;
  spec.width = 8;
  spec.trials = 2;
  spec.images = 3;
  spec.seed = 77;
  const auto r1 = run_attack_experiment(spec);
  const auto r2 = run_attack_experiment(spec);
  CHECK(r1.to_json() == r2.to_json());
  CHECK(r1.to_csv() == r2.to_csv());
  REQUIRE(r1.trials.size() == 2);
  CHECK(r1.trials[0].prefix_fraction.size() == 7);
  spec.seed = 78;
  CHECK(run_attack_experiment(spec).to_json() != r1.to_json());
}

TEST_CASE("kp parvin trial keys use identity shifts") {
  AttackSpec spec;
  spec.model = AttackModel::KnownPlaintext;
  spec.cipher = CipherId::Parvin;
  spec.height = 4;
  spec.width = 5;
  const auto km = trial_key(spec, trial_seeds(1, 0));
  CHECK(parvin_permute(Image(4, 5, 7), km.U, km.V) == Image(4, 5, 7));
  Image ramp(4, 5, 0);
  for (std::size_t l = 1; l <= 20; ++l) ramp.pos(l) = static_cast<std::uint8_t>(l);
  CHECK(parvin_permute(ramp, km.U, km.V) == ramp);
}

}
