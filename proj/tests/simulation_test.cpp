#include <doctest.h>

#include "bess/error.hpp"
#include "bess/simulation.hpp"

using namespace bess;

TEST_CASE("operating characteristics from a tally") {
  DecisionTally t;
  t.null_trials = 100;
  t.null_rejections = 20;
  t.alt_trials = 100;
  t.alt_rejections = 70;
  t.null_patients = 100 * 40;
  t.alt_patients = 100 * 40;
  const auto oc = operating_characteristics(t);
  CHECK(oc.type1 == doctest::Approx(0.2));
  CHECK(oc.type2 == doctest::Approx(0.3));
  REQUIRE(oc.fdr.has_value());
  REQUIRE(oc.for_rate.has_value());
  CHECK(*oc.fdr == doctest::Approx(20.0 / 90.0));
  CHECK(*oc.for_rate == doctest::Approx(30.0 / 110.0));
  CHECK(oc.avg_n == doctest::Approx(40.0));

  const auto m = combined_metrics(oc, 1.5);
  CHECK(m.cer == doctest::Approx(0.2 + 1.5 * 0.3));
  CHECK(*m.cfr == doctest::Approx(1.5 * 20.0 / 90.0 + 30.0 / 110.0));
}

TEST_CASE("rates are undefined without decisions of that kind") {
  DecisionTally t;
  t.null_trials = 10;
  t.alt_trials = 10;
  const auto oc = operating_characteristics(t);
  CHECK_FALSE(oc.fdr.has_value());
  REQUIRE(oc.for_rate.has_value());
  CHECK(*oc.for_rate == doctest::Approx(0.5));
  CHECK_FALSE(combined_metrics(oc, 1.0).cfr.has_value());
}

TEST_CASE("simulated data is reproducible per seed") {
  const TruthPair truth{0.4, 0.25};
  const auto a = simulate_trial_data(truth, OutcomeFamily::Binary, 50, RngSeed{5, 3});
  const auto b = simulate_trial_data(truth, OutcomeFamily::Binary, 50, RngSeed{5, 3});
  CHECK(a.sum1 == b.sum1);
  CHECK(a.sum0 == b.sum0);
  CHECK(a.sum1 == std::floor(a.sum1));
  CHECK(a.ybar1() == a.sum1 / 50);
  CHECK_THROWS_AS(simulate_trial_data(truth, OutcomeFamily::Continuous, 50, RngSeed{5, 3}), Error);
}

TEST_CASE("error rate study is deterministic and sensible") {
  ErrorRateStudy s;
  s.model.prior = {0.0, 0.0, 0.0, 0.0};
  s.hyp.theta_star = 0.05;
  s.n = 40;
  s.c = 0.7;
  s.trials = 400;
  s.seed = {77, 0};
  const auto a = error_rate_study(s);
  const auto b = error_rate_study(s);
  CHECK(a.type1 == b.type1);
  CHECK(a.type2 == b.type2);
  CHECK(a.tally.null_trials == 400);
  CHECK(a.tally.alt_trials == 400);
  CHECK(1.0 - a.type2 > a.type1);

  s.rule = DecisionRule::ZTest;
  s.alpha = 0.05;
  const auto z = error_rate_study(s);
  CHECK(z.type1 < a.type1);
}

TEST_CASE("random scenario draws respect the hypotheses") {
  TruthScenario sc;
  sc.kind = ScenarioKind::Random;
  RngStream rng({3, 0});
  for (int i = 0; i < 2000; ++i) {
    const TruthPair h0 = draw_truth(sc, false, rng);
    CHECK(h0.theta1 - h0.theta0 <= -sc.margin + 1e-12);
    CHECK(h0.theta1 >= 0.0);
    const TruthPair h1 = draw_truth(sc, true, rng);
    CHECK(h1.theta1 - h1.theta0 > -sc.margin - 1e-12);
    CHECK(h1.theta0 >= sc.margin);
    CHECK(h1.theta0 <= sc.upper);
  }
}

TEST_CASE("interim re-estimation") {
  SsrRequest req;
  req.interim = {50, 16.0, 17.0};
  const auto out = sample_size_reestimation(req);
  CHECK(out.interim_confidence > 0.0);
  CHECK(out.interim_confidence < 1.0);
  CHECK(out.e_int == doctest::Approx((0.05 + 16) / 50.1 - (0.05 + 17) / 50.1));
  if (out.decision == InterimDecision::Continue) {
    REQUIRE(out.n_star.has_value());
    REQUIRE(out.n_star_capped.has_value());
    CHECK(*out.n_star_capped <= 50);
    CHECK(*out.n_star_capped <= *out.n_star);
  }

  SsrRequest strong = req;
  strong.interim = {50, 30.0, 10.0};
  CHECK(sample_size_reestimation(strong).decision == InterimDecision::StopSuccess);
  SsrRequest weak = req;
  weak.interim = {50, 5.0, 30.0};
  CHECK(sample_size_reestimation(weak).decision == InterimDecision::StopFutility);
}

TEST_CASE("designs without interim stops agree and the cap holds") {
  std::vector<DesignSpec> designs(4);
  designs[0].kind = DesignKind::BessSsr;
  designs[1].kind = DesignKind::BessSsrCap;
  designs[2].kind = DesignKind::StandardSse;
  designs[3].kind = DesignKind::StandardSseInterim;
  for (auto& d : designs) d.n_total = 40;
  const auto runs = run_designs(designs, TruthScenario{}, 30, {8, 0});
  REQUIRE(runs.size() == 4);
  CHECK(runs[1].oc.avg_n <= 40.0 + 1e-12);
  CHECK(runs[1].max_n <= 40);
  CHECK(runs[0].max_n >= runs[1].max_n);
  CHECK(runs[2].oc.avg_n == doctest::Approx(40.0));

  std::vector<DesignSpec> standard{designs[2], designs[3]};
  for (auto& d : standard) {
    d.c = 1.0;
    d.c_star = 0.0;
  }
  const auto flat = run_designs(standard, TruthScenario{}, 30, {8, 0});
  CHECK(flat[1].oc.type1 == flat[0].oc.type1);
  CHECK(flat[1].oc.type2 == flat[0].oc.type2);
  CHECK(flat[1].early_success == 0);
  CHECK(flat[1].early_futility == 0);
}

TEST_CASE("designs must share their common settings") {
  std::vector<DesignSpec> designs(2);
  designs[1].n_total = 60;
  CHECK_THROWS_AS(run_designs(designs, TruthScenario{}, 5, {1, 0}), Error);
}
