#include "bess/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "bess/error.hpp"
#include "bess/frequentist.hpp"

namespace bess {

TrialData simulate_trial_data(const TruthPair& truth, OutcomeFamily family, int n, RngStream& rng,
                              std::optional<double> sigma) {
  require(n >= 0, ErrorCode::Validation, "n must be non-negative");
  const auto draw = [&](double theta) -> double {
    switch (family) {
      case OutcomeFamily::Binary:
        require(theta >= 0.0 && theta <= 1.0, ErrorCode::Validation,
                "binary truth must lie in [0, 1]");
        return rng.binomial(n, theta);
      case OutcomeFamily::Count:
        require(theta >= 0.0, ErrorCode::Validation, "count truth must be non-negative");
        return rng.poisson(n * theta);
      case OutcomeFamily::Continuous:
        require(sigma.has_value() && *sigma > 0.0, ErrorCode::Validation,
                "continuous outcomes need a positive sigma");
        if (n == 0) return 0.0;
        return n * rng.normal(theta, *sigma / std::sqrt(static_cast<double>(n)));
    }
    return 0.0;
  };
  TrialData out;
  out.n = n;
  out.sum1 = draw(truth.theta1);
  out.sum0 = draw(truth.theta0);
  return out;
}

TrialData simulate_trial_data(const TruthPair& truth, OutcomeFamily family, int n, RngSeed seed,
                              std::optional<double> sigma) {
  RngStream rng(seed);
  return simulate_trial_data(truth, family, n, rng, sigma);
}

void DecisionTally::record(bool null_true, bool rejected, double patients) {
  if (null_true) {
    ++null_trials;
    null_rejections += rejected ? 1 : 0;
    null_patients += patients;
  } else {
    ++alt_trials;
    alt_rejections += rejected ? 1 : 0;
    alt_patients += patients;
  }
}

DecisionTally& DecisionTally::operator+=(const DecisionTally& other) {
  null_trials += other.null_trials;
  null_rejections += other.null_rejections;
  alt_trials += other.alt_trials;
  alt_rejections += other.alt_rejections;
  null_patients += other.null_patients;
  alt_patients += other.alt_patients;
  return *this;
}

OperatingCharacteristics operating_characteristics(const DecisionTally& tally, double prevalence) {
  require(prevalence >= 0.0 && prevalence <= 1.0, ErrorCode::Validation,
          "prevalence must lie in [0, 1]");
  OperatingCharacteristics oc;
  oc.tally = tally;
  oc.prevalence = prevalence;
  oc.n_trials = tally.null_trials + tally.alt_trials;
  const auto rate = [](long long k, long long m) {
    return m > 0 ? static_cast<double>(k) / static_cast<double>(m) : 0.0;
  };
  oc.type1 = rate(tally.null_rejections, tally.null_trials);
  const double power = rate(tally.alt_rejections, tally.alt_trials);
  oc.type2 = tally.alt_trials > 0 ? 1.0 - power : 0.0;

  const double false_pos = (1.0 - prevalence) * oc.type1;
  const double true_pos = prevalence * power;
  const double false_neg = prevalence * oc.type2;
  const double true_neg = (1.0 - prevalence) * (1.0 - oc.type1);
  const long long rejections = tally.null_rejections + tally.alt_rejections;
  const long long acceptances = oc.n_trials - rejections;
  if (rejections > 0 && false_pos + true_pos > 0.0) oc.fdr = false_pos / (false_pos + true_pos);
  if (acceptances > 0 && false_neg + true_neg > 0.0) {
    oc.for_rate = false_neg / (false_neg + true_neg);
  }
  const double null_avg = tally.null_trials > 0 ? tally.null_patients / tally.null_trials : 0.0;
  const double alt_avg = tally.alt_trials > 0 ? tally.alt_patients / tally.alt_trials : 0.0;
  if (tally.null_trials == 0) {
    oc.avg_n = alt_avg;
  } else if (tally.alt_trials == 0) {
    oc.avg_n = null_avg;
  } else {
    oc.avg_n = (1.0 - prevalence) * null_avg + prevalence * alt_avg;
  }
  return oc;
}

CombinedMetrics combined_metrics(const OperatingCharacteristics& oc, double k) {
  require(k >= 0.0, ErrorCode::Validation, "k must be non-negative");
  CombinedMetrics m;
  m.cer = oc.type1 + k * oc.type2;
  if (oc.fdr && oc.for_rate) m.cfr = k * *oc.fdr + *oc.for_rate;
  return m;
}

std::string to_string(DecisionRule rule) {
  return rule == DecisionRule::Posterior ? "posterior" : "z_test";
}

namespace {

std::uint64_t trial_index(long long trial, bool alternative) {
  return 2 * static_cast<std::uint64_t>(trial) + (alternative ? 1 : 0);
}

double round_to(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(x * scale) / scale;
}

// z-test that decides on the sign of the gap when the variance vanishes.
bool z_rejects(const TrialData& d, double theta_star, double alpha) {
  const double y1 = d.ybar1();
  const double y0 = d.ybar0();
  const double var = y1 * (1.0 - y1) + y0 * (1.0 - y0);
  if (var <= 0.0) return y1 - y0 > theta_star;
  return z_test_rejects(y1, y0, theta_star, d.n, alpha);
}

void require_two_arm_binary(const ModelSpec& model) {
  require(model.family == OutcomeFamily::Binary && model.arms == Arms::Two,
          ErrorCode::UnsupportedFamily, "simulation studies cover two-arm binary trials");
}

}  // namespace

OperatingCharacteristics error_rate_study(const ErrorRateStudy& study) {
  require_two_arm_binary(study.model);
  validate(study.model, study.hyp);
  require(study.n >= 1, ErrorCode::Validation, "n must be positive");
  require(study.trials >= 1, ErrorCode::Validation, "trials must be positive");
  if (study.rule == DecisionRule::ZTest) {
    require(study.alpha > 0.0 && study.alpha < 1.0, ErrorCode::Validation,
            "alpha must lie in (0, 1)");
  }
  PosteriorCache cache(study.model, study.hyp, study.posterior);
  const RngStream root(study.seed);
  DecisionTally tally;
  for (long long t = 0; t < study.trials; ++t) {
    for (bool alternative : {false, true}) {
      RngStream rng = root.child(trial_index(t, alternative));
      const TruthPair& truth = alternative ? study.alt_truth : study.null_truth;
      const TrialData d = simulate_trial_data(truth, OutcomeFamily::Binary, study.n, rng);
      const bool rejected = study.rule == DecisionRule::Posterior
                                ? cache.confidence(d.evidence(), d.n) >= study.c
                                : z_rejects(d, study.hyp.theta_star, study.alpha);
      tally.record(!alternative, rejected, d.n);
    }
  }
  return operating_characteristics(tally, 0.5);
}

MatchedComparisonResult matched_sse_comparison(const MatchedComparison& cfg) {
  require_two_arm_binary(cfg.model);
  MatchedComparisonResult out;
  out.bess = sample_size({cfg.model, cfg.hyp, ScalarEvidence{cfg.e}, cfg.c}, cfg.search);

  ErrorRateStudy study;
  study.model = cfg.model;
  study.hyp = cfg.hyp;
  study.n = out.bess.n;
  study.c = cfg.c;
  study.null_truth = cfg.null_truth;
  study.alt_truth = cfg.alt_truth;
  study.trials = cfg.trials;
  study.seed = cfg.seed;
  study.posterior = cfg.search.posterior;
  out.bess_oc = error_rate_study(study);

  const double step = std::pow(10.0, -cfg.rate_digits);
  out.alpha = std::clamp(round_to(out.bess_oc.type1, cfg.rate_digits), step, 1.0 - step);
  out.beta = std::clamp(round_to(out.bess_oc.type2, cfg.rate_digits), step, 1.0 - step);
  const TruthPair planned = cfg.planned.value_or(cfg.alt_truth);
  out.n_sse = sse_superiority(
      {out.alpha, out.beta, planned.theta1, planned.theta0, cfg.hyp.theta_star});

  study.n = out.n_sse;
  study.rule = cfg.sse_rule;
  study.alpha = out.alpha;
  out.sse_oc = error_rate_study(study);
  return out;
}

PriorSensitivityResult prior_sensitivity_study(const PriorSensitivity& cfg) {
  require(cfg.n0 >= 0, ErrorCode::Validation, "n0 must be non-negative");
  require(cfg.trials >= 1, ErrorCode::Validation, "trials must be positive");
  require(cfg.degenerate_floor > 0.0, ErrorCode::Validation, "degenerate_floor must be positive");
  const ModelSpec base{.family = OutcomeFamily::Binary, .arms = Arms::Two, .prior = {0.0, 0.0, 0.0, 0.0}};
  std::map<std::pair<int, int>, int> by_history;
  const RngStream root(cfg.seed);
  PriorSensitivityResult out;
  out.trials = cfg.trials;
  out.sample_sizes.reserve(static_cast<std::size_t>(cfg.trials));
  for (long long t = 0; t < cfg.trials; ++t) {
    RngStream rng = root.child(static_cast<std::uint64_t>(t));
    const TrialData hist = simulate_trial_data(cfg.history_truth, OutcomeFamily::Binary, cfg.n0, rng);
    const auto key = std::make_pair(static_cast<int>(hist.sum1), static_cast<int>(hist.sum0));
    auto it = by_history.find(key);
    if (it == by_history.end()) {
      ModelSpec model = base;
      model.prior = informative_prior_from_history(base, {cfg.n0, hist.sum1, hist.sum0});
      if (cfg.n0 > 0) {
        for (double* p : {&model.prior.a1, &model.prior.b1, &model.prior.a0, &model.prior.b0}) {
          if (*p == 0.0) *p = cfg.degenerate_floor;
        }
      }
      const int n = sample_size({model, cfg.hyp, ScalarEvidence{cfg.e}, cfg.c}, cfg.search).n;
      it = by_history.emplace(key, n).first;
    }
    out.sample_sizes.push_back(it->second);
  }
  out.distinct_priors = static_cast<long long>(by_history.size());
  double sum = 0.0;
  for (int n : out.sample_sizes) sum += n;
  out.mean_n = sum / static_cast<double>(out.trials);
  double ss = 0.0;
  for (int n : out.sample_sizes) ss += (n - out.mean_n) * (n - out.mean_n);
  out.sd_n = out.trials > 1 ? std::sqrt(ss / static_cast<double>(out.trials - 1)) : 0.0;
  return out;
}

std::string to_string(ScenarioKind kind) {
  return kind == ScenarioKind::FixedPair ? "fixed" : "random";
}

TruthPair draw_truth(const TruthScenario& scenario, bool alternative, RngStream& rng) {
  if (scenario.kind == ScenarioKind::FixedPair) {
    return alternative ? scenario.alt_truth : scenario.null_truth;
  }
  const double margin = scenario.margin;
  const double high = margin + (scenario.upper - margin) * rng.uniform();
  if (!alternative) return {(high - margin) * rng.uniform(), high};
  if (high - margin > scenario.ceiling) return {high, high};
  const double low = high - margin + (scenario.ceiling - (high - margin)) * rng.uniform();
  return {low, high};
}

std::string to_string(DesignKind kind) {
  switch (kind) {
    case DesignKind::BessSsr: return "bess_ssr";
    case DesignKind::BessSsrCap: return "bess_ssr_cap";
    case DesignKind::StandardSse: return "standard_sse";
    case DesignKind::StandardSseInterim: return "standard_sse_interim";
  }
  return "bess_ssr";
}

DesignKind parse_design(const std::string& text) {
  for (DesignKind k : {DesignKind::BessSsr, DesignKind::BessSsrCap, DesignKind::StandardSse,
                       DesignKind::StandardSseInterim}) {
    if (text == to_string(k)) return k;
  }
  fail(ErrorCode::Validation, "unknown design '" + text + "'");
}

std::string to_string(InterimDecision decision) {
  switch (decision) {
    case InterimDecision::StopSuccess: return "stop_success";
    case InterimDecision::StopFutility: return "stop_futility";
    case InterimDecision::Continue: return "continue";
  }
  return "continue";
}

namespace {

InterimDecision interim_decision(double confidence, double c, double c_star) {
  if (c < 1.0 && confidence >= c) return InterimDecision::StopSuccess;
  if (c_star > 0.0 && confidence <= c_star) return InterimDecision::StopFutility;
  return InterimDecision::Continue;
}

void validate_thresholds(double c, double c_star) {
  require(c > 0.0 && c <= 1.0 && c_star >= 0.0 && c_star < c, ErrorCode::Validation,
          "thresholds need 0 <= c_star < c <= 1");
}

SsrOutcome reestimate(PosteriorCache& interim_cache, const SsrRequest& req, bool search = true) {
  SsrOutcome out;
  const TrialData& d = req.interim;
  out.interim_confidence = interim_cache.confidence(d.evidence(), d.n);
  out.decision = interim_decision(out.interim_confidence, req.c, req.c_star);
  if (out.decision != InterimDecision::Continue || !search) return out;

  const ModelSpec& model = interim_cache.model();
  const HypothesisSpec& hyp = interim_cache.hypothesis();
  const ModelSpec post =
      posterior_model(model, hyp, d.evidence(), d.n, req.search.posterior);
  out.e_int = post.prior.a1 / (post.prior.a1 + post.prior.b1) -
              post.prior.a0 / (post.prior.a0 + post.prior.b0);
  const int remaining = std::max(req.n_total - d.n, 1);
  if (out.e_int <= hyp.theta_star) {
    out.n_star = remaining;
    out.note = "interim evidence is not above theta_star; continuing with the planned remainder";
  } else {
    try {
      const SampleSizeResult r =
          bess_algorithm_2({post, hyp, ScalarEvidence{out.e_int}, req.c, req.n_max}, req.search);
      out.n_star = r.n;
      out.planned_confidence = r.achieved_confidence;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NmaxExceeded) throw;
      out.n_star = req.n_max;
      out.note = "re-estimated sample size exceeds n_max; using n_max";
    }
  }
  if (req.cap) out.n_star_capped = std::min(*out.n_star, remaining);
  return out;
}

}  // namespace

SsrOutcome sample_size_reestimation(const SsrRequest& req) {
  require_two_arm_binary(req.model);
  validate(req.model, req.hyp);
  validate_thresholds(req.c, req.c_star);
  require(req.interim.n >= 1, ErrorCode::Validation, "interim n must be positive");
  require(req.interim.sum1 >= 0 && req.interim.sum1 <= req.interim.n && req.interim.sum0 >= 0 &&
              req.interim.sum0 <= req.interim.n,
          ErrorCode::Validation, "interim responders must lie in [0, n]");
  require(req.n_total > req.interim.n, ErrorCode::Validation,
          "n_total must exceed the interim sample size");
  require(req.n_max >= 1, ErrorCode::Validation, "n_max must be positive");
  PosteriorCache cache(req.model, req.hyp, req.search.posterior);
  return reestimate(cache, req);
}

std::vector<DesignRun> run_designs(const std::vector<DesignSpec>& designs,
                                   const TruthScenario& scenario, long long trials, RngSeed seed) {
  require(!designs.empty(), ErrorCode::Validation, "no designs to run");
  require(trials >= 1, ErrorCode::Validation, "trials must be positive");
  require(scenario.q >= 0.0 && scenario.q <= 1.0, ErrorCode::Validation, "q must lie in [0, 1]");
  const DesignSpec& first = designs.front();
  for (const DesignSpec& d : designs) {
    require_two_arm_binary(d.model);
    validate(d.model, d.hyp);
    validate_thresholds(d.c, d.c_star);
    require(d.n_total >= 2, ErrorCode::Validation, "n_total must be at least 2");
    require(d.alpha > 0.0 && d.alpha < 1.0, ErrorCode::Validation, "alpha must lie in (0, 1)");
    require(d.n_total == first.n_total && d.model == first.model && d.hyp == first.hyp &&
                d.c == first.c && d.c_star == first.c_star && d.ssr_n_max == first.ssr_n_max,
            ErrorCode::Validation,
            "designs run together must share n_total, model, hypothesis and thresholds");
  }
  const int n_total = first.n_total;
  const int n_interim = n_total / 2;
  const bool needs_search = std::any_of(designs.begin(), designs.end(), [](const DesignSpec& d) {
    return d.kind == DesignKind::BessSsr || d.kind == DesignKind::BessSsrCap;
  });
  PosteriorCache cache(first.model, first.hyp, first.ssr_search.posterior);
  std::map<std::pair<int, int>, SsrOutcome> ssr_memo;
  const auto ssr_for = [&](const TrialData& d) -> const SsrOutcome& {
    const auto key = std::make_pair(static_cast<int>(d.sum1), static_cast<int>(d.sum0));
    auto it = ssr_memo.find(key);
    if (it == ssr_memo.end()) {
      SsrRequest req{first.model, first.hyp, d, n_total, first.c, first.c_star, true,
                     first.ssr_n_max, first.ssr_search};
      it = ssr_memo.emplace(key, reestimate(cache, req, needs_search)).first;
    }
    return it->second;
  };

  std::vector<DesignRun> runs(designs.size());
  std::vector<DecisionTally> tallies(designs.size());
  for (std::size_t i = 0; i < designs.size(); ++i) runs[i].design = designs[i];

  const RngStream root(seed);
  for (long long t = 0; t < trials; ++t) {
    for (bool alternative : {false, true}) {
      const RngStream trial = root.child(trial_index(t, alternative));
      RngStream truth_rng = trial.child(0);
      RngStream stage1_rng = trial.child(1);
      const TruthPair truth = draw_truth(scenario, alternative, truth_rng);
      const TrialData interim = simulate_trial_data(truth, OutcomeFamily::Binary, n_interim, stage1_rng);
      const auto stage2 = [&](int n) {
        RngStream rng = trial.child(2);
        TrialData extra = simulate_trial_data(truth, OutcomeFamily::Binary, n, rng);
        return TrialData{interim.n + extra.n, interim.sum1 + extra.sum1, interim.sum0 + extra.sum0};
      };

      for (std::size_t i = 0; i < designs.size(); ++i) {
        const DesignSpec& design = designs[i];
        DesignRun& run = runs[i];
        bool rejected = false;
        int used = n_total;
        if (design.kind == DesignKind::StandardSse) {
          rejected = z_rejects(stage2(n_total - n_interim), design.hyp.theta_star, design.alpha);
        } else {
          const SsrOutcome& ssr = ssr_for(interim);
          if (ssr.decision != InterimDecision::Continue) {
            rejected = ssr.decision == InterimDecision::StopSuccess;
            used = n_interim;
            ++(rejected ? run.early_success : run.early_futility);
          } else if (design.kind == DesignKind::StandardSseInterim) {
            rejected = z_rejects(stage2(n_total - n_interim), design.hyp.theta_star, design.alpha);
          } else {
            const int extra =
                design.kind == DesignKind::BessSsrCap ? *ssr.n_star_capped : *ssr.n_star;
            if (!ssr.note.empty()) ++run.flagged;
            const TrialData pooled = stage2(extra);
            used = pooled.n;
            rejected = cache.confidence(pooled.evidence(), pooled.n) >= design.c;
          }
        }
        tallies[i].record(!alternative, rejected, used);
        run.max_n = std::max(run.max_n, used);
      }
    }
  }
  for (std::size_t i = 0; i < designs.size(); ++i) {
    runs[i].oc = operating_characteristics(tallies[i], scenario.q);
  }
  return runs;
}

DesignRun run_design(const DesignSpec& design, const TruthScenario& scenario, long long trials,
                     RngSeed seed) {
  return run_designs({design}, scenario, trials, seed).front();
}

}  // namespace bess
