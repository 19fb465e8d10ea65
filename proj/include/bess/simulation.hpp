#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bess/model.hpp"
#include "bess/numerics.hpp"
#include "bess/posterior.hpp"
#include "bess/search.hpp"

namespace bess {

/// True parameters of the two arms (or the single arm in theta1).
struct TruthPair {
  double theta1 = 0.0;
  double theta0 = 0.0;
  bool operator==(const TruthPair&) const = default;
};

/// Per-arm sufficient summaries of n simulated patients.
struct TrialData {
  int n = 0;
  double sum1 = 0.0;
  double sum0 = 0.0;
  double ybar1() const { return n > 0 ? sum1 / n : 0.0; }
  double ybar0() const { return n > 0 ? sum0 / n : 0.0; }
  PairEvidence evidence() const { return {ybar1(), ybar0()}; }
};

/// n i.i.d. outcomes per arm. Continuous outcomes need sigma.
TrialData simulate_trial_data(const TruthPair& truth, OutcomeFamily family, int n, RngStream& rng,
                              std::optional<double> sigma = std::nullopt);
TrialData simulate_trial_data(const TruthPair& truth, OutcomeFamily family, int n, RngSeed seed,
                              std::optional<double> sigma = std::nullopt);

/// Decision counts of a study run under each hypothesis.
struct DecisionTally {
  long long null_trials = 0;
  long long null_rejections = 0;
  long long alt_trials = 0;
  long long alt_rejections = 0;
  double null_patients = 0.0;  // per-arm patients summed over trials
  double alt_patients = 0.0;

  void record(bool null_true, bool rejected, double patients);
  DecisionTally& operator+=(const DecisionTally& other);
};

struct OperatingCharacteristics {
  double type1 = 0.0;
  double type2 = 0.0;
  std::optional<double> fdr;       // undefined without rejections
  std::optional<double> for_rate;  // undefined without acceptances
  double avg_n = 0.0;              // per arm, prevalence-weighted
  long long n_trials = 0;
  double prevalence = 0.5;         // Pr(H1) used to weight FDR and FOR
  DecisionTally tally;
};

/// Rates from the tally. FDR and FOR weight each hypothesis by its
/// prevalence, which equals the raw-count definition when both hypotheses
/// ran the same number of trials and prevalence is 1/2.
OperatingCharacteristics operating_characteristics(const DecisionTally& tally, double prevalence = 0.5);

struct CombinedMetrics {
  double cer = 0.0;
  std::optional<double> cfr;
};

/// CER = type I + k type II; CFR = k FDR + FOR.
CombinedMetrics combined_metrics(const OperatingCharacteristics& oc, double k);

/// How a fixed-n trial turns its data into a decision.
enum class DecisionRule {
  Posterior,  // reject when Pr(H1 | data) >= c
  ZTest,      // reject when 1 - Phi(z) <= alpha
};
std::string to_string(DecisionRule rule);

struct ErrorRateStudy {
  ModelSpec model;
  HypothesisSpec hyp;
  int n = 1;
  double c = 0.8;
  TruthPair null_truth{0.3, 0.25};
  TruthPair alt_truth{0.4, 0.25};
  long long trials = 10000;  // per hypothesis
  RngSeed seed;
  DecisionRule rule = DecisionRule::Posterior;
  double alpha = 0.05;  // z-test level
  PosteriorOptions posterior{{1e-10, 400}, DegeneratePolicy::Regularize};
};

/// Two-arm binary fixed-n trials under the null and alternative truths.
OperatingCharacteristics error_rate_study(const ErrorRateStudy& study);

struct MatchedComparison {
  ModelSpec model;
  HypothesisSpec hyp;
  double e = 0.1;
  double c = 0.8;
  TruthPair null_truth{0.3, 0.25};
  TruthPair alt_truth{0.4, 0.25};
  // Rates assumed by the frequentist sample size; the alternative truth
  // when absent (the oracle).
  std::optional<TruthPair> planned;
  long long trials = 10000;
  RngSeed seed;
  int rate_digits = 2;  // simulated alpha and beta are rounded before use
  DecisionRule sse_rule = DecisionRule::ZTest;
  SearchOptions search{{}, {{1e-10, 400}, DegeneratePolicy::Regularize}};
};

struct MatchedComparisonResult {
  SampleSizeResult bess;
  OperatingCharacteristics bess_oc;
  double alpha = 0.0;  // rounded simulated type I error at the BESS n
  double beta = 0.0;   // rounded simulated type II error at the BESS n
  int n_sse = 0;
  OperatingCharacteristics sse_oc;
};

/// BESS n, then its simulated error rates, then the frequentist n at those
/// rates, then the operating characteristics of the frequentist design.
MatchedComparisonResult matched_sse_comparison(const MatchedComparison& cfg);

struct PriorSensitivity {
  int n0 = 10;
  double e = 0.15;
  double c = 0.8;
  HypothesisSpec hyp{.theta_star = 0.05};
  TruthPair history_truth{0.4, 0.25};
  long long trials = 1000;
  RngSeed seed;
  double degenerate_floor = 0.5;  // replaces a zero prior parameter
  SearchOptions search{{}, {{1e-10, 400}, DegeneratePolicy::Regularize}};
};

struct PriorSensitivityResult {
  double mean_n = 0.0;
  double sd_n = 0.0;
  long long trials = 0;
  long long distinct_priors = 0;
  std::vector<int> sample_sizes;
};

/// Algorithm 2 sample sizes under priors built from simulated histories.
PriorSensitivityResult prior_sensitivity_study(const PriorSensitivity& cfg);

// Interim designs. Arm 1 is the lower dose L and arm 0 the higher dose H,
// so theta = theta_L - theta_H and a non-inferiority margin m enters as
// theta_star = -m.

enum class ScenarioKind { FixedPair, Random };
std::string to_string(ScenarioKind kind);

struct TruthScenario {
  ScenarioKind kind = ScenarioKind::FixedPair;
  TruthPair null_truth{0.265, 0.335};  // fixed kind
  TruthPair alt_truth{0.335, 0.335};
  double margin = 0.07;      // random kind: theta_H ~ U(margin, upper)
  double upper = 0.6;
  double ceiling = 0.28;     // random kind, H1: theta_L ~ U(theta_H - margin, ceiling)
  double q = 0.5;            // Pr(H1)
};

/// One draw of (theta_L, theta_H) given the hypothesis.
TruthPair draw_truth(const TruthScenario& scenario, bool alternative, RngStream& rng);

enum class DesignKind { BessSsr, BessSsrCap, StandardSse, StandardSseInterim };
std::string to_string(DesignKind kind);
DesignKind parse_design(const std::string& text);

struct DesignSpec {
  DesignKind kind = DesignKind::BessSsr;
  int n_total = 100;      // planned per arm; interim at floor(n_total / 2)
  double c = 0.7;         // success threshold; 1 disables interim success stops
  double c_star = 0.3;    // futility threshold; 0 disables interim futility stops
  double alpha = 0.3;     // z-test level
  double e = -0.02;       // planning evidence
  ModelSpec model{.family = OutcomeFamily::Binary, .arms = Arms::Two, .prior = {0.05, 0.05, 0.05, 0.05}};
  HypothesisSpec hyp{.theta_star = -0.07};
  int ssr_n_max = 1000;   // uncapped re-estimation stops here
  SearchOptions ssr_search{{10000, 300, 0.01, 10, -1e-12}, {{1e-10, 400}, DegeneratePolicy::Regularize}};
};

enum class InterimDecision { StopSuccess, StopFutility, Continue };
std::string to_string(InterimDecision decision);

struct SsrOutcome {
  double interim_confidence = 0.0;
  InterimDecision decision = InterimDecision::Continue;
  double e_int = 0.0;          // posterior-mean difference at the interim
  std::optional<int> n_star;   // additional patients per arm, uncapped
  std::optional<int> n_star_capped;
  std::optional<double> planned_confidence;  // at n_star, under the interim prior
  std::string note;            // set when the search had no guarantee or hit n_max
};

struct SsrRequest {
  ModelSpec model{.family = OutcomeFamily::Binary, .arms = Arms::Two, .prior = {0.05, 0.05, 0.05, 0.05}};
  HypothesisSpec hyp{.theta_star = -0.07};
  TrialData interim;      // per-arm interim summaries
  int n_total = 100;      // planned per arm
  double c = 0.7;
  double c_star = 0.3;
  bool cap = true;        // also report n_star capped at n_total - interim.n
  int n_max = 1000;
  SearchOptions search{{10000, 300, 0.01, 10, -1e-12}, {{1e-10, 400}, DegeneratePolicy::Regularize}};
};

/// Interim look and BESS re-estimation with the interim posterior as prior.
SsrOutcome sample_size_reestimation(const SsrRequest& req);

struct DesignRun {
  DesignSpec design;
  OperatingCharacteristics oc;
  long long early_success = 0;
  long long early_futility = 0;
  long long flagged = 0;  // re-estimations without a guarantee or at n_max
  int max_n = 0;          // largest per-arm n used by any trial
};

/// Runs each design on the same simulated trials: trials per hypothesis,
/// seeded per trial. Designs share the interim data and the re-estimations.
std::vector<DesignRun> run_designs(const std::vector<DesignSpec>& designs,
                                   const TruthScenario& scenario, long long trials, RngSeed seed);
DesignRun run_design(const DesignSpec& design, const TruthScenario& scenario, long long trials,
                     RngSeed seed);

}  // namespace bess
