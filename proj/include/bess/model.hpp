#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>

namespace bess {

enum class OutcomeFamily { Binary, Continuous, Count };
enum class Arms { One, Two };

std::string to_string(OutcomeFamily family);
std::string to_string(Arms arms);
OutcomeFamily parse_family(const std::string& text);
Arms parse_arms(const std::string& text);

/// Family-matched conjugate hyperparameters. (a1, b1) is the treatment arm
/// (or the single arm, or the prior on the effect for continuous models);
/// (a0, b0) is the control arm of two-arm binary/count models.
///   Binary:     Beta(a, b), a, b >= 0 (zero means the improper limit)
///   Continuous: Normal(mean = a, variance = b), b > 0
///   Count:      Gamma(shape = a, rate = b), a, b > 0
struct PriorSpec {
  double a1 = 0.5;
  double b1 = 0.5;
  double a0 = 0.5;
  double b0 = 0.5;

  bool operator==(const PriorSpec&) const = default;
};

struct ModelSpec {
  OutcomeFamily family = OutcomeFamily::Binary;
  Arms arms = Arms::Two;
  PriorSpec prior;
  std::optional<double> sigma;      // known per-observation SD, continuous only
  double improper_epsilon = 1e-4;   // stand-in for zero Beta parameters in prior masses

  bool is_improper() const;
  bool operator==(const ModelSpec&) const = default;
};

/// H0: theta <= theta_star vs H1: theta > theta_star, theta = theta1 - theta0.
struct HypothesisSpec {
  double theta_star = 0.0;
  double q = 0.5;
  std::optional<double> theta0_ref;  // known reference rate, one-arm only

  bool operator==(const HypothesisSpec&) const = default;
};

struct ScalarEvidence {
  double e = 0.0;
  bool operator==(const ScalarEvidence&) const = default;
};

struct PairEvidence {
  double ybar1 = 0.0;
  double ybar0 = 0.0;
  double effect() const { return ybar1 - ybar0; }
  bool operator==(const PairEvidence&) const = default;
};

using EvidenceSpec = std::variant<ScalarEvidence, PairEvidence>;

struct TrialLayout {
  Arms arms = Arms::Two;
  int n = 1;
};

struct HistoricalData {
  int n0 = 0;
  double sum_y1 = 0.0;  // treatment (or single) arm responders
  double sum_y0 = 0.0;  // control arm responders, two-arm only
};

/// Scalar effect carried by any evidence: e, or ybar1 - ybar0.
double evidence_effect(const EvidenceSpec& evidence);

/// The family-support check every evidence value passes before use.
void validate(const ModelSpec& model);
void validate(const ModelSpec& model, const HypothesisSpec& hyp);
void validate(const ModelSpec& model, const HypothesisSpec& hyp, const EvidenceSpec& evidence);

/// Beta(a* + sum y, b* + n0 - sum y) per arm; binary models only.
PriorSpec informative_prior_from_history(const ModelSpec& model, const HistoricalData& hist);

/// floor(n * e) / n: the largest evidence attainable with n discrete outcomes.
double round_evidence_down(double e, int n);

/// floor(n * e), guarded against representation error in n * e.
long long evidence_steps(double e, int n);

/// Reduces raw per-patient outcomes to the sufficient evidence. One-arm and
/// two-arm continuous data reduce to a scalar; two-arm binary/count to a pair.
/// Two-arm data must have equal arm sizes. Returns the evidence and n.
struct ReducedData {
  EvidenceSpec evidence;
  int n = 0;
};
ReducedData reduce_raw_data(const ModelSpec& model, const HypothesisSpec& hyp,
                            std::span<const double> treatment,
                            std::span<const double> control = {});

}  // namespace bess
