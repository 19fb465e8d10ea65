#include "bess/model.hpp"

#include <cmath>
#include <numeric>

#include "bess/error.hpp"

namespace bess {

std::string to_string(OutcomeFamily family) {
  switch (family) {
    case OutcomeFamily::Binary: return "binary";
    case OutcomeFamily::Continuous: return "continuous";
    case OutcomeFamily::Count: return "count";
  }
  return "binary";
}

std::string to_string(Arms arms) { return arms == Arms::One ? "one" : "two"; }

OutcomeFamily parse_family(const std::string& text) {
  if (text == "binary") return OutcomeFamily::Binary;
  if (text == "continuous") return OutcomeFamily::Continuous;
  if (text == "count") return OutcomeFamily::Count;
  fail(ErrorCode::Validation, "unknown outcome family '" + text + "'");
}

Arms parse_arms(const std::string& text) {
  if (text == "one" || text == "1") return Arms::One;
  if (text == "two" || text == "2") return Arms::Two;
  fail(ErrorCode::Validation, "unknown arm layout '" + text + "'");
}

bool ModelSpec::is_improper() const {
  if (family != OutcomeFamily::Binary) return false;
  const bool treatment = prior.a1 == 0.0 || prior.b1 == 0.0;
  const bool control = arms == Arms::Two && (prior.a0 == 0.0 || prior.b0 == 0.0);
  return treatment || control;
}

double evidence_effect(const EvidenceSpec& evidence) {
  if (const auto* s = std::get_if<ScalarEvidence>(&evidence)) return s->e;
  return std::get<PairEvidence>(evidence).effect();
}

namespace {

bool finite(double x) { return std::isfinite(x); }

bool uses_control_prior(const ModelSpec& model) {
  return model.arms == Arms::Two && model.family != OutcomeFamily::Continuous;
}

void validate_arm_prior(OutcomeFamily family, double a, double b, const char* arm) {
  const std::string where = std::string(" (") + arm + " arm)";
  require(finite(a) && finite(b), ErrorCode::Validation, "prior hyperparameters must be finite" + where);
  switch (family) {
    case OutcomeFamily::Binary:
      require(a >= 0.0 && b >= 0.0, ErrorCode::Validation,
              "Beta prior parameters must be non-negative" + where);
      break;
    case OutcomeFamily::Continuous:
      require(b > 0.0, ErrorCode::Validation, "Normal prior variance must be positive" + where);
      break;
    case OutcomeFamily::Count:
      require(a > 0.0 && b > 0.0, ErrorCode::Validation,
              "Gamma prior shape and rate must be positive" + where);
      break;
  }
}

void validate_mean(OutcomeFamily family, double mean, const char* what) {
  require(finite(mean), ErrorCode::Validation, std::string(what) + " must be finite");
  if (family == OutcomeFamily::Binary) {
    require(mean >= 0.0 && mean <= 1.0, ErrorCode::Validation,
            std::string(what) + " must lie in [0, 1] for binary outcomes");
  } else if (family == OutcomeFamily::Count) {
    require(mean >= 0.0, ErrorCode::Validation,
            std::string(what) + " must be non-negative for count outcomes");
  }
}

}  // namespace

void validate(const ModelSpec& model) {
  validate_arm_prior(model.family, model.prior.a1, model.prior.b1, "treatment");
  if (uses_control_prior(model)) validate_arm_prior(model.family, model.prior.a0, model.prior.b0, "control");
  if (model.family == OutcomeFamily::Continuous) {
    require(model.sigma.has_value() && finite(*model.sigma) && *model.sigma > 0.0,
            ErrorCode::Validation, "continuous models need a known sigma > 0");
  }
  require(finite(model.improper_epsilon) && model.improper_epsilon > 0.0, ErrorCode::Validation,
          "improper_epsilon must be positive");
}

void validate(const ModelSpec& model, const HypothesisSpec& hyp) {
  validate(model);
  require(finite(hyp.theta_star), ErrorCode::Validation, "theta_star must be finite");
  require(finite(hyp.q) && hyp.q >= 0.0 && hyp.q <= 1.0, ErrorCode::Validation,
          "q must lie in [0, 1]");
  if (model.arms == Arms::One) {
    require(hyp.theta0_ref.has_value() && finite(*hyp.theta0_ref), ErrorCode::Validation,
            "one-arm trials need a known reference theta0_ref");
    validate_mean(model.family, *hyp.theta0_ref, "theta0_ref");
  }
}

void validate(const ModelSpec& model, const HypothesisSpec& hyp, const EvidenceSpec& evidence) {
  validate(model, hyp);
  if (const auto* s = std::get_if<ScalarEvidence>(&evidence)) {
    require(finite(s->e), ErrorCode::Validation, "evidence must be finite");
    if (model.arms == Arms::One) {
      validate_mean(model.family, s->e + *hyp.theta0_ref, "implied mean e + theta0_ref");
    } else if (model.family == OutcomeFamily::Binary) {
      require(s->e >= -1.0 && s->e <= 1.0, ErrorCode::Validation,
              "two-arm binary evidence must lie in [-1, 1]");
    }
    return;
  }
  const auto& p = std::get<PairEvidence>(evidence);
  require(model.arms == Arms::Two, ErrorCode::Validation,
          "pair evidence (ybar1, ybar0) needs a two-arm model");
  validate_mean(model.family, p.ybar1, "ybar1");
  validate_mean(model.family, p.ybar0, "ybar0");
}

PriorSpec informative_prior_from_history(const ModelSpec& model, const HistoricalData& hist) {
  require(model.family == OutcomeFamily::Binary, ErrorCode::UnsupportedFamily,
          "historical priors are defined for binary outcomes only");
  require(hist.n0 >= 0, ErrorCode::Validation, "n0 must be non-negative");
  const auto check = [&](double s) {
    require(s >= 0.0 && s <= hist.n0, ErrorCode::Validation,
            "historical responders must lie in [0, n0]");
  };
  PriorSpec out = model.prior;
  check(hist.sum_y1);
  out.a1 += hist.sum_y1;
  out.b1 += hist.n0 - hist.sum_y1;
  if (model.arms == Arms::Two) {
    check(hist.sum_y0);
    out.a0 += hist.sum_y0;
    out.b0 += hist.n0 - hist.sum_y0;
  }
  return out;
}

long long evidence_steps(double e, int n) {
  const double scaled = static_cast<double>(n) * e;
  const double nearest = std::round(scaled);
  // n * e that is an integer up to representation error counts as that integer.
  if (std::abs(scaled - nearest) <= 1e-9 * std::max(1.0, std::abs(scaled))) {
    return static_cast<long long>(nearest);
  }
  return static_cast<long long>(std::floor(scaled));
}

double round_evidence_down(double e, int n) {
  require(n >= 1, ErrorCode::Validation, "n must be positive");
  return static_cast<double>(evidence_steps(e, n)) / n;
}

ReducedData reduce_raw_data(const ModelSpec& model, const HypothesisSpec& hyp,
                            std::span<const double> treatment, std::span<const double> control) {
  require(!treatment.empty(), ErrorCode::Validation, "raw data must not be empty");
  const auto mean = [](std::span<const double> y) {
    return std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  };
  const int n = static_cast<int>(treatment.size());
  if (model.arms == Arms::One) {
    require(hyp.theta0_ref.has_value(), ErrorCode::Validation, "one-arm data needs theta0_ref");
    return {ScalarEvidence{mean(treatment) - *hyp.theta0_ref}, n};
  }
  require(control.size() == treatment.size(), ErrorCode::Validation,
          "two-arm raw data needs equal arm sizes (1:1 allocation)");
  if (model.family == OutcomeFamily::Continuous) {
    return {ScalarEvidence{mean(treatment) - mean(control)}, n};
  }
  return {PairEvidence{mean(treatment), mean(control)}, n};
}

}  // namespace bess
