#include "bess/search.hpp"

#include <algorithm>
#include <cmath>

#include "bess/error.hpp"

namespace bess {

std::string to_string(SearchAlgorithm algorithm) {
  switch (algorithm) {
    case SearchAlgorithm::Algorithm1: return "algorithm_1";
    case SearchAlgorithm::Algorithm2: return "algorithm_2";
    case SearchAlgorithm::Algorithm2Prime: return "algorithm_2_prime";
  }
  return "algorithm_1";
}

namespace {

void validate_request(const SampleSizeRequest& req) {
  validate(req.model, req.hyp, req.evidence);
  require(std::isfinite(req.c) && req.c > 0.0 && req.c < 1.0, ErrorCode::Validation,
          "target confidence c must lie strictly inside (0, 1)");
  require(req.n_max >= 1, ErrorCode::Validation, "n_max must be positive");
}

bool discrete(const ModelSpec& model) { return model.family != OutcomeFamily::Continuous; }

double floor_mean(double ybar, int n) { return round_evidence_down(ybar, n); }

[[noreturn]] void exceeded(int n_max) {
  fail(ErrorCode::NmaxExceeded, "sample size is larger than n_max = " + std::to_string(n_max));
}

NminOptions nmin_options(const SampleSizeRequest& req, const SearchOptions& opts) {
  NminOptions out = opts.nmin;
  out.n_max = req.n_max;
  return out;
}

// True when every attainable pair at n reaches c. Pairs are tried outward
// from the hint, where the previous n failed, so a failing n usually costs
// one evaluation.
bool all_pairs_reach(PosteriorCache& cache, double e, int n, double c, double& hint_y0) {
  const long long steps = evidence_steps(e, n);
  const long long first = std::max(0LL, -steps);
  const long long last = std::min<long long>(n, n - steps);
  require(first <= last, ErrorCode::NoAttainablePair, "no attainable pair for this evidence");
  const long long start = std::clamp(std::llround(hint_y0 * n), first, last);
  for (long long offset = 0; start - offset >= first || start + offset <= last; ++offset) {
    for (long long k : {start - offset, start + offset}) {
      if (k < first || k > last || (offset == 0 && k != start)) continue;
      const PairEvidence pair{static_cast<double>(k + steps) / n, static_cast<double>(k) / n};
      if (cache.confidence(pair, n) < c) {
        hint_y0 = pair.ybar0;
        return false;
      }
    }
  }
  return true;
}

}  // namespace

EvidenceSpec attainable_evidence(const ModelSpec& model, const HypothesisSpec& hyp,
                                 const EvidenceSpec& evidence, int n) {
  if (!discrete(model)) return evidence;
  if (const auto* p = std::get_if<PairEvidence>(&evidence)) {
    return PairEvidence{floor_mean(p->ybar1, n), floor_mean(p->ybar0, n)};
  }
  const double e = std::get<ScalarEvidence>(evidence).e;
  if (model.arms == Arms::One) {
    const double theta0 = *hyp.theta0_ref;
    return ScalarEvidence{floor_mean(e + theta0, n) - theta0};
  }
  return ScalarEvidence{round_evidence_down(e, n)};
}

PairMinimum min_pair_confidence(PosteriorCache& cache, double e, int n) {
  require(std::abs(e) <= 1.0, ErrorCode::NoAttainablePair, "evidence must lie in [-1, 1]");
  const long long steps = evidence_steps(e, n);
  const long long first = std::max(0LL, -steps);
  const long long last = std::min<long long>(n, n - steps);
  require(first <= last, ErrorCode::NoAttainablePair, "no attainable pair for this evidence");
  PairMinimum best{2.0, {}, static_cast<double>(steps) / n};
  for (long long k = first; k <= last; ++k) {
    const PairEvidence pair{static_cast<double>(k + steps) / n, static_cast<double>(k) / n};
    const double c = cache.confidence(pair, n);
    if (c < best.confidence) {
      best.confidence = c;
      best.pair = pair;
    }
  }
  return best;
}

SampleSizeResult bess_algorithm_1(const SampleSizeRequest& req, const SearchOptions& opts) {
  validate_request(req);
  const ModelSpec& model = req.model;
  require(model.arms == Arms::One || model.family == OutcomeFamily::Continuous,
          ErrorCode::UnsupportedFamily,
          "Algorithm 1 covers one-arm models and two-arm continuous models");
  const EvidenceSpec evidence = ScalarEvidence{evidence_effect(req.evidence)};
  PosteriorCache cache(model, req.hyp, opts.posterior);
  const NminResult nmin = nmin_search(cache, evidence, nmin_options(req, opts));

  SampleSizeResult out;
  out.algorithm = SearchAlgorithm::Algorithm1;
  out.n_min = nmin.n_min;
  out.n_max = req.n_max;
  for (int n = nmin.n_min; n <= req.n_max; ++n) {
    const EvidenceSpec at_n = attainable_evidence(model, req.hyp, evidence, n);
    const double c = cache.confidence(at_n, n);
    if (c >= req.c) {
      out.n = n;
      out.achieved_confidence = c;
      out.effective_evidence = at_n;
      return out;
    }
  }
  exceeded(req.n_max);
}

SampleSizeResult bess_algorithm_2(const SampleSizeRequest& req, const SearchOptions& opts) {
  validate_request(req);
  require(req.model.family == OutcomeFamily::Binary && req.model.arms == Arms::Two,
          ErrorCode::UnsupportedFamily, "Algorithm 2 covers two-arm binary models");
  const auto* scalar = std::get_if<ScalarEvidence>(&req.evidence);
  require(scalar != nullptr, ErrorCode::Validation,
          "Algorithm 2 takes scalar evidence e; use Algorithm 2' for a (ybar1, ybar0) pair");
  const double e = scalar->e;
  require(std::abs(e) <= 1.0, ErrorCode::NoAttainablePair, "evidence must lie in [-1, 1]");
  PosteriorCache cache(req.model, req.hyp, opts.posterior);
  const NminResult nmin = nmin_pairs_search(cache, e, nmin_options(req, opts));

  SampleSizeResult out;
  out.algorithm = SearchAlgorithm::Algorithm2;
  out.n_min = nmin.n_min;
  out.n_max = req.n_max;
  double hint_y0 = 0.5;
  for (int n = nmin.n_min; n <= req.n_max; ++n) {
    if (!all_pairs_reach(cache, e, n, req.c, hint_y0)) continue;
    const PairMinimum m = min_pair_confidence(cache, e, n);
    out.n = n;
    out.achieved_confidence = m.confidence;
    out.effective_evidence = ScalarEvidence{m.effective_e};
    out.minimizing_pair = m.pair;
    return out;
  }
  exceeded(req.n_max);
}

SampleSizeResult bess_algorithm_2_prime(const SampleSizeRequest& req, const SearchOptions& opts) {
  validate_request(req);
  require(req.model.arms == Arms::Two && req.model.family != OutcomeFamily::Continuous,
          ErrorCode::UnsupportedFamily, "Algorithm 2' covers two-arm binary and count models");
  require(std::holds_alternative<PairEvidence>(req.evidence), ErrorCode::Validation,
          "Algorithm 2' takes pair evidence (ybar1, ybar0)");
  PosteriorCache cache(req.model, req.hyp, opts.posterior);
  const NminResult nmin = nmin_search(cache, req.evidence, nmin_options(req, opts));
  const bool binary = req.model.family == OutcomeFamily::Binary;

  SampleSizeResult out;
  out.algorithm = SearchAlgorithm::Algorithm2Prime;
  out.n_min = nmin.n_min;
  out.n_max = req.n_max;
  for (int n = nmin.n_min; n <= req.n_max; ++n) {
    const EvidenceSpec at_n =
        binary ? attainable_evidence(req.model, req.hyp, req.evidence, n) : req.evidence;
    const double c = cache.confidence(at_n, n);
    if (c >= req.c) {
      out.n = n;
      out.achieved_confidence = c;
      out.effective_evidence = at_n;
      return out;
    }
  }
  exceeded(req.n_max);
}

SampleSizeResult sample_size(const SampleSizeRequest& req, const SearchOptions& opts) {
  const ModelSpec& model = req.model;
  if (model.arms == Arms::One || model.family == OutcomeFamily::Continuous) {
    return bess_algorithm_1(req, opts);
  }
  if (std::holds_alternative<PairEvidence>(req.evidence)) return bess_algorithm_2_prime(req, opts);
  require(model.family == OutcomeFamily::Binary, ErrorCode::Validation,
          "two-arm count evidence needs the control mean: supply (ybar1, ybar0) for Algorithm 2'");
  return bess_algorithm_2(req, opts);
}

std::vector<EvidenceConfidenceRow> evidence_confidence_table(
    const ModelSpec& model, const HypothesisSpec& hyp, int n, const std::vector<double>& evidence_grid,
    std::optional<double> control_mean, const PosteriorOptions& opts) {
  validate(model, hyp);
  require(n >= 1, ErrorCode::Validation, "n must be positive");
  PosteriorCache cache(model, hyp, opts);
  std::vector<EvidenceConfidenceRow> rows;
  rows.reserve(evidence_grid.size());
  const bool two_discrete = model.arms == Arms::Two && discrete(model);
  for (double e : evidence_grid) {
    EvidenceConfidenceRow row;
    row.e = e;
    if (two_discrete && model.family == OutcomeFamily::Binary && !control_mean) {
      const PairMinimum m = min_pair_confidence(cache, e, n);
      row.effective_e = m.effective_e;
      row.confidence = m.confidence;
      row.minimizing_pair = m.pair;
    } else if (two_discrete) {
      require(control_mean.has_value(), ErrorCode::Validation,
              "two-arm count tables need the control mean ybar0");
      EvidenceSpec ev = PairEvidence{*control_mean + e, *control_mean};
      if (model.family == OutcomeFamily::Binary) ev = attainable_evidence(model, hyp, ev, n);
      row.effective_e = evidence_effect(ev);
      row.confidence = cache.confidence(ev, n);
    } else {
      const EvidenceSpec ev = attainable_evidence(model, hyp, ScalarEvidence{e}, n);
      row.effective_e = evidence_effect(ev);
      row.confidence = cache.confidence(ev, n);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bess
