#include "bess/nmin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "bess/error.hpp"

namespace bess {

std::string to_string(NminMethod method) {
  return method == NminMethod::ClosedForm ? "closed_form" : "search";
}

namespace {

void require_above_threshold(double effect, double theta_star) {
  require(effect > theta_star, ErrorCode::EvidenceBelowThetaStar,
          "evidence must exceed theta_star; no sample size guarantees confidence otherwise");
}

bool closed_form_family(const ModelSpec& model) {
  return model.arms == Arms::One || model.family == OutcomeFamily::Continuous;
}

}  // namespace

NminResult nmin_search(PosteriorCache& cache, const EvidenceSpec& data, const NminOptions& opts) {
  require_above_threshold(evidence_effect(data), cache.hypothesis().theta_star);
  require(opts.n_max >= 1, ErrorCode::Validation, "n_max must be positive");
  const auto step = [&](int n) { return cache.xi(data, n + 1).upper - cache.xi(data, n).upper; };
  if (step(opts.n_max) < opts.tolerance) {
    fail(ErrorCode::NmaxExceeded, "xi still decreases at n_max; increase n_max");
  }
  int n = 1;
  while (n < opts.n_max && step(n) < opts.tolerance) ++n;

  const int span = closed_form_family(cache.model()) ? opts.n_max : opts.verify_span;
  const int limit = std::min(opts.n_max, n + std::max(span, 0));
  for (int m = n + 1; m < limit; ++m) {
    if (step(m) < opts.tolerance) n = m + 1;
  }
  return {n, NminMethod::Search, opts.n_max, std::max(limit, n)};
}

NminResult nmin_search(const ModelSpec& model, const HypothesisSpec& hyp, const EvidenceSpec& data,
                       const NminOptions& opts, const PosteriorOptions& post) {
  validate(model, hyp, data);
  PosteriorCache cache(model, hyp, post);
  return nmin_search(cache, data, opts);
}

NminResult nmin_normal_closed_form(const HypothesisSpec& hyp, const PriorSpec& prior, double sigma,
                                   double e, Arms arms) {
  require(sigma > 0.0 && prior.b1 > 0.0, ErrorCode::Validation,
          "sigma and prior variance must be positive");
  require_above_threshold(e, hyp.theta_star);
  const double s2 = (arms == Arms::Two ? 2.0 : 1.0) * sigma * sigma;
  const double gap = e - hyp.theta_star;
  const double raw = std::floor((prior.a1 - gap) * s2 / (gap * prior.b1));
  // Beyond this point the confidence is increasing in n for any sign of e.
  const double turn = std::ceil((prior.a1 - 2.0 * e + hyp.theta_star) * s2 / (gap * prior.b1));
  const double bound = std::max(raw, turn);
  const int n_min = bound < 1.0 ? 1 : static_cast<int>(std::min(bound, 2e9));
  return {n_min, NminMethod::ClosedForm, 0, 0};
}

NminResult nmin_pairs_search(PosteriorCache& cache, double e, const NminOptions& opts) {
  const ModelSpec& model = cache.model();
  require(model.family == OutcomeFamily::Binary && model.arms == Arms::Two,
          ErrorCode::UnsupportedFamily, "the pairs search needs a two-arm binary model");
  require(std::abs(e) <= 1.0, ErrorCode::NoAttainablePair, "evidence must lie in [-1, 1]");
  require_above_threshold(e, cache.hypothesis().theta_star);
  require(opts.grid_step > 0.0, ErrorCode::Validation, "grid_step must be positive");

  const double lo = std::max(0.0, -e);
  const double hi = std::min(1.0, 1.0 - e);
  const auto pair_at = [&](double y0) {
    return PairEvidence{std::clamp(y0 + e, 0.0, 1.0), y0};
  };

  std::map<std::pair<double, double>, int> pair_nmin;
  int result = 1;
  const int scan = std::min(opts.pairs_scan_max, opts.n_max);
  for (int n = 1; n <= scan; ++n) {
    std::vector<double> grid;
    for (int k = 0;; ++k) {
      const double y0 = k * opts.grid_step;
      if (y0 > hi + 1e-12) break;
      if (y0 >= lo - 1e-12) grid.push_back(std::clamp(y0, lo, hi));
    }
    for (int k = 0; k <= n; ++k) {
      const double y0 = static_cast<double>(k) / n;
      if (y0 >= lo - 1e-12 && y0 <= hi + 1e-12) grid.push_back(std::clamp(y0, lo, hi));
    }
    std::sort(grid.begin(), grid.end());
    double best = 2.0;
    double best_y0 = lo;
    for (double y0 : grid) {
      const double c = cache.confidence(pair_at(y0), n);
      if (c < best) {
        best = c;
        best_y0 = y0;
      }
    }
    const PairEvidence p = pair_at(best_y0);
    const auto key = std::make_pair(p.ybar1, p.ybar0);
    auto it = pair_nmin.find(key);
    if (it == pair_nmin.end()) {
      NminOptions inner = opts;
      inner.verify_span = 0;
      it = pair_nmin.emplace(key, nmin_search(cache, p, inner).n_min).first;
    }
    if (it->second <= n) result = std::max(result, it->second);
  }
  return {result, NminMethod::Search, opts.n_max, scan};
}

NminResult nmin_pairs_search(const ModelSpec& model, const HypothesisSpec& hyp, double e,
                             const NminOptions& opts, const PosteriorOptions& post) {
  validate(model, hyp);
  PosteriorCache cache(model, hyp, post);
  return nmin_pairs_search(cache, e, opts);
}

}  // namespace bess
