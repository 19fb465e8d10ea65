#include "bess/posterior.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "bess/error.hpp"

namespace bess {

std::string to_string(PosteriorMethod method) {
  switch (method) {
    case PosteriorMethod::ClosedForm: return "closed_form";
    case PosteriorMethod::Quadrature: return "quadrature";
    case PosteriorMethod::MonteCarlo: return "monte_carlo";
  }
  return "closed_form";
}

namespace {

struct Shape {
  double a;
  double b;  // Beta: second shape; Gamma: rate
};

// Breakpoint offsets, in standard deviations, placed around each density bulk.
constexpr std::array<double, 7> kSpread = {-8.0, -4.0, -1.5, 0.0, 1.5, 4.0, 8.0};

std::vector<double> clipped_sorted(std::vector<double> points, double lo, double hi) {
  std::vector<double> out{lo};
  std::sort(points.begin(), points.end());
  for (double p : points) {
    if (p > lo && p < hi && p > out.back()) out.push_back(p);
  }
  out.push_back(hi);
  return out;
}

void add_bulk(std::vector<double>& points, double mean, double sd, double shift = 0.0) {
  for (double k : kSpread) points.push_back(mean + shift + k * sd);
}

void check(const QuadratureResult& r, const char* what) {
  require(r.converged, ErrorCode::QuadratureConvergence,
          std::string("quadrature did not converge: ") + what);
}

// Integral of a singular end piece in y = log(distance to the endpoint), so
// features of g at any scale stay resolvable. density(y) already carries the
// Jacobian. Below y_floor the rest of the mass closes with g at the two edges.
template <class Density, class Edge, class TailMass>
double log_scale_piece(const Density& density, const Edge& g_at, const TailMass& mass_below,
                       double g_limit, double y_top, const QuadratureConfig& cfg, const char* what) {
  constexpr double kFloor = -700.0;
  const double budget = 0.25 * cfg.abs_tolerance;
  double y_floor = y_top;
  double rest = 0.0;
  do {
    y_floor = std::max(y_floor - 8.0, kFloor);
    rest = mass_below(y_floor);
  } while (y_floor > kFloor && rest * std::abs(g_at(y_floor) - g_limit) > budget);
  QuadratureConfig inner = cfg;
  inner.abs_tolerance = cfg.abs_tolerance - budget;
  const QuadratureResult r =
      integrate_1d([&](double y) { return g_at(y) * density(y); }, y_floor, y_top, inner);
  check(r, what);
  return r.value + rest * 0.5 * (g_at(y_floor) + g_limit);
}

// E[g(T, 1 - T)] over T ~ Beta(a, b) restricted to [lo, hi], for g monotone
// with values in [0, 1]. Singular end pieces are integrated on a log scale;
// 1 - T is passed exactly so g stays smooth where T rounds to 1.
double beta_expectation(const std::function<double(double, double)>& g, Shape s, double lo, double hi,
                        std::vector<double> extra, const QuadratureConfig& cfg) {
  if (hi <= lo) return 0.0;
  const double mean = s.a / (s.a + s.b);
  const double sd = std::sqrt(s.a * s.b / ((s.a + s.b) * (s.a + s.b) * (s.a + s.b + 1.0)));
  add_bulk(extra, mean, sd);
  std::vector<double> bp = clipped_sorted(std::move(extra), lo, hi);
  const double log_norm = log_beta_function(s.a, s.b);
  const std::size_t pieces = bp.size() - 1;
  QuadratureConfig piece_cfg = cfg;
  piece_cfg.abs_tolerance = cfg.abs_tolerance / static_cast<double>(pieces);
  double total = 0.0;
  for (std::size_t i = 0; i < pieces; ++i) {
    const double a = bp[i];
    const double b = bp[i + 1];
    // g is monotone, so a piece where it barely moves closes as mass * midpoint.
    const double ga = g(a, 1.0 - a);
    const double gb = g(b, 1.0 - b);
    const double mass = beta_cdf(b, s.a, s.b) - beta_cdf(a, s.a, s.b);
    if (mass * std::abs(gb - ga) <= piece_cfg.abs_tolerance) {
      total += mass * 0.5 * (ga + gb);
      continue;
    }
    if (i == 0 && a == 0.0 && s.a < 1.0) {
      total += log_scale_piece(
          [&](double y) {
            const double t = std::exp(y);
            return std::exp(s.a * y + (s.b - 1.0) * std::log1p(-t) - log_norm);
          },
          [&](double y) {
            const double t = std::exp(y);
            return g(t, -std::expm1(y));
          },
          [&](double y) { return beta_cdf(std::exp(y), s.a, s.b); }, g(0.0, 1.0), std::log(b),
          piece_cfg, "Beta posterior integral");
      continue;
    }
    if (i + 1 == pieces && b == 1.0 && s.b < 1.0) {
      total += log_scale_piece(
          [&](double y) {
            const double w = std::exp(y);
            return std::exp(s.b * y + (s.a - 1.0) * std::log1p(-w) - log_norm);
          },
          [&](double y) {
            const double w = std::exp(y);
            return g(-std::expm1(y), w);
          },
          [&](double y) { return beta_cdf(std::exp(y), s.b, s.a); }, g(1.0, 0.0), std::log1p(-a),
          piece_cfg, "Beta posterior integral");
      continue;
    }
    const QuadratureResult r =
        integrate_1d([&](double t) { return g(t, 1.0 - t) * beta_pdf(t, s.a, s.b); }, a, b, piece_cfg);
    check(r, "Beta posterior integral");
    total += r.value;
  }
  return total;
}

// E[g(T)] over T ~ Gamma(shape, rate) on [lo, inf), g monotone in [0, 1].
double gamma_expectation(const std::function<double(double)>& g, Shape s, double lo,
                         std::vector<double> extra, const QuadratureConfig& cfg) {
  const double mean = s.a / s.b;
  const double sd = std::sqrt(s.a) / s.b;
  add_bulk(extra, mean, sd);
  const double far = std::max(lo, mean + 40.0 * sd) + 1.0;
  std::vector<double> bp = clipped_sorted(std::move(extra), lo, far);
  const std::size_t pieces = bp.size();  // finite pieces plus the tail
  QuadratureConfig piece_cfg = cfg;
  piece_cfg.abs_tolerance = cfg.abs_tolerance / static_cast<double>(pieces);
  const double log_norm = std::lgamma(s.a) - s.a * std::log(s.b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double a = bp[i];
    const double b = bp[i + 1];
    const double ga = g(a);
    const double gb = g(b);
    const double mass = gamma_cdf(b, s.a, s.b) - gamma_cdf(a, s.a, s.b);
    if (mass * std::abs(gb - ga) <= piece_cfg.abs_tolerance) {
      total += mass * 0.5 * (ga + gb);
      continue;
    }
    if (i == 0 && a == 0.0 && s.a < 1.0) {
      total += log_scale_piece(
          [&](double y) { return std::exp(s.a * y - s.b * std::exp(y) - log_norm); },
          [&](double y) { return g(std::exp(y)); },
          [&](double y) { return gamma_cdf(std::exp(y), s.a, s.b); }, g(0.0), std::log(b), piece_cfg,
          "Gamma posterior integral");
      continue;
    }
    const QuadratureResult r =
        integrate_1d([&](double t) { return g(t) * gamma_pdf(t, s.a, s.b); }, a, b, piece_cfg);
    check(r, "Gamma posterior integral");
    total += r.value;
  }
  const double tail_mass = gamma_sf(far, s.a, s.b);
  if (tail_mass <= piece_cfg.abs_tolerance) return total + tail_mass * g(far);
  const QuadratureResult tail =
      integrate_to_infinity([&](double t) { return g(t) * gamma_pdf(t, s.a, s.b); }, far, piece_cfg);
  check(tail, "Gamma posterior tail");
  return total + tail.value;
}

using TailIntegral = std::function<double(const QuadratureConfig&)>;

// Integrates a small tail again with a tolerance scaled to its size. A
// failed refinement keeps the first estimate.
double refine_small(const TailIntegral& tail, double estimate, const QuadratureConfig& cfg) {
  constexpr double kRelative = 1e-8;
  constexpr double kFloor = 1e-30;
  QuadratureConfig fine = cfg;
  fine.abs_tolerance = std::max(estimate * kRelative, kFloor);
  if (fine.abs_tolerance >= cfg.abs_tolerance) return estimate;
  try {
    return tail(fine);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::QuadratureConvergence) throw;
    return estimate;
  }
}

// Both tails from their integrals. The smaller one is computed on its own
// once it drops below kSmall, so it never comes from 1 - (something near 1).
TailProbability split_tails(const TailIntegral& upper, const TailIntegral& lower,
                            const QuadratureConfig& cfg) {
  constexpr double kSmall = 1e-5;
  const double up = std::clamp(upper(cfg), 0.0, 1.0);
  if (1.0 - up < kSmall) {
    double low = std::clamp(lower(cfg), 0.0, 1.0);
    if (low < kSmall) low = std::clamp(refine_small(lower, low, cfg), 0.0, 1.0);
    return {1.0 - low, low};
  }
  if (up < kSmall) {
    const double fine = std::clamp(refine_small(upper, up, cfg), 0.0, 1.0);
    return {fine, 1.0 - fine};
  }
  return {up, 1.0 - up};
}

// Pr(X1 - X0 > d) for independent Beta variables.
TailProbability beta_difference_tail(Shape arm1, Shape arm0, double d, const QuadratureConfig& cfg) {
  if (d >= 1.0) return {0.0, 1.0};
  if (d < -1.0) return {1.0, 0.0};
  const double lo = std::max(0.0, d);
  const double hi = std::min(1.0, 1.0 + d);
  std::vector<double> extra{d, 1.0 + d};
  const double m0 = arm0.a / (arm0.a + arm0.b);
  const double sd0 = std::sqrt(arm0.a * arm0.b /
                               ((arm0.a + arm0.b) * (arm0.a + arm0.b) * (arm0.a + arm0.b + 1.0)));
  add_bulk(extra, m0, sd0, d);
  // Near 1 the reflected forms use 1 - x = w + d without cancellation.
  const auto clears = [&](double t, double w) {
    const double x = t - d;
    return x <= 0.5 ? beta_cdf(x, arm0.a, arm0.b) : beta_sf(w + d, arm0.b, arm0.a);
  };
  const auto misses = [&](double t, double w) {
    const double x = t - d;
    return x <= 0.5 ? beta_sf(x, arm0.a, arm0.b) : beta_cdf(w + d, arm0.b, arm0.a);
  };
  // For d < 0 every t above 1 + d clears the threshold outright; for d > 0
  // every t below d misses it.
  const double clear_head = d < 0.0 ? beta_sf(1.0 + d, arm1.a, arm1.b) : 0.0;
  const double miss_head = d > 0.0 ? beta_cdf(d, arm1.a, arm1.b) : 0.0;
  return split_tails(
      [&](const QuadratureConfig& c) { return beta_expectation(clears, arm1, lo, hi, extra, c) + clear_head; },
      [&](const QuadratureConfig& c) { return beta_expectation(misses, arm1, lo, hi, extra, c) + miss_head; },
      cfg);
}

// Pr(X1 - X0 > d) for independent Gamma variables, integrating over X0.
TailProbability gamma_difference_tail(Shape arm1, Shape arm0, double d, const QuadratureConfig& cfg) {
  std::vector<double> extra{-d};
  add_bulk(extra, arm1.a / arm1.b, std::sqrt(arm1.a) / arm1.b, -d);
  return split_tails(
      [&](const QuadratureConfig& c) {
        return gamma_expectation([&](double t) { return gamma_sf(t + d, arm1.a, arm1.b); }, arm0, 0.0, extra, c);
      },
      [&](const QuadratureConfig& c) {
        return gamma_expectation([&](double t) { return gamma_cdf(t + d, arm1.a, arm1.b); }, arm0, 0.0, extra, c);
      },
      cfg);
}

double threshold(const ModelSpec& model, const HypothesisSpec& hyp) {
  return model.arms == Arms::One ? hyp.theta_star + *hyp.theta0_ref : hyp.theta_star;
}

double effective_sigma2(const ModelSpec& model) {
  const double s2 = *model.sigma * *model.sigma;
  return model.arms == Arms::Two ? 2.0 * s2 : s2;
}

Shape regularized(double a, double b, double eps) {
  return {a == 0.0 ? eps : a, b == 0.0 ? eps : b};
}

// Conjugate Beta update of one arm: (a + n*ybar, b + n*(1 - ybar)).
Shape beta_update(double a, double b, double ybar, int n, const ModelSpec& model,
                  const PosteriorOptions& opts, std::vector<std::string>* notes) {
  Shape s{a + n * ybar, b + n * (1.0 - ybar)};
  if (s.a > 0.0 && s.b > 0.0) return s;
  if (opts.degenerate == DegeneratePolicy::Error) {
    fail(ErrorCode::DegeneratePosterior,
         "improper Beta(0, 0) prior with all-success or all-failure data leaves an improper posterior");
  }
  if (notes) notes->push_back("degenerate posterior regularized with epsilon");
  return regularized(s.a, s.b, model.improper_epsilon);
}

PairEvidence pair_of(const EvidenceSpec& data, const char* family) {
  const auto* p = std::get_if<PairEvidence>(&data);
  require(p != nullptr, ErrorCode::Validation,
          std::string("two-arm ") + family + " models need pair evidence (ybar1, ybar0)");
  return *p;
}

double scalar_of(const EvidenceSpec& data) {
  const auto* s = std::get_if<ScalarEvidence>(&data);
  return s ? s->e : std::get<PairEvidence>(data).effect();
}

TailProbability tails_impl(const ModelSpec& model, const HypothesisSpec& hyp,
                           const EvidenceSpec& data, int n, const PosteriorOptions& opts,
                           std::vector<std::string>* notes) {
  const double th = threshold(model, hyp);
  const auto& pr = model.prior;
  switch (model.family) {
    case OutcomeFamily::Continuous: {
      const double e = scalar_of(data) + (model.arms == Arms::One ? *hyp.theta0_ref : 0.0);
      const double s2 = effective_sigma2(model);
      const double precision = 1.0 / pr.b1 + n / s2;
      const double mean = (pr.a1 / pr.b1 + n * e / s2) / precision;
      const double z = (mean - th) * std::sqrt(precision);
      return {std_normal_cdf(z), std_normal_cdf(-z)};
    }
    case OutcomeFamily::Binary: {
      if (model.arms == Arms::One) {
        const double ybar = scalar_of(data) + *hyp.theta0_ref;
        const Shape s = beta_update(pr.a1, pr.b1, ybar, n, model, opts, notes);
        return {beta_sf(th, s.a, s.b), beta_cdf(th, s.a, s.b)};
      }
      const PairEvidence p = pair_of(data, "binary");
      const Shape s1 = beta_update(pr.a1, pr.b1, p.ybar1, n, model, opts, notes);
      const Shape s0 = beta_update(pr.a0, pr.b0, p.ybar0, n, model, opts, notes);
      return beta_difference_tail(s1, s0, th, opts.quadrature);
    }
    case OutcomeFamily::Count: {
      if (model.arms == Arms::One) {
        const double ybar = scalar_of(data) + *hyp.theta0_ref;
        const Shape s{pr.a1 + n * ybar, pr.b1 + n};
        return {gamma_sf(th, s.a, s.b), gamma_cdf(th, s.a, s.b)};
      }
      const PairEvidence p = pair_of(data, "count");
      return gamma_difference_tail({pr.a1 + n * p.ybar1, pr.b1 + n}, {pr.a0 + n * p.ybar0, pr.b0 + n},
                                   th, opts.quadrature);
    }
  }
  return {};
}

bool uses_quadrature(const ModelSpec& model) {
  return model.arms == Arms::Two && model.family != OutcomeFamily::Continuous;
}

}  // namespace

PriorMasses prior_masses(const ModelSpec& model, const HypothesisSpec& hyp,
                         const PosteriorOptions& opts) {
  validate(model, hyp);
  const double th = threshold(model, hyp);
  const auto& pr = model.prior;
  const double eps = model.improper_epsilon;
  TailProbability t;
  switch (model.family) {
    case OutcomeFamily::Continuous: {
      const double z = (pr.a1 - th) / std::sqrt(pr.b1);
      t = {std_normal_cdf(z), std_normal_cdf(-z)};
      break;
    }
    case OutcomeFamily::Binary:
      if (model.arms == Arms::One) {
        const Shape s = regularized(pr.a1, pr.b1, eps);
        t = {beta_sf(th, s.a, s.b), beta_cdf(th, s.a, s.b)};
      } else {
        t = beta_difference_tail(regularized(pr.a1, pr.b1, eps), regularized(pr.a0, pr.b0, eps), th,
                                 opts.quadrature);
      }
      break;
    case OutcomeFamily::Count:
      if (model.arms == Arms::One) {
        t = {gamma_sf(th, pr.a1, pr.b1), gamma_cdf(th, pr.a1, pr.b1)};
      } else {
        t = gamma_difference_tail({pr.a1, pr.b1}, {pr.a0, pr.b0}, th, opts.quadrature);
      }
      break;
  }
  require(t.upper > 0.0 && t.lower > 0.0, ErrorCode::Domain,
          "one hypothesis has zero prior mass; the posterior probability is undefined");
  return {t.lower, t.upper};
}

TailProbability xi_tails(const ModelSpec& model, const HypothesisSpec& hyp,
                         const EvidenceSpec& data, int n, const PosteriorOptions& opts) {
  validate(model, hyp, data);
  require(n >= 0, ErrorCode::Validation, "n must be non-negative");
  return tails_impl(model, hyp, data, n, opts, nullptr);
}

double xi_integral(const ModelSpec& model, const HypothesisSpec& hyp, const EvidenceSpec& data,
                   int n, const PosteriorOptions& opts) {
  return xi_tails(model, hyp, data, n, opts).upper;
}

double apply_confidence_transform(const TailProbability& xi, double c0, double c1, double q) {
  if (q <= 0.0) return 0.0;
  if (q >= 1.0) return 1.0;
  const double h1 = q * c0 * xi.upper;
  const double h0 = (1.0 - q) * c1 * xi.lower;
  if (h1 + h0 <= 0.0) return xi.upper > 0.0 ? 1.0 : 0.0;
  return h1 / (h1 + h0);
}

double apply_confidence_transform(double xi, double c0, double c1, double q) {
  return apply_confidence_transform(TailProbability{xi, 1.0 - xi}, c0, c1, q);
}

PosteriorResult confidence(const ModelSpec& model, const HypothesisSpec& hyp,
                           const EvidenceSpec& data, int n, const PosteriorOptions& opts) {
  validate(model, hyp, data);
  require(n >= 0, ErrorCode::Validation, "n must be non-negative");
  PosteriorResult out;
  const PriorMasses m = prior_masses(model, hyp, opts);
  const TailProbability t = tails_impl(model, hyp, data, n, opts, &out.diagnostics);
  out.xi = t.upper;
  out.c0 = m.c0;
  out.c1 = m.c1;
  out.confidence = apply_confidence_transform(t, m.c0, m.c1, hyp.q);
  out.method = uses_quadrature(model) ? PosteriorMethod::Quadrature : PosteriorMethod::ClosedForm;
  if (model.is_improper()) out.epsilon_used = model.improper_epsilon;
  return out;
}

ModelSpec posterior_model(const ModelSpec& model, const HypothesisSpec& hyp,
                          const EvidenceSpec& data, int n, const PosteriorOptions& opts) {
  validate(model, hyp, data);
  ModelSpec out = model;
  auto& pr = out.prior;
  switch (model.family) {
    case OutcomeFamily::Continuous: {
      const double e = scalar_of(data) + (model.arms == Arms::One ? *hyp.theta0_ref : 0.0);
      const double s2 = effective_sigma2(model);
      const double precision = 1.0 / pr.b1 + n / s2;
      pr.a1 = (pr.a1 / pr.b1 + n * e / s2) / precision;
      pr.b1 = 1.0 / precision;
      break;
    }
    case OutcomeFamily::Binary:
    case OutcomeFamily::Count: {
      const bool binary = model.family == OutcomeFamily::Binary;
      const auto update = [&](double& a, double& b, double ybar) {
        if (binary) {
          const Shape s = beta_update(a, b, ybar, n, model, opts, nullptr);
          a = s.a;
          b = s.b;
        } else {
          a += n * ybar;
          b += n;
        }
      };
      if (model.arms == Arms::One) {
        update(pr.a1, pr.b1, scalar_of(data) + *hyp.theta0_ref);
      } else {
        const PairEvidence p = pair_of(data, binary ? "binary" : "count");
        update(pr.a1, pr.b1, p.ybar1);
        update(pr.a0, pr.b0, p.ybar0);
      }
      break;
    }
  }
  return out;
}

PosteriorResult mc_confidence(const ModelSpec& model, const HypothesisSpec& hyp,
                              const EvidenceSpec& data, int n, long long draws, RngSeed seed,
                              const PosteriorOptions& opts) {
  validate(model, hyp, data);
  require(draws >= 1, ErrorCode::Validation, "draws must be positive");
  const PriorMasses m = prior_masses(model, hyp, opts);
  const ModelSpec post = posterior_model(model, hyp, data, n, opts);
  const auto& pr = post.prior;
  const double th = threshold(model, hyp);
  const bool two = model.arms == Arms::Two && model.family != OutcomeFamily::Continuous;

  constexpr long long kChunk = 1 << 16;
  const RngStream root(seed);
  long long hits = 0;
  for (long long start = 0, chunk = 0; start < draws; start += kChunk, ++chunk) {
    RngStream rng = root.child(static_cast<std::uint64_t>(chunk));
    const long long count = std::min(kChunk, draws - start);
    for (long long i = 0; i < count; ++i) {
      double effect = 0.0;
      switch (model.family) {
        case OutcomeFamily::Continuous: effect = rng.normal(pr.a1, std::sqrt(pr.b1)); break;
        case OutcomeFamily::Binary:
          effect = rng.beta(pr.a1, pr.b1) - (two ? rng.beta(pr.a0, pr.b0) : 0.0);
          break;
        case OutcomeFamily::Count:
          effect = rng.gamma(pr.a1, pr.b1) - (two ? rng.gamma(pr.a0, pr.b0) : 0.0);
          break;
      }
      if (effect > th) ++hits;
    }
  }
  PosteriorResult out;
  out.method = PosteriorMethod::MonteCarlo;
  out.c0 = m.c0;
  out.c1 = m.c1;
  out.xi = static_cast<double>(hits) / static_cast<double>(draws);
  out.confidence = apply_confidence_transform(out.xi, m.c0, m.c1, hyp.q);
  const double se = std::sqrt(out.xi * (1.0 - out.xi) / static_cast<double>(draws));
  out.xi_std_error = se;
  const double q = hyp.q;
  const double denom = (1.0 - q) * m.c1 * (1.0 - out.xi) + q * m.c0 * out.xi;
  const double slope = denom > 0.0 ? q * (1.0 - q) * m.c0 * m.c1 / (denom * denom) : 0.0;
  out.mc_std_error = slope * se;
  if (model.is_improper()) out.epsilon_used = model.improper_epsilon;
  return out;
}

PosteriorCache::PosteriorCache(ModelSpec model, HypothesisSpec hyp, PosteriorOptions opts)
    : model_(std::move(model)), hyp_(std::move(hyp)), opts_(opts),
      masses_(prior_masses(model_, hyp_, opts_)) {}

TailProbability PosteriorCache::xi(const EvidenceSpec& data, int n) {
  const bool pair = std::holds_alternative<PairEvidence>(data);
  const Key key = pair ? Key{1, std::get<PairEvidence>(data).ybar1, std::get<PairEvidence>(data).ybar0, n}
                       : Key{0, std::get<ScalarEvidence>(data).e, 0.0, n};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const TailProbability t = xi_tails(model_, hyp_, data, n, opts_);
  cache_.emplace(key, t);
  return t;
}

double PosteriorCache::confidence(const EvidenceSpec& data, int n) {
  return apply_confidence_transform(xi(data, n), masses_.c0, masses_.c1, hyp_.q);
}

PosteriorResult PosteriorCache::result(const EvidenceSpec& data, int n) {
  PosteriorResult out;
  const TailProbability t = xi(data, n);
  out.xi = t.upper;
  out.c0 = masses_.c0;
  out.c1 = masses_.c1;
  out.confidence = apply_confidence_transform(t, masses_.c0, masses_.c1, hyp_.q);
  out.method = uses_quadrature(model_) ? PosteriorMethod::Quadrature : PosteriorMethod::ClosedForm;
  if (model_.is_improper()) out.epsilon_used = model_.improper_epsilon;
  return out;
}

}  // namespace bess
