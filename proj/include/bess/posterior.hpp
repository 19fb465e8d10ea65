#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bess/model.hpp"
#include "bess/numerics.hpp"

namespace bess {

enum class PosteriorMethod { ClosedForm, Quadrature, MonteCarlo };
std::string to_string(PosteriorMethod method);

/// What to do when an improper Beta(0, 0) prior meets all-success or
/// all-failure data, leaving a zero posterior parameter.
enum class DegeneratePolicy {
  Error,       // E_DEGENERATE_POSTERIOR
  Regularize,  // substitute improper_epsilon for the zero parameter
};

struct PosteriorOptions {
  QuadratureConfig quadrature{1e-10, 400};
  DegeneratePolicy degenerate = DegeneratePolicy::Error;
};

struct PriorMasses {
  double c0 = 0.5;
  double c1 = 0.5;
};

struct PosteriorResult {
  double confidence = 0.0;
  double xi = 0.0;
  double c0 = 0.5;
  double c1 = 0.5;
  PosteriorMethod method = PosteriorMethod::ClosedForm;
  std::optional<double> mc_std_error;   // on the confidence scale
  std::optional<double> xi_std_error;   // on the xi scale
  std::optional<double> epsilon_used;   // set when an improper prior was regularized
  std::vector<std::string> diagnostics;
};

/// Pr(theta in H1) and its complement, each computed without cancellation
/// where the reduction allows it.
struct TailProbability {
  double upper = 0.0;
  double lower = 1.0;
};

/// Prior masses of H1 and H0 under the untruncated prior. Zero Beta
/// parameters are replaced by model.improper_epsilon.
PriorMasses prior_masses(const ModelSpec& model, const HypothesisSpec& hyp,
                         const PosteriorOptions& opts = {});

/// Untruncated posterior mass of H1 after n observations per arm.
double xi_integral(const ModelSpec& model, const HypothesisSpec& hyp, const EvidenceSpec& data,
                   int n, const PosteriorOptions& opts = {});

TailProbability xi_tails(const ModelSpec& model, const HypothesisSpec& hyp,
                         const EvidenceSpec& data, int n, const PosteriorOptions& opts = {});

/// Posterior probability of H1 from xi, the prior masses and q.
double apply_confidence_transform(double xi, double c0, double c1, double q);
double apply_confidence_transform(const TailProbability& xi, double c0, double c1, double q);

PosteriorResult confidence(const ModelSpec& model, const HypothesisSpec& hyp,
                           const EvidenceSpec& data, int n, const PosteriorOptions& opts = {});

/// Same quantity by sampling the conjugate posteriors directly.
PosteriorResult mc_confidence(const ModelSpec& model, const HypothesisSpec& hyp,
                              const EvidenceSpec& data, int n, long long draws, RngSeed seed,
                              const PosteriorOptions& opts = {});

/// The model after a conjugate update with n observations per arm, so the
/// posterior can serve as the prior of a later analysis. Binary/count models
/// need pair evidence for two arms.
ModelSpec posterior_model(const ModelSpec& model, const HypothesisSpec& hyp,
                          const EvidenceSpec& data, int n, const PosteriorOptions& opts = {});

/// Memoizes xi for one (model, hypothesis) pair. Searches revisit the same
/// posteriors many times. Not thread-safe; use one per search.
class PosteriorCache {
 public:
  PosteriorCache(ModelSpec model, HypothesisSpec hyp, PosteriorOptions opts = {});

  TailProbability xi(const EvidenceSpec& data, int n);
  double confidence(const EvidenceSpec& data, int n);
  PosteriorResult result(const EvidenceSpec& data, int n);

  const ModelSpec& model() const { return model_; }
  const HypothesisSpec& hypothesis() const { return hyp_; }
  const PosteriorOptions& options() const { return opts_; }
  const PriorMasses& masses() const { return masses_; }
  std::size_t evaluations() const { return cache_.size(); }

 private:
  using Key = std::tuple<int, double, double, int>;
  ModelSpec model_;
  HypothesisSpec hyp_;
  PosteriorOptions opts_;
  PriorMasses masses_;
  std::map<Key, TailProbability> cache_;
};

}  // namespace bess
