#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bess/model.hpp"
#include "bess/nmin.hpp"
#include "bess/posterior.hpp"

namespace bess {

struct SampleSizeRequest {
  ModelSpec model;
  HypothesisSpec hyp;
  EvidenceSpec evidence;
  double c = 0.8;
  int n_max = 10000;
};

enum class SearchAlgorithm { Algorithm1, Algorithm2, Algorithm2Prime };
std::string to_string(SearchAlgorithm algorithm);

struct SampleSizeResult {
  SearchAlgorithm algorithm = SearchAlgorithm::Algorithm1;
  int n = 0;
  int n_min = 1;
  int n_max = 0;
  NminMethod n_min_method = NminMethod::Search;
  double achieved_confidence = 0.0;
  EvidenceSpec effective_evidence;             // evidence after rounding at n
  std::optional<PairEvidence> minimizing_pair;  // Algorithm 2 only
};

struct SearchOptions {
  NminOptions nmin;
  PosteriorOptions posterior;
};

/// Minimum confidence over the attainable pairs ((k + floor(n e)) / n, k / n).
/// Ties go to the smallest ybar0.
struct PairMinimum {
  double confidence = 0.0;
  PairEvidence pair;
  double effective_e = 0.0;
};
PairMinimum min_pair_confidence(PosteriorCache& cache, double e, int n);

/// Evidence as seen with n discrete outcomes per arm: means floored to k / n.
/// Continuous evidence is returned unchanged.
EvidenceSpec attainable_evidence(const ModelSpec& model, const HypothesisSpec& hyp,
                                 const EvidenceSpec& evidence, int n);

SampleSizeResult bess_algorithm_1(const SampleSizeRequest& req, const SearchOptions& opts = {});
SampleSizeResult bess_algorithm_2(const SampleSizeRequest& req, const SearchOptions& opts = {});
SampleSizeResult bess_algorithm_2_prime(const SampleSizeRequest& req, const SearchOptions& opts = {});

/// Dispatches on the model and the evidence shape.
SampleSizeResult sample_size(const SampleSizeRequest& req, const SearchOptions& opts = {});

struct EvidenceConfidenceRow {
  double e = 0.0;
  double effective_e = 0.0;
  double confidence = 0.0;
  std::optional<PairEvidence> minimizing_pair;
};

/// Confidence at fixed n for each evidence value. Two-arm binary rows take
/// the minimum over attainable pairs; two-arm count rows need control_mean.
std::vector<EvidenceConfidenceRow> evidence_confidence_table(
    const ModelSpec& model, const HypothesisSpec& hyp, int n, const std::vector<double>& evidence_grid,
    std::optional<double> control_mean = std::nullopt, const PosteriorOptions& opts = {});

}  // namespace bess
