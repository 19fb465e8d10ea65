#pragma once

#include <string>

#include "bess/model.hpp"
#include "bess/posterior.hpp"

namespace bess {

enum class NminMethod { ClosedForm, Search };
std::string to_string(NminMethod method);

struct NminResult {
  int n_min = 1;
  NminMethod method = NminMethod::Search;
  int checked_up_to = 0;   // n_max of the terminal check
  int verified_up_to = 0;  // xi confirmed non-decreasing on [n_min, verified_up_to]
};

struct NminOptions {
  int n_max = 10000;
  // Beyond the first non-negative step, xi is re-checked up to this many
  // further n; a later dip pushes n_min past it. 0 disables the re-check.
  int verify_span = 300;
  // Nmin Algorithm 2 only: grid step of the continuous ybar0 grid, and the
  // largest n whose minimizing pair is examined.
  double grid_step = 0.01;
  int pairs_scan_max = 40;
  double tolerance = -1e-12;
};

/// Nmin Algorithm 1: smallest n with xi(n + 1) - xi(n) >= 0, after checking
/// the step at n_max is non-negative.
NminResult nmin_search(const ModelSpec& model, const HypothesisSpec& hyp, const EvidenceSpec& data,
                       const NminOptions& opts = {}, const PosteriorOptions& post = {});
NminResult nmin_search(PosteriorCache& cache, const EvidenceSpec& data, const NminOptions& opts);

/// max(floor((a - (e - theta*)) sigma^2 / ((e - theta*) b)), 1); two arms use 2 sigma^2.
/// Raised to the turning point ceil((a - 2e + theta*) sigma^2 / ((e - theta*) b)) of xi
/// when that is larger, which happens for e < 0 or through the floor.
NminResult nmin_normal_closed_form(const HypothesisSpec& hyp, const PriorSpec& prior, double sigma,
                                   double e, Arms arms);

/// Nmin Algorithm 2 for two-arm binary models with scalar evidence e.
NminResult nmin_pairs_search(const ModelSpec& model, const HypothesisSpec& hyp, double e,
                             const NminOptions& opts = {}, const PosteriorOptions& post = {});
NminResult nmin_pairs_search(PosteriorCache& cache, double e, const NminOptions& opts);

}  // namespace bess
