#include <doctest.h>

#include <cmath>

#include "bess/search.hpp"
#include "support/random_models.hpp"

using namespace bess;
using namespace bess::testing;

TEST_CASE("confidence is non-decreasing in evidence at fixed n") {
  RngStream rng({101, 0});
  for (const auto& layout : all_layouts()) {
    for (int k = 0; k < 8; ++k) {
      const RandomCase c = random_case(layout, rng);
      const int n = 1 + static_cast<int>(rng.uniform() * 60);
      PosteriorCache cache(c.model, c.hyp);
      double prev = -1.0;
      for (int step = 0; step <= 10; ++step) {
        const double e = c.e + 0.02 * step;
        if (layout.family == OutcomeFamily::Binary && c.ybar0 + e > 0.99) break;
        const double conf = search_confidence(cache, c, e, n);
        CAPTURE(layout.name);
        CAPTURE(n);
        CAPTURE(e);
        CHECK(conf >= prev - 1e-9);
        prev = conf;
      }
    }
  }
}

TEST_CASE("confidence is non-decreasing in n beyond n_min") {
  RngStream rng({202, 0});
  for (const auto& layout : all_layouts()) {
    for (int k = 0; k < 4; ++k) {
      const RandomCase c = random_case(layout, rng);
      NminOptions opts;
      opts.n_max = 2000;
      const NminResult nmin = case_nmin(c, opts);
      PosteriorCache cache(c.model, c.hyp);
      const EvidenceSpec ev = evidence_for(c, c.e);
      double prev = cache.confidence(ev, nmin.n_min);
      for (int n = nmin.n_min + 1; n <= std::min(nmin.n_min + 60, opts.n_max); ++n) {
        const double conf = cache.confidence(ev, n);
        CAPTURE(layout.name);
        CAPTURE(n);
        CHECK(conf >= prev - 1e-9);
        prev = conf;
      }
    }
  }
}

TEST_CASE("delivered designs are e-coherent") {
  RngStream rng({303, 0});
  for (int k = 0; k < 6; ++k) {
    const RandomCase c = random_case(all_layouts()[1], rng);
    SampleSizeRequest req;
    req.model = c.model;
    req.hyp = c.hyp;
    req.evidence = ScalarEvidence{c.e};
    req.c = 0.6 + 0.3 * rng.uniform();
    req.n_max = 3000;
    const auto r = sample_size(req);
    PosteriorCache cache(c.model, c.hyp);
    for (double extra : {0.0, 0.01, 0.05, 0.1}) {
      if (c.e + extra > 0.9) break;
      CHECK(min_pair_confidence(cache, c.e + extra, r.n).confidence >= req.c - 1e-9);
    }
  }
}

TEST_CASE("quadrature agrees with Monte Carlo") {
  RngStream rng({404, 0});
  int inside = 0;
  int total = 0;
  for (const auto& layout : all_layouts()) {
    for (int k = 0; k < 4; ++k) {
      const RandomCase c = random_case(layout, rng);
      const int n = 1 + static_cast<int>(rng.uniform() * 40);
      const EvidenceSpec ev = evidence_for(c, c.e);
      const double quad = confidence(c.model, c.hyp, ev, n).xi;
      const long long draws = 200000;
      const auto mc = mc_confidence(c.model, c.hyp, ev, n, draws, {static_cast<std::uint64_t>(k), 1});
      const double se = std::sqrt(quad * (1.0 - quad) / draws);
      CAPTURE(layout.name);
      CHECK(std::abs(mc.xi - quad) <= 4.0 * se + 1e-12);
      inside += std::abs(mc.xi - quad) <= 2.0 * se + 1e-12 ? 1 : 0;
      ++total;
    }
  }
  CHECK(inside >= 0.9 * total);
}
