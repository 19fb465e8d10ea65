#include <doctest.h>

#include "bess/error.hpp"
#include "bess/nmin.hpp"
#include "bess/search.hpp"

using namespace bess;

namespace {

SampleSizeRequest two_arm_binary(double e, double c, double theta_star, PriorSpec prior) {
  SampleSizeRequest r;
  r.model.family = OutcomeFamily::Binary;
  r.model.arms = Arms::Two;
  r.model.prior = prior;
  r.hyp.theta_star = theta_star;
  r.evidence = ScalarEvidence{e};
  r.c = c;
  return r;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Validation;
}

}  // namespace

TEST_CASE("two-arm binary sample size is the first n whose worst pair reaches c") {
  const auto req = two_arm_binary(0.0, 0.7, -0.05, {0.5, 0.5, 0.5, 0.5});
  const auto r = sample_size(req);
  CHECK(r.algorithm == SearchAlgorithm::Algorithm2);
  CHECK(r.n == 85);
  CHECK(r.n_min == 1);
  CHECK(r.achieved_confidence >= 0.7);
  REQUIRE(r.minimizing_pair.has_value());
  CHECK(r.minimizing_pair->ybar1 == doctest::Approx(43.0 / 85));

  PosteriorCache cache(req.model, req.hyp);
  CHECK(min_pair_confidence(cache, 0.0, r.n).confidence == doctest::Approx(r.achieved_confidence));
  CHECK(min_pair_confidence(cache, 0.0, r.n - 1).confidence < 0.7);
}

TEST_CASE("one-arm binary search floors the evidence to attainable means") {
  SampleSizeRequest req;
  req.model.family = OutcomeFamily::Binary;
  req.model.arms = Arms::One;
  req.hyp.theta_star = 0.3;
  req.hyp.theta0_ref = 0.0;
  req.evidence = ScalarEvidence{0.4};
  req.c = 0.9;
  const auto r = sample_size(req);
  CHECK(r.algorithm == SearchAlgorithm::Algorithm1);
  CHECK(r.achieved_confidence >= 0.9);
  const double e_at_n = std::get<ScalarEvidence>(r.effective_evidence).e;
  CHECK(e_at_n <= 0.4 + 1e-12);
  CHECK(e_at_n * r.n == doctest::Approx(std::floor(0.4 * r.n + 1e-9)));
  for (int n = r.n_min; n < r.n; ++n) {
    const auto ev = attainable_evidence(req.model, req.hyp, req.evidence, n);
    CHECK(confidence(req.model, req.hyp, ev, n).confidence < 0.9);
  }
}

TEST_CASE("continuous search matches a brute-force scan") {
  SampleSizeRequest req;
  req.model.family = OutcomeFamily::Continuous;
  req.model.arms = Arms::Two;
  req.model.prior = {0.0, 10.0, 0.0, 10.0};
  req.model.sigma = 1.0;
  req.hyp.theta_star = 0.1;
  req.evidence = ScalarEvidence{0.3};
  req.c = 0.95;
  const auto r = sample_size(req);
  int scan = 1;
  while (confidence(req.model, req.hyp, req.evidence, scan).confidence < 0.95) ++scan;
  CHECK(r.n == scan);
  CHECK(r.n_min == 1);
  CHECK(r.n_min_method == NminMethod::Search);
}

TEST_CASE("pair evidence uses the fixed-control search") {
  SampleSizeRequest req;
  req.model.family = OutcomeFamily::Count;
  req.model.arms = Arms::Two;
  req.model.prior = {1.0, 2.0, 1.0, 2.0};
  req.hyp.theta_star = 0.1;
  req.evidence = PairEvidence{1.5, 1.0};
  req.c = 0.8;
  const auto r = sample_size(req);
  CHECK(r.algorithm == SearchAlgorithm::Algorithm2Prime);
  CHECK(r.achieved_confidence >= 0.8);
  CHECK(confidence(req.model, req.hyp, req.evidence, r.n - 1).confidence < 0.8);
}

TEST_CASE("search errors carry stable codes") {
  auto req = two_arm_binary(0.04, 0.8, 0.05, {0.5, 0.5, 0.5, 0.5});
  CHECK(code_of([&] { sample_size(req); }) == ErrorCode::EvidenceBelowThetaStar);
  req = two_arm_binary(0.1, 0.99, 0.05, {0.5, 0.5, 0.5, 0.5});
  req.n_max = 20;
  CHECK(code_of([&] { sample_size(req); }) == ErrorCode::NmaxExceeded);
  req = two_arm_binary(0.1, 1.2, 0.05, {0.5, 0.5, 0.5, 0.5});
  CHECK(code_of([&] { sample_size(req); }) == ErrorCode::Validation);
}

TEST_CASE("a tiny target returns n_min") {
  auto req = two_arm_binary(0.3, 0.01, 0.05, {0.5, 0.5, 0.5, 0.5});
  const auto r = sample_size(req);
  CHECK(r.n == r.n_min);
}

TEST_CASE("evidence table rows") {
  ModelSpec m;
  m.prior = {0.5, 0.5, 0.5, 0.5};
  HypothesisSpec h;
  h.theta_star = -0.05;
  const auto rows = evidence_confidence_table(m, h, 20, {-0.1, 0.0, 0.1});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].confidence < rows[1].confidence);
  CHECK(rows[1].confidence < rows[2].confidence);
  for (const auto& row : rows) CHECK(row.minimizing_pair.has_value());
}

TEST_CASE("n_min reference configurations") {
  ModelSpec one;
  one.family = OutcomeFamily::Binary;
  one.arms = Arms::One;
  HypothesisSpec h;
  h.theta_star = 0.3;
  h.theta0_ref = 0.0;
  CHECK(nmin_search(one, h, ScalarEvidence{0.4}).n_min == 1);

  ModelSpec two;
  two.prior = {0.0, 0.0, 0.0, 0.0};
  HypothesisSpec h2;
  h2.theta_star = 0.05;
  PosteriorOptions reg;
  reg.degenerate = DegeneratePolicy::Regularize;
  for (double e : {0.10, 0.15, 0.20}) CHECK(nmin_pairs_search(two, h2, e, {}, reg).n_min == 1);

  ModelSpec half;
  half.prior = {0.5, 0.5, 0.5, 0.5};
  HypothesisSpec h3;
  h3.theta_star = -0.05;
  CHECK(nmin_pairs_search(half, h3, 0.0).n_min == 1);

  HypothesisSpec h4;
  h4.theta_star = 0.1;
  const auto cf = nmin_normal_closed_form(h4, {0.0, 10.0, 0.0, 10.0}, 1.0, 0.3, Arms::Two);
  CHECK(cf.n_min == 1);
  CHECK(cf.method == NminMethod::ClosedForm);
}

TEST_CASE("closed-form n_min grows with a prior mean far above the evidence") {
  HypothesisSpec h;
  h.theta_star = 0.0;
  // floor((a - e) sigma^2 / (e b)) = floor((5 - 0.5) * 1 / (0.5 * 1)) = 9
  CHECK(nmin_normal_closed_form(h, {5.0, 1.0, 0.0, 1.0}, 1.0, 0.5, Arms::One).n_min == 9);
  // two arms double the variance: floor(4.5 * 2 / 0.5) = 18
  CHECK(nmin_normal_closed_form(h, {5.0, 1.0, 0.0, 1.0}, 1.0, 0.5, Arms::Two).n_min == 18);
}

TEST_CASE("search n_min leaves xi non-decreasing beyond it") {
  ModelSpec m;
  m.family = OutcomeFamily::Count;
  m.arms = Arms::Two;
  m.prior = {1.0, 2.0, 1.0, 2.0};
  HypothesisSpec h;
  h.theta_star = 0.1;
  const PairEvidence ev{5.6, 5.0};
  NminOptions opts;
  opts.n_max = 400;
  const auto r = nmin_search(m, h, ev, opts);
  double prev = xi_integral(m, h, ev, r.n_min);
  for (int n = r.n_min + 1; n <= 400; ++n) {
    const double x = xi_integral(m, h, ev, n);
    CHECK(x >= prev - 1e-12);
    prev = x;
  }
}
