// Acceptance report: one PASS/FAIL line per criterion.
//
//   bess_acceptance                 evaluate all criteria, exit 0 once all ran
//   bess_acceptance --strict        exit 1 when any criterion fails
//   bess_acceptance --criteria 1,4  evaluate a subset

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bess/frequentist.hpp"
#include "bess/nmin.hpp"
#include "bess/posterior.hpp"
#include "bess/search.hpp"
#include "bess/simulation.hpp"
#include "support/random_models.hpp"

using namespace bess;
using namespace bess::testing;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Settings {
  std::uint64_t seed = 2024;
  bool verbose = false;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol + 1e-12; }

void note(const Settings& s, const std::string& line) {
  if (s.verbose) std::printf("    %s\n", line.c_str());
}

ModelSpec two_arm_binary(double hyper) {
  ModelSpec m;
  m.family = OutcomeFamily::Binary;
  m.arms = Arms::Two;
  m.prior = {hyper, hyper, hyper, hyper};
  return m;
}

ModelSpec two_arm_count() {
  ModelSpec m;
  m.family = OutcomeFamily::Count;
  m.arms = Arms::Two;
  m.prior = {1.0, 2.0, 1.0, 2.0};
  return m;
}

HypothesisSpec threshold(double theta_star) {
  HypothesisSpec h;
  h.theta_star = theta_star;
  return h;
}

PosteriorOptions regularized() {
  PosteriorOptions p;
  p.degenerate = DegeneratePolicy::Regularize;
  return p;
}

Verdict noninferiority_sse(const Settings&) {
  const int n = sse_noninferiority(0.30, 0.30, 0.05, 0.10, 0.30);
  return {n == 548, fmt("n = %d (target 548)", n)};
}

Verdict dose_sample_size(const Settings&) {
  const auto r = sample_size({two_arm_binary(0.5), threshold(-0.05), ScalarEvidence{0.0}, 0.7});
  return {r.n == 95, fmt("n = %d (target 95), confidence %.5f", r.n, r.achieved_confidence)};
}

Verdict dose_evidence_row(const Settings& s) {
  const std::vector<double> grid{-0.20, -0.15, -0.10, -0.05, 0.0, 0.05, 0.10, 0.15, 0.20, 0.25};
  const std::vector<double> target{0.10, 0.24, 0.43, 0.57, 0.70, 0.79, 0.88, 0.93};
  const auto rows = evidence_confidence_table(two_arm_binary(0.5), threshold(-0.05), 20, grid);
  bool pass = rows.front().confidence < 0.05 && rows.back().confidence > 0.95;
  int misses = 0;
  std::ostringstream out;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double got = rows[i + 1].confidence;
    const bool ok = within(got, target[i], 0.01);
    misses += ok ? 0 : 1;
    out << (i ? " " : "") << fmt("%.4f", got);
    note(s, fmt("e = %+.2f: %.4f vs %.2f %s", grid[i + 1], got, target[i], ok ? "ok" : "miss"));
  }
  pass = pass && misses == 0;
  return {pass, fmt("row %s; %d of 8 cells off by more than 0.01; ends %.4f / %.4f", out.str().c_str(),
                    misses, rows.front().confidence, rows.back().confidence)};
}

Verdict binary_counter_example(const Settings&) {
  const auto model = two_arm_binary(0.5);
  const auto hyp = threshold(0.05);
  const double first = confidence(model, hyp, PairEvidence{0.2, 0.1}, 10).confidence;
  const double second = confidence(model, hyp, PairEvidence{0.6, 0.5}, 15).confidence;
  const bool pass = within(first, 0.66, 0.005) && within(second, 0.65, 0.005);
  return {pass, fmt("%.4f (target 0.66), %.4f (target 0.65)", first, second)};
}

Verdict count_counter_examples(const Settings&) {
  const auto model = two_arm_count();
  const auto hyp = threshold(0.1);
  const double r1 = confidence(model, hyp, PairEvidence{1.5, 1.0}, 12).confidence;
  const double r2 = confidence(model, hyp, PairEvidence{5.6, 5.0}, 12).confidence;
  const double c1 = confidence(model, hyp, PairEvidence{1.5, 1.0}, 10).confidence;
  const double c2 = confidence(model, hyp, PairEvidence{5.5, 5.0}, 20).confidence;
  const auto r = bess_algorithm_2_prime({model, hyp, PairEvidence{1.5, 1.0}, 0.85});
  const bool pass = within(r1, 0.85, 0.005) && within(r2, 0.84, 0.005) && within(c1, 0.83, 0.005) &&
                    within(c2, 0.78, 0.005) && r.n == 12;
  return {pass, fmt("%.4f/%.4f (targets 0.85/0.84), %.4f/%.4f (targets 0.83/0.78), n = %d (target 12)",
                    r1, r2, c1, c2, r.n)};
}

Verdict nmin_cases(const Settings&) {
  std::vector<int> got;
  ModelSpec one;
  one.arms = Arms::One;
  HypothesisSpec h = threshold(0.3);
  h.theta0_ref = 0.0;
  got.push_back(nmin_search(one, h, ScalarEvidence{0.4}).n_min);
  for (double e : {0.10, 0.15, 0.20}) {
    got.push_back(nmin_pairs_search(two_arm_binary(0.0), threshold(0.05), e, {}, regularized()).n_min);
  }
  got.push_back(nmin_pairs_search(two_arm_binary(0.5), threshold(-0.05), 0.0).n_min);
  for (Arms arms : {Arms::One, Arms::Two}) {
    for (double b : {1.0, 10.0}) {
      for (double sigma : {0.5, 2.0}) {
        got.push_back(nmin_normal_closed_form(threshold(0.1), {0.0, b, 0.0, b}, sigma, 0.3, arms).n_min);
      }
    }
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < got.size(); ++i) out << (i ? "," : "") << got[i];
  const bool pass = std::all_of(got.begin(), got.end(), [](int n) { return n == 1; });
  return {pass, "n_min " + out.str() + " (all targets 1)"};
}

struct MatchedRow {
  double e, c;
  double alpha, power;
  int n;
  double fdr, for_rate;
  int n_sse;
};

MatchedComparison matched_config(double e, double c, std::uint64_t seed) {
  MatchedComparison cfg;
  cfg.model = two_arm_binary(0.0);
  cfg.hyp = threshold(0.05);
  cfg.e = e;
  cfg.c = c;
  cfg.trials = 10000;
  cfg.seed = {seed, 0};
  return cfg;
}

bool close_in_patients(int got, int target) { return std::abs(got - target) <= std::max(2.0, 0.1 * target) + 1e-9; }

Verdict matched_grid(const Settings& s) {
  const std::vector<MatchedRow> rows{
      {0.10, 0.7, 0.36, 0.73, 40, 0.33, 0.29, 42},  {0.10, 0.8, 0.23, 0.82, 120, 0.22, 0.19, 117},
      {0.10, 0.9, 0.12, 0.92, 290, 0.12, 0.08, 284}, {0.15, 0.7, 0.35, 0.56, 14, 0.38, 0.39, 14},
      {0.15, 0.8, 0.23, 0.56, 34, 0.29, 0.36, 36},   {0.15, 0.9, 0.12, 0.56, 74, 0.18, 0.34, 74},
      {0.20, 0.7, 0.45, 0.59, 5, 0.43, 0.43, 6},     {0.20, 0.8, 0.28, 0.51, 15, 0.35, 0.41, 16},
      {0.20, 0.9, 0.19, 0.48, 35, 0.28, 0.39, 39}};
  int passing = 0;
  std::ostringstream ns;
  for (const auto& row : rows) {
    const auto r = matched_sse_comparison(matched_config(row.e, row.c, s.seed));
    const auto& oc = r.bess_oc;
    const bool ok = close_in_patients(r.bess.n, row.n) && close_in_patients(r.n_sse, row.n_sse) &&
                    within(oc.type1, row.alpha, 0.02) && within(1.0 - oc.type2, row.power, 0.02) &&
                    oc.fdr && within(*oc.fdr, row.fdr, 0.02) && oc.for_rate &&
                    within(*oc.for_rate, row.for_rate, 0.02);
    passing += ok ? 1 : 0;
    ns << (ns.tellp() > 0 ? " " : "") << r.bess.n << "/" << row.n;
    note(s, fmt("e = %.2f c = %.1f: n %d (%d), alpha %.3f (%.2f), power %.3f (%.2f), fdr %.3f (%.2f), "
                "for %.3f (%.2f), n_sse %d (%d) %s",
                row.e, row.c, r.bess.n, row.n, oc.type1, row.alpha, 1.0 - oc.type2, row.power,
                oc.fdr.value_or(NAN), row.fdr, oc.for_rate.value_or(NAN), row.for_rate, r.n_sse,
                row.n_sse, ok ? "ok" : "miss"));
  }
  return {passing == 9, fmt("%d of 9 rows within tolerance; BESS n got/target %s", passing, ns.str().c_str())};
}

Verdict misspecified_sse(const Settings& s) {
  MatchedComparison cfg = matched_config(0.10, 0.7, s.seed);
  cfg.planned = TruthPair{0.35, 0.25};
  const auto r = matched_sse_comparison(cfg);
  const auto& oc = r.sse_oc;
  const bool pass = std::abs(r.n_sse - 161) <= 2 && within(1.0 - oc.type2, 0.93, 0.02) && oc.fdr &&
                    within(*oc.fdr, 0.24, 0.02);
  return {pass, fmt("n_sse = %d (target 161), power %.3f (target 0.93), fdr %.3f (target 0.24)", r.n_sse,
                    1.0 - oc.type2, oc.fdr.value_or(NAN))};
}

Verdict prior_sensitivity(const Settings& s) {
  PriorSensitivity cfg;
  cfg.seed = {s.seed, 0};
  const auto r = prior_sensitivity_study(cfg);
  const bool pass = within(r.mean_n, 23.6, 1.5) && within(r.sd_n, 9.2, 1.5);
  return {pass, fmt("mean n %.2f (target 23.6), sd %.2f (target 9.2) over %lld trials", r.mean_n, r.sd_n,
                    r.trials)};
}

Verdict evidence_coherence(const Settings& s) {
  RngStream rng({s.seed, 10});
  const auto& layouts = all_layouts();
  long long checks = 0;
  int violations = 0;
  for (int k = 0; k < 500; ++k) {
    const RandomCase c = random_case(layouts[k % layouts.size()], rng);
    const int n = 1 + static_cast<int>(rng.uniform() * 100);
    PosteriorCache cache(c.model, c.hyp);
    double prev = -1.0;
    for (int step = 0; step <= 10; ++step) {
      const double e = c.e + 0.02 * step;
      if (c.layout.family == OutcomeFamily::Binary && c.ybar0 + e > 0.99) break;
      const double conf = search_confidence(cache, c, e, n);
      ++checks;
      if (conf < prev - 1e-9) {
        ++violations;
        note(s, fmt("%s n = %d e = %.2f: %.12f after %.12f", c.layout.name.c_str(), n, e, conf, prev));
      }
      prev = conf;
    }
  }
  return {violations == 0, fmt("%d violations in %lld steps over 500 configurations", violations, checks)};
}

Verdict sample_size_coherence(const Settings& s) {
  RngStream rng({s.seed, 11});
  const auto& layouts = all_layouts();
  long long checks = 0;
  int violations = 0;
  for (int k = 0; k < 200; ++k) {
    const RandomCase c = random_case(layouts[k % layouts.size()], rng);
    NminOptions opts;
    opts.n_max = 2000;
    const NminResult nmin = case_nmin(c, opts);
    PosteriorCache cache(c.model, c.hyp);
    const EvidenceSpec ev = evidence_for(c, c.e);
    double prev = cache.confidence(ev, nmin.n_min);
    for (int n = nmin.n_min + 1; n <= std::min(nmin.n_min + 200, opts.n_max); ++n) {
      const double conf = cache.confidence(ev, n);
      ++checks;
      if (conf < prev - 1e-12) {
        ++violations;
        note(s, fmt("%s n_min = %d n = %d: %.15f after %.15f", c.layout.name.c_str(), nmin.n_min, n, conf,
                    prev));
      }
      prev = conf;
    }
  }
  return {violations == 0, fmt("%d violations in %lld steps over 200 configurations", violations, checks)};
}

Verdict monte_carlo_agreement(const Settings& s) {
  RngStream rng({s.seed, 12});
  constexpr long long kDraws = 1000000;
  int cases = 0;
  int inside2 = 0;
  int outside4 = 0;
  std::ostringstream out;
  const auto& layouts = all_layouts();
  for (std::size_t li = 0; li < layouts.size(); ++li) {
    int layout_inside2 = 0;
    for (int k = 0; k < 100; ++k) {
      const RandomCase c = random_case(layouts[li], rng);
      const int n = 1 + static_cast<int>(rng.uniform() * 60);
      const EvidenceSpec ev = evidence_for(c, c.e);
      const double xi = confidence(c.model, c.hyp, ev, n).xi;
      const std::uint64_t stream = 100000 + 1000 * li + k;
      const auto mc = mc_confidence(c.model, c.hyp, ev, n, kDraws, {s.seed, stream});
      const double se = std::sqrt(xi * (1.0 - xi) / kDraws);
      const double gap = std::abs(mc.xi - xi);
      ++cases;
      layout_inside2 += gap <= 2.0 * se + 1e-12 ? 1 : 0;
      if (gap > 4.0 * se + 1e-12) {
        ++outside4;
        note(s, fmt("%s n = %d: quadrature %.10f, sampled %.10f, se %.2e", layouts[li].name.c_str(), n, xi,
                    mc.xi, se));
      }
    }
    inside2 += layout_inside2;
    out << (li ? ", " : "") << layouts[li].name << " " << layout_inside2 << "%";
  }
  const double share = static_cast<double>(inside2) / cases;
  return {outside4 == 0 && share >= 0.95,
          fmt("%d of %d beyond 4 SE; %.1f%% within 2 SE (", outside4, cases, 100.0 * share) + out.str() + ")"};
}

Verdict interim_designs(const Settings& s) {
  const std::vector<int> totals{20, 30, 40, 50, 60, 70, 80, 90, 100};
  const std::vector<double> ks{0.5, 1.0, 1.5};
  std::vector<DesignSpec> designs(4);
  designs[0].kind = DesignKind::BessSsr;
  designs[1].kind = DesignKind::BessSsrCap;
  designs[2].kind = DesignKind::StandardSse;
  designs[3].kind = DesignKind::StandardSseInterim;
  std::vector<DesignSpec> standard{designs[2], designs[3]};
  for (auto& d : standard) {
    d.c = 1.0;
    d.c_star = 0.0;
  }

  int rises = 0;
  int missing = 0;
  int cap_breaches = 0;
  int disagreements = 0;
  for (ScenarioKind kind : {ScenarioKind::FixedPair, ScenarioKind::Random}) {
    TruthScenario scenario;
    scenario.kind = kind;
    // metric[design][k] -> (cer, cfr) over n_total
    std::vector<std::vector<std::vector<CombinedMetrics>>> series(
        designs.size(), std::vector<std::vector<CombinedMetrics>>(ks.size()));
    for (int n_total : totals) {
      for (auto& d : designs) d.n_total = n_total;
      const auto runs = run_designs(designs, scenario, 1000, {s.seed, 13});
      for (std::size_t i = 0; i < runs.size(); ++i) {
        for (std::size_t j = 0; j < ks.size(); ++j) series[i][j].push_back(combined_metrics(runs[i].oc, ks[j]));
      }
      if (runs[1].max_n > n_total) {
        ++cap_breaches;
        note(s, fmt("%s n_total %d: capped design used %d", to_string(kind).c_str(), n_total, runs[1].max_n));
      }

      for (auto& d : standard) d.n_total = n_total;
      const auto flat = run_designs(standard, scenario, 1000, {s.seed, 13});
      if (flat[0].oc.type1 != flat[1].oc.type1 || flat[0].oc.type2 != flat[1].oc.type2 ||
          flat[1].early_success + flat[1].early_futility != 0) {
        ++disagreements;
      }
    }
    for (std::size_t i = 0; i < designs.size(); ++i) {
      for (std::size_t j = 0; j < ks.size(); ++j) {
        const auto& m = series[i][j];
        for (std::size_t t = 1; t < m.size(); ++t) {
          if (m[t].cer > m[t - 1].cer + 0.01) {
            ++rises;
            note(s, fmt("%s %s k = %.1f: CER %.3f at n_total %d after %.3f", to_string(kind).c_str(),
                        to_string(designs[i].kind).c_str(), ks[j], m[t].cer, totals[t], m[t - 1].cer));
          }
          if (!m[t].cfr || !m[t - 1].cfr) {
            ++missing;
          } else if (*m[t].cfr > *m[t - 1].cfr + 0.01) {
            ++rises;
            note(s, fmt("%s %s k = %.1f: CFR %.3f at n_total %d after %.3f", to_string(kind).c_str(),
                        to_string(designs[i].kind).c_str(), ks[j], *m[t].cfr, totals[t], *m[t - 1].cfr));
          }
        }
      }
    }
  }
  const bool pass = rises == 0 && missing == 0 && cap_breaches == 0 && disagreements == 0;
  return {pass, fmt("%d CER/CFR rises beyond 0.01, %d undefined CFR steps, %d cap breaches, "
                    "%d standard-design disagreements",
                    rises, missing, cap_breaches, disagreements)};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Verdict(const Settings&)> check;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance report for the sample-size toolkit"};
  Settings settings;
  bool strict = false;
  std::vector<int> only;
  app.add_flag("--strict", strict, "Exit 1 when any criterion fails");
  app.add_flag("-v,--verbose", settings.verbose, "Print per-case details");
  app.add_option("--seed", settings.seed, "Seed for every simulation")->capture_default_str();
  app.add_option("--criteria", only, "Subset of criteria to evaluate")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "non-inferiority frequentist sample size", noninferiority_sse},
      {2, "dose-finding BESS sample size", dose_sample_size},
      {3, "dose-finding evidence/confidence row", dose_evidence_row},
      {4, "binary confidence counter-example", binary_counter_example},
      {5, "count confidence counter-examples and pair search", count_counter_examples},
      {6, "n_min reference cases", nmin_cases},
      {7, "matched BESS and oracle SSE grid", matched_grid},
      {8, "mis-specified SSE", misspecified_sse},
      {9, "history-prior sensitivity", prior_sensitivity},
      {10, "e-coherence over random configurations", evidence_coherence},
      {11, "n-coherence over random configurations", sample_size_coherence},
      {12, "Monte Carlo vs quadrature", monte_carlo_agreement},
      {13, "interim designs", interim_designs},
  };
  const std::set<int> selected(only.begin(), only.end());

  int evaluated = 0;
  int passed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check(settings);
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ++evaluated;
    passed += v.pass ? 1 : 0;
    std::printf("criterion %2d %s  %s: %s [%.1fs]\n", c.id, v.pass ? "PASS" : "FAIL", c.title, v.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("%d criteria evaluated, %d passed, %d failed\n", evaluated, passed, evaluated - passed);
  return strict && passed != evaluated ? 1 : 0;
}
