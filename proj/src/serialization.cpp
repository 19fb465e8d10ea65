#include "bess/serialization.hpp"

#include <string>

namespace bess {

namespace {

const Json& member(const Json& j, const char* key) {
  require(j.is_object(), ErrorCode::Validation,
          std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  require(it != j.end() && !it->is_null(), ErrorCode::Validation,
          std::string("missing field '") + key + "'");
  return *it;
}

bool has(const Json& j, const char* key) {
  if (!j.is_object()) return false;
  const auto it = j.find(key);
  return it != j.end() && !it->is_null();
}

template <class T>
T convert(const Json& value, const char* key) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Validation, std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T get(const Json& j, const char* key) {
  return convert<T>(member(j, key), key);
}

template <>
int get<int>(const Json& j, const char* key) {
  const Json& v = member(j, key);
  require(v.is_number_integer(), ErrorCode::Validation,
          std::string("field '") + key + "' must be an integer");
  const auto x = v.get<long long>();
  require(x >= -2147483647LL && x <= 2147483647LL, ErrorCode::Validation,
          std::string("field '") + key + "' is out of range");
  return static_cast<int>(x);
}

template <>
long long get<long long>(const Json& j, const char* key) {
  const Json& v = member(j, key);
  require(v.is_number_integer(), ErrorCode::Validation,
          std::string("field '") + key + "' must be an integer");
  return v.get<long long>();
}

template <class T>
void read(const Json& j, const char* key, T& out) {
  if (has(j, key)) out = get<T>(j, key);
}

template <class T>
void read(const Json& j, const char* key, std::optional<T>& out) {
  if (has(j, key)) {
    out = get<T>(j, key);
  } else {
    out.reset();
  }
}

template <class T>
Json maybe(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json evidence_to_json(const EvidenceSpec& e) {
  if (const auto* s = std::get_if<ScalarEvidence>(&e)) return Json{{"e", s->e}};
  const auto& p = std::get<PairEvidence>(e);
  return Json{{"ybar1", p.ybar1}, {"ybar0", p.ybar0}};
}

EvidenceSpec evidence_from_json(const Json& j) {
  if (has(j, "ybar1") || has(j, "ybar0")) return PairEvidence{get<double>(j, "ybar1"), get<double>(j, "ybar0")};
  return ScalarEvidence{get<double>(j, "e")};
}

void to_json(Json& j, const OutcomeFamily& v) { j = to_string(v); }
void from_json(const Json& j, OutcomeFamily& v) {
  require(j.is_string(), ErrorCode::Validation, "family must be a string");
  v = parse_family(j.get<std::string>());
}

void to_json(Json& j, const Arms& v) { j = v == Arms::One ? 1 : 2; }
void from_json(const Json& j, Arms& v) {
  if (j.is_number_integer()) {
    v = parse_arms(std::to_string(j.get<long long>()));
  } else {
    require(j.is_string(), ErrorCode::Validation, "arms must be 1, 2, \"one\" or \"two\"");
    v = parse_arms(j.get<std::string>());
  }
}

void to_json(Json& j, const PriorSpec& v) {
  j = Json{{"a1", v.a1}, {"b1", v.b1}, {"a0", v.a0}, {"b0", v.b0}};
}
void from_json(const Json& j, PriorSpec& v) {
  if (j.is_array()) {
    const auto xs = convert<std::vector<double>>(j, "prior");
    require(xs.size() == 2 || xs.size() == 4, ErrorCode::Validation,
            "prior arrays hold a,b or a1,b1,a0,b0");
    v = xs.size() == 2 ? PriorSpec{xs[0], xs[1], xs[0], xs[1]} : PriorSpec{xs[0], xs[1], xs[2], xs[3]};
    return;
  }
  v = PriorSpec{};
  read(j, "a1", v.a1);
  read(j, "b1", v.b1);
  read(j, "a0", v.a0);
  read(j, "b0", v.b0);
}

void to_json(Json& j, const ModelSpec& v) {
  j = Json{{"family", v.family}, {"arms", v.arms}, {"prior", v.prior}, {"sigma", maybe(v.sigma)},
           {"improper_epsilon", v.improper_epsilon}};
}
void from_json(const Json& j, ModelSpec& v) {
  v = ModelSpec{};
  read(j, "family", v.family);
  read(j, "arms", v.arms);
  if (has(j, "prior")) {
    v.prior = get<PriorSpec>(j, "prior");
  } else if (v.family == OutcomeFamily::Continuous) {
    v.prior = PriorSpec{0.0, 10.0, 0.0, 10.0};
  } else if (v.family == OutcomeFamily::Count) {
    v.prior = PriorSpec{1.0, 2.0, 1.0, 2.0};
  }
  read(j, "sigma", v.sigma);
  read(j, "improper_epsilon", v.improper_epsilon);
}

void to_json(Json& j, const HypothesisSpec& v) {
  j = Json{{"theta_star", v.theta_star}, {"q", v.q}, {"theta0_ref", maybe(v.theta0_ref)}};
}
void from_json(const Json& j, HypothesisSpec& v) {
  v = HypothesisSpec{};
  v.theta_star = get<double>(j, "theta_star");
  read(j, "q", v.q);
  read(j, "theta0_ref", v.theta0_ref);
}

void to_json(Json& j, const PairEvidence& v) { j = Json{{"ybar1", v.ybar1}, {"ybar0", v.ybar0}}; }
void from_json(const Json& j, PairEvidence& v) {
  v = PairEvidence{get<double>(j, "ybar1"), get<double>(j, "ybar0")};
}

void to_json(Json& j, const RngSeed& v) { j = Json{{"seed", v.seed}, {"stream_id", v.stream_id}}; }
void from_json(const Json& j, RngSeed& v) {
  const auto id = [](const Json& x, const char* key) {
    require(x.is_number_unsigned(), ErrorCode::Validation,
            std::string("field '") + key + "' must be a non-negative integer");
    return x.get<std::uint64_t>();
  };
  if (j.is_number()) {
    v = RngSeed{id(j, "seed"), 0};
    return;
  }
  v = RngSeed{};
  v.seed = id(member(j, "seed"), "seed");
  if (has(j, "stream_id")) v.stream_id = id(j.at("stream_id"), "stream_id");
}

void to_json(Json& j, const PosteriorOptions& v) {
  j = Json{{"tolerance", v.quadrature.abs_tolerance},
           {"max_subdivisions", v.quadrature.max_subdivisions},
           {"degenerate", v.degenerate == DegeneratePolicy::Error ? "error" : "regularize"}};
}
void from_json(const Json& j, PosteriorOptions& v) {
  v = PosteriorOptions{};
  read(j, "tolerance", v.quadrature.abs_tolerance);
  read(j, "max_subdivisions", v.quadrature.max_subdivisions);
  require(v.quadrature.abs_tolerance > 0.0 && v.quadrature.max_subdivisions >= 1,
          ErrorCode::Validation, "quadrature tolerance and subdivisions must be positive");
  if (has(j, "degenerate")) {
    const auto text = get<std::string>(j, "degenerate");
    require(text == "error" || text == "regularize", ErrorCode::Validation,
            "degenerate must be \"error\" or \"regularize\"");
    v.degenerate = text == "error" ? DegeneratePolicy::Error : DegeneratePolicy::Regularize;
  }
}

void to_json(Json& j, const NminOptions& v) {
  j = Json{{"n_max", v.n_max},         {"verify_span", v.verify_span}, {"grid_step", v.grid_step},
           {"pairs_scan_max", v.pairs_scan_max}, {"tolerance", v.tolerance}};
}
void from_json(const Json& j, NminOptions& v) {
  v = NminOptions{};
  read(j, "n_max", v.n_max);
  read(j, "verify_span", v.verify_span);
  read(j, "grid_step", v.grid_step);
  read(j, "pairs_scan_max", v.pairs_scan_max);
  read(j, "tolerance", v.tolerance);
}

void to_json(Json& j, const SearchOptions& v) { j = Json{{"nmin", v.nmin}, {"posterior", v.posterior}}; }
void from_json(const Json& j, SearchOptions& v) {
  v = SearchOptions{};
  read(j, "nmin", v.nmin);
  read(j, "posterior", v.posterior);
}

namespace {

PosteriorMethod parse_posterior_method(const std::string& text) {
  for (auto m : {PosteriorMethod::ClosedForm, PosteriorMethod::Quadrature, PosteriorMethod::MonteCarlo}) {
    if (text == to_string(m)) return m;
  }
  fail(ErrorCode::Validation, "unknown posterior method '" + text + "'");
}

SearchAlgorithm parse_algorithm(const std::string& text) {
  for (auto a : {SearchAlgorithm::Algorithm1, SearchAlgorithm::Algorithm2, SearchAlgorithm::Algorithm2Prime}) {
    if (text == to_string(a)) return a;
  }
  fail(ErrorCode::Validation, "unknown algorithm '" + text + "'");
}

NminMethod parse_nmin_method(const std::string& text) {
  if (text == to_string(NminMethod::ClosedForm)) return NminMethod::ClosedForm;
  if (text == to_string(NminMethod::Search)) return NminMethod::Search;
  fail(ErrorCode::Validation, "unknown n_min method '" + text + "'");
}

}  // namespace

void to_json(Json& j, const PosteriorResult& v) {
  j = Json{{"confidence", v.confidence},
           {"xi", v.xi},
           {"c0", v.c0},
           {"c1", v.c1},
           {"method", to_string(v.method)},
           {"mc_std_error", maybe(v.mc_std_error)},
           {"xi_std_error", maybe(v.xi_std_error)},
           {"epsilon_used", maybe(v.epsilon_used)},
           {"diagnostics", v.diagnostics}};
}
void from_json(const Json& j, PosteriorResult& v) {
  v = PosteriorResult{};
  v.confidence = get<double>(j, "confidence");
  v.xi = get<double>(j, "xi");
  v.c0 = get<double>(j, "c0");
  v.c1 = get<double>(j, "c1");
  v.method = parse_posterior_method(get<std::string>(j, "method"));
  read(j, "mc_std_error", v.mc_std_error);
  read(j, "xi_std_error", v.xi_std_error);
  read(j, "epsilon_used", v.epsilon_used);
  read(j, "diagnostics", v.diagnostics);
}

void to_json(Json& j, const NminResult& v) {
  j = Json{{"n_min", v.n_min},
           {"method", to_string(v.method)},
           {"checked_up_to", v.checked_up_to},
           {"verified_up_to", v.verified_up_to}};
}
void from_json(const Json& j, NminResult& v) {
  v = NminResult{};
  v.n_min = get<int>(j, "n_min");
  v.method = parse_nmin_method(get<std::string>(j, "method"));
  read(j, "checked_up_to", v.checked_up_to);
  read(j, "verified_up_to", v.verified_up_to);
}

void to_json(Json& j, const SampleSizeRequest& v) {
  j = Json{{"model", v.model},
           {"hypothesis", v.hyp},
           {"evidence", evidence_to_json(v.evidence)},
           {"c", v.c},
           {"n_max", v.n_max}};
}
void from_json(const Json& j, SampleSizeRequest& v) {
  v = SampleSizeRequest{};
  v.model = get<ModelSpec>(j, "model");
  v.hyp = get<HypothesisSpec>(j, "hypothesis");
  v.evidence = evidence_from_json(member(j, "evidence"));
  v.c = get<double>(j, "c");
  read(j, "n_max", v.n_max);
}

void to_json(Json& j, const SampleSizeResult& v) {
  j = Json{{"algorithm", to_string(v.algorithm)},
           {"n", v.n},
           {"n_min", v.n_min},
           {"n_max", v.n_max},
           {"n_min_method", to_string(v.n_min_method)},
           {"achieved_confidence", v.achieved_confidence},
           {"effective_evidence", evidence_to_json(v.effective_evidence)},
           {"minimizing_pair", maybe(v.minimizing_pair)}};
}
void from_json(const Json& j, SampleSizeResult& v) {
  v = SampleSizeResult{};
  v.algorithm = parse_algorithm(get<std::string>(j, "algorithm"));
  v.n = get<int>(j, "n");
  v.n_min = get<int>(j, "n_min");
  v.n_max = get<int>(j, "n_max");
  v.n_min_method = parse_nmin_method(get<std::string>(j, "n_min_method"));
  v.achieved_confidence = get<double>(j, "achieved_confidence");
  v.effective_evidence = evidence_from_json(member(j, "effective_evidence"));
  read(j, "minimizing_pair", v.minimizing_pair);
}

void to_json(Json& j, const EvidenceConfidenceRow& v) {
  j = Json{{"e", v.e},
           {"effective_e", v.effective_e},
           {"confidence", v.confidence},
           {"minimizing_pair", maybe(v.minimizing_pair)}};
}
void from_json(const Json& j, EvidenceConfidenceRow& v) {
  v = EvidenceConfidenceRow{};
  v.e = get<double>(j, "e");
  v.effective_e = get<double>(j, "effective_e");
  v.confidence = get<double>(j, "confidence");
  read(j, "minimizing_pair", v.minimizing_pair);
}

void to_json(Json& j, const FreqDesign& v) {
  j = Json{{"alpha", v.alpha}, {"beta", v.beta}, {"theta1", v.theta1}, {"theta0", v.theta0},
           {"theta_star", v.theta_star}};
}
void from_json(const Json& j, FreqDesign& v) {
  v = FreqDesign{get<double>(j, "alpha"), get<double>(j, "beta"), get<double>(j, "theta1"),
                 get<double>(j, "theta0"), 0.0};
  read(j, "theta_star", v.theta_star);
}

void to_json(Json& j, const TruthPair& v) { j = Json{{"theta1", v.theta1}, {"theta0", v.theta0}}; }
void from_json(const Json& j, TruthPair& v) {
  if (j.is_array()) {
    const auto xs = convert<std::vector<double>>(j, "truth");
    require(xs.size() == 2, ErrorCode::Validation, "a truth array holds theta1, theta0");
    v = TruthPair{xs[0], xs[1]};
    return;
  }
  v = TruthPair{get<double>(j, "theta1"), get<double>(j, "theta0")};
}

void to_json(Json& j, const TrialData& v) {
  j = Json{{"n", v.n}, {"sum1", v.sum1}, {"sum0", v.sum0}, {"ybar1", v.ybar1()}, {"ybar0", v.ybar0()}};
}
void from_json(const Json& j, TrialData& v) {
  v = TrialData{};
  v.n = get<int>(j, "n");
  require(v.n >= 0, ErrorCode::Validation, "n must be non-negative");
  if (has(j, "sum1") || has(j, "sum0")) {
    v.sum1 = get<double>(j, "sum1");
    v.sum0 = get<double>(j, "sum0");
  } else {
    v.sum1 = get<double>(j, "ybar1") * v.n;
    v.sum0 = get<double>(j, "ybar0") * v.n;
  }
}

void to_json(Json& j, const DecisionTally& v) {
  j = Json{{"null_trials", v.null_trials},   {"null_rejections", v.null_rejections},
           {"alt_trials", v.alt_trials},     {"alt_rejections", v.alt_rejections},
           {"null_patients", v.null_patients}, {"alt_patients", v.alt_patients}};
}
void from_json(const Json& j, DecisionTally& v) {
  v = DecisionTally{};
  read(j, "null_trials", v.null_trials);
  read(j, "null_rejections", v.null_rejections);
  read(j, "alt_trials", v.alt_trials);
  read(j, "alt_rejections", v.alt_rejections);
  read(j, "null_patients", v.null_patients);
  read(j, "alt_patients", v.alt_patients);
}

void to_json(Json& j, const OperatingCharacteristics& v) {
  j = Json{{"type1", v.type1},       {"type2", v.type2},         {"power", 1.0 - v.type2},
           {"fdr", maybe(v.fdr)},    {"for", maybe(v.for_rate)}, {"avg_n", v.avg_n},
           {"n_trials", v.n_trials}, {"prevalence", v.prevalence}, {"tally", v.tally}};
}
void from_json(const Json& j, OperatingCharacteristics& v) {
  v = OperatingCharacteristics{};
  v.type1 = get<double>(j, "type1");
  v.type2 = get<double>(j, "type2");
  read(j, "fdr", v.fdr);
  read(j, "for", v.for_rate);
  read(j, "avg_n", v.avg_n);
  read(j, "n_trials", v.n_trials);
  read(j, "prevalence", v.prevalence);
  read(j, "tally", v.tally);
}

void to_json(Json& j, const CombinedMetrics& v) { j = Json{{"cer", v.cer}, {"cfr", maybe(v.cfr)}}; }
void from_json(const Json& j, CombinedMetrics& v) {
  v = CombinedMetrics{};
  v.cer = get<double>(j, "cer");
  read(j, "cfr", v.cfr);
}

namespace {

DecisionRule parse_rule(const std::string& text) {
  if (text == to_string(DecisionRule::Posterior)) return DecisionRule::Posterior;
  if (text == to_string(DecisionRule::ZTest)) return DecisionRule::ZTest;
  fail(ErrorCode::Validation, "unknown decision rule '" + text + "'");
}

ScenarioKind parse_scenario(const std::string& text) {
  if (text == to_string(ScenarioKind::FixedPair)) return ScenarioKind::FixedPair;
  if (text == to_string(ScenarioKind::Random)) return ScenarioKind::Random;
  fail(ErrorCode::Validation, "unknown scenario kind '" + text + "'");
}

InterimDecision parse_interim(const std::string& text) {
  for (auto d : {InterimDecision::StopSuccess, InterimDecision::StopFutility, InterimDecision::Continue}) {
    if (text == to_string(d)) return d;
  }
  fail(ErrorCode::Validation, "unknown interim decision '" + text + "'");
}

}  // namespace

void to_json(Json& j, const ErrorRateStudy& v) {
  j = Json{{"model", v.model},           {"hypothesis", v.hyp},     {"n", v.n},
           {"c", v.c},                   {"null_truth", v.null_truth}, {"alt_truth", v.alt_truth},
           {"trials", v.trials},         {"seed", v.seed},          {"rule", to_string(v.rule)},
           {"alpha", v.alpha},           {"posterior", v.posterior}};
}
void from_json(const Json& j, ErrorRateStudy& v) {
  v = ErrorRateStudy{};
  read(j, "model", v.model);
  read(j, "hypothesis", v.hyp);
  v.n = get<int>(j, "n");
  read(j, "c", v.c);
  read(j, "null_truth", v.null_truth);
  read(j, "alt_truth", v.alt_truth);
  read(j, "trials", v.trials);
  v.seed = get<RngSeed>(j, "seed");
  if (has(j, "rule")) v.rule = parse_rule(get<std::string>(j, "rule"));
  read(j, "alpha", v.alpha);
  read(j, "posterior", v.posterior);
}

void to_json(Json& j, const MatchedComparison& v) {
  j = Json{{"model", v.model},
           {"hypothesis", v.hyp},
           {"e", v.e},
           {"c", v.c},
           {"null_truth", v.null_truth},
           {"alt_truth", v.alt_truth},
           {"planned", maybe(v.planned)},
           {"trials", v.trials},
           {"seed", v.seed},
           {"rate_digits", v.rate_digits},
           {"sse_rule", to_string(v.sse_rule)},
           {"search", v.search}};
}
void from_json(const Json& j, MatchedComparison& v) {
  v = MatchedComparison{};
  read(j, "model", v.model);
  read(j, "hypothesis", v.hyp);
  v.e = get<double>(j, "e");
  v.c = get<double>(j, "c");
  read(j, "null_truth", v.null_truth);
  read(j, "alt_truth", v.alt_truth);
  read(j, "planned", v.planned);
  read(j, "trials", v.trials);
  v.seed = get<RngSeed>(j, "seed");
  read(j, "rate_digits", v.rate_digits);
  if (has(j, "sse_rule")) v.sse_rule = parse_rule(get<std::string>(j, "sse_rule"));
  read(j, "search", v.search);
}

void to_json(Json& j, const MatchedComparisonResult& v) {
  j = Json{{"bess", v.bess},   {"bess_oc", v.bess_oc}, {"alpha", v.alpha},
           {"beta", v.beta},   {"n_sse", v.n_sse},     {"sse_oc", v.sse_oc}};
}
void from_json(const Json& j, MatchedComparisonResult& v) {
  v = MatchedComparisonResult{};
  v.bess = get<SampleSizeResult>(j, "bess");
  v.bess_oc = get<OperatingCharacteristics>(j, "bess_oc");
  v.alpha = get<double>(j, "alpha");
  v.beta = get<double>(j, "beta");
  v.n_sse = get<int>(j, "n_sse");
  v.sse_oc = get<OperatingCharacteristics>(j, "sse_oc");
}

void to_json(Json& j, const PriorSensitivity& v) {
  j = Json{{"n0", v.n0},
           {"e", v.e},
           {"c", v.c},
           {"hypothesis", v.hyp},
           {"history_truth", v.history_truth},
           {"trials", v.trials},
           {"seed", v.seed},
           {"degenerate_floor", v.degenerate_floor},
           {"search", v.search}};
}
void from_json(const Json& j, PriorSensitivity& v) {
  v = PriorSensitivity{};
  read(j, "n0", v.n0);
  read(j, "e", v.e);
  read(j, "c", v.c);
  read(j, "hypothesis", v.hyp);
  read(j, "history_truth", v.history_truth);
  read(j, "trials", v.trials);
  v.seed = get<RngSeed>(j, "seed");
  read(j, "degenerate_floor", v.degenerate_floor);
  read(j, "search", v.search);
}

void to_json(Json& j, const PriorSensitivityResult& v) {
  j = Json{{"mean_n", v.mean_n},
           {"sd_n", v.sd_n},
           {"trials", v.trials},
           {"distinct_priors", v.distinct_priors},
           {"sample_sizes", v.sample_sizes}};
}
void from_json(const Json& j, PriorSensitivityResult& v) {
  v = PriorSensitivityResult{};
  v.mean_n = get<double>(j, "mean_n");
  v.sd_n = get<double>(j, "sd_n");
  read(j, "trials", v.trials);
  read(j, "distinct_priors", v.distinct_priors);
  read(j, "sample_sizes", v.sample_sizes);
}

void to_json(Json& j, const TruthScenario& v) {
  j = Json{{"kind", to_string(v.kind)}, {"null_truth", v.null_truth}, {"alt_truth", v.alt_truth},
           {"margin", v.margin},        {"upper", v.upper},           {"ceiling", v.ceiling},
           {"q", v.q}};
}
void from_json(const Json& j, TruthScenario& v) {
  v = TruthScenario{};
  if (has(j, "kind")) v.kind = parse_scenario(get<std::string>(j, "kind"));
  read(j, "null_truth", v.null_truth);
  read(j, "alt_truth", v.alt_truth);
  read(j, "margin", v.margin);
  read(j, "upper", v.upper);
  read(j, "ceiling", v.ceiling);
  read(j, "q", v.q);
}

void to_json(Json& j, const DesignSpec& v) {
  j = Json{{"kind", to_string(v.kind)}, {"n_total", v.n_total}, {"c", v.c},
           {"c_star", v.c_star},        {"alpha", v.alpha},     {"e", v.e},
           {"model", v.model},          {"hypothesis", v.hyp},  {"ssr_n_max", v.ssr_n_max},
           {"ssr_search", v.ssr_search}};
}
void from_json(const Json& j, DesignSpec& v) {
  v = DesignSpec{};
  if (has(j, "kind")) v.kind = parse_design(get<std::string>(j, "kind"));
  read(j, "n_total", v.n_total);
  read(j, "c", v.c);
  read(j, "c_star", v.c_star);
  read(j, "alpha", v.alpha);
  read(j, "e", v.e);
  read(j, "model", v.model);
  read(j, "hypothesis", v.hyp);
  read(j, "ssr_n_max", v.ssr_n_max);
  read(j, "ssr_search", v.ssr_search);
}

void to_json(Json& j, const DesignRun& v) {
  j = Json{{"design", v.design},
           {"oc", v.oc},
           {"early_success", v.early_success},
           {"early_futility", v.early_futility},
           {"flagged", v.flagged},
           {"max_n", v.max_n}};
}
void from_json(const Json& j, DesignRun& v) {
  v = DesignRun{};
  v.design = get<DesignSpec>(j, "design");
  v.oc = get<OperatingCharacteristics>(j, "oc");
  read(j, "early_success", v.early_success);
  read(j, "early_futility", v.early_futility);
  read(j, "flagged", v.flagged);
  read(j, "max_n", v.max_n);
}

void to_json(Json& j, const SsrRequest& v) {
  j = Json{{"model", v.model}, {"hypothesis", v.hyp}, {"interim", v.interim},
           {"n_total", v.n_total}, {"c", v.c},        {"c_star", v.c_star},
           {"cap", v.cap},     {"n_max", v.n_max},     {"search", v.search}};
}
void from_json(const Json& j, SsrRequest& v) {
  v = SsrRequest{};
  read(j, "model", v.model);
  read(j, "hypothesis", v.hyp);
  v.interim = get<TrialData>(j, "interim");
  v.n_total = get<int>(j, "n_total");
  read(j, "c", v.c);
  read(j, "c_star", v.c_star);
  read(j, "cap", v.cap);
  read(j, "n_max", v.n_max);
  read(j, "search", v.search);
}

void to_json(Json& j, const SsrOutcome& v) {
  j = Json{{"interim_confidence", v.interim_confidence},
           {"decision", to_string(v.decision)},
           {"e_int", v.e_int},
           {"n_star", maybe(v.n_star)},
           {"n_star_capped", maybe(v.n_star_capped)},
           {"planned_confidence", maybe(v.planned_confidence)},
           {"note", v.note}};
}
void from_json(const Json& j, SsrOutcome& v) {
  v = SsrOutcome{};
  v.interim_confidence = get<double>(j, "interim_confidence");
  v.decision = parse_interim(get<std::string>(j, "decision"));
  read(j, "e_int", v.e_int);
  read(j, "n_star", v.n_star);
  read(j, "n_star_capped", v.n_star_capped);
  read(j, "planned_confidence", v.planned_confidence);
  read(j, "note", v.note);
}

Json error_json(ErrorCode code, const std::string& message, const Json& details) {
  Json j{{"code", std::string(to_string(code))}, {"message", message}};
  if (!details.is_null()) j["details"] = details;
  return j;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Validation, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace bess
