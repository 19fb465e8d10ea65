#include "bess/service.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "bess/frequentist.hpp"

#ifndef BESS_VERSION
#define BESS_VERSION "0.0.0"
#endif

namespace bess {

std::string version() { return BESS_VERSION; }

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NmaxExceeded:
    case ErrorCode::TooManyTrials:
      return 422;
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::QuadratureConvergence:
      return 500;
    default:
      return 400;
  }
}

namespace {

template <class T>
T field(const Json& j, const char* key) {
  require(j.is_object() && j.contains(key) && !j.at(key).is_null(), ErrorCode::Validation,
          std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Validation, std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T field_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return field<T>(j, key);
}

int int_field_or(const Json& j, const char* key, int fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  require(j.at(key).is_number_integer(), ErrorCode::Validation,
          std::string("field '") + key + "' must be an integer");
  return j.at(key).get<int>();
}

void require_object(const Json& body) {
  require(body.is_object(), ErrorCode::Validation, "request body must be a JSON object");
}

Json with_epsilon(Json out, const ModelSpec& model) {
  out["epsilon_used"] = model.is_improper() ? Json(model.improper_epsilon) : Json(nullptr);
  return out;
}

// Evidence grids arrive as a list or as {lo, hi, step}.
std::vector<double> evidence_grid(const Json& grid) {
  if (grid.is_array()) {
    std::vector<double> out;
    for (const auto& x : grid) {
      require(x.is_number(), ErrorCode::Validation, "evidence_grid entries must be numbers");
      out.push_back(x.get<double>());
    }
    require(!out.empty(), ErrorCode::Validation, "evidence_grid must not be empty");
    return out;
  }
  const double lo = field<double>(grid, "lo");
  const double hi = field<double>(grid, "hi");
  const double step = field<double>(grid, "step");
  require(step > 0.0 && hi >= lo, ErrorCode::Validation, "evidence grid needs lo <= hi and step > 0");
  const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  require(count <= 10000, ErrorCode::Validation, "evidence grid is limited to 10000 points");
  std::vector<double> out;
  for (long long i = 0; i < count; ++i) out.push_back(std::round((lo + i * step) * 1e10) / 1e10);
  return out;
}

// Each endpoint reads only its resolved body, so the CLI and the service
// compute from the same canonical request.
struct Endpoint {
  std::function<Json(const Json&)> resolve;
  std::function<Json(const Json&)> run;
};

Json resolve_sample_size(const Json& body) {
  require_object(body);
  Json out = body.get<SampleSizeRequest>();
  out["search"] = body.contains("search") ? body.at("search").get<SearchOptions>() : SearchOptions{};
  return out;
}

Json run_sample_size(const Json& r) {
  const auto req = r.get<SampleSizeRequest>();
  return with_epsilon(sample_size(req, r.at("search").get<SearchOptions>()), req.model);
}

Json resolve_confidence(const Json& body) {
  require_object(body);
  const auto method = field_or<std::string>(body, "method", "quadrature");
  require(method == "quadrature" || method == "monte_carlo", ErrorCode::Validation,
          "method must be \"quadrature\" or \"monte_carlo\"");
  Json out{{"model", field<ModelSpec>(body, "model")},
           {"hypothesis", field<HypothesisSpec>(body, "hypothesis")},
           {"evidence", evidence_to_json(evidence_from_json(field<Json>(body, "evidence")))},
           {"n", int_field_or(body, "n", 0)},
           {"method", method},
           {"posterior", field_or<PosteriorOptions>(body, "posterior", PosteriorOptions{})}};
  require(out["n"].get<int>() >= 1, ErrorCode::Validation, "n must be a positive integer");
  if (method == "monte_carlo") {
    const long long draws = field_or<long long>(body, "draws", 1000000);
    require(draws >= 1 && draws <= 100000000, ErrorCode::Validation, "draws must lie in [1, 1e8]");
    out["draws"] = draws;
    out["seed"] = field<RngSeed>(body, "seed");
  }
  return out;
}

Json run_confidence(const Json& r) {
  const auto model = r.at("model").get<ModelSpec>();
  const auto hyp = r.at("hypothesis").get<HypothesisSpec>();
  const auto evidence = evidence_from_json(r.at("evidence"));
  const int n = r.at("n").get<int>();
  const auto post = r.at("posterior").get<PosteriorOptions>();
  if (r.at("method") == "monte_carlo") {
    return mc_confidence(model, hyp, evidence, n, r.at("draws").get<long long>(),
                         r.at("seed").get<RngSeed>(), post);
  }
  return confidence(model, hyp, evidence, n, post);
}

Json resolve_table(const Json& body) {
  require_object(body);
  Json out{{"model", field<ModelSpec>(body, "model")},
           {"hypothesis", field<HypothesisSpec>(body, "hypothesis")},
           {"n", int_field_or(body, "n", 0)},
           {"evidence_grid", evidence_grid(field<Json>(body, "evidence_grid"))},
           {"control_mean", field_or<Json>(body, "control_mean", nullptr)},
           {"posterior", field_or<PosteriorOptions>(body, "posterior", PosteriorOptions{})}};
  require(out["n"].get<int>() >= 1, ErrorCode::Validation, "n must be a positive integer");
  require(out["control_mean"].is_null() || out["control_mean"].is_number(), ErrorCode::Validation,
          "control_mean must be a number");
  return out;
}

Json run_table(const Json& r) {
  const auto model = r.at("model").get<ModelSpec>();
  std::optional<double> control;
  if (!r.at("control_mean").is_null()) control = r.at("control_mean").get<double>();
  const auto rows = evidence_confidence_table(model, r.at("hypothesis").get<HypothesisSpec>(),
                                              r.at("n").get<int>(),
                                              r.at("evidence_grid").get<std::vector<double>>(), control,
                                              r.at("posterior").get<PosteriorOptions>());
  return with_epsilon(Json{{"n", r.at("n")}, {"rows", rows}}, model);
}

Json resolve_nmin(const Json& body) {
  require_object(body);
  return Json{{"model", field<ModelSpec>(body, "model")},
              {"hypothesis", field<HypothesisSpec>(body, "hypothesis")},
              {"evidence", evidence_to_json(evidence_from_json(field<Json>(body, "evidence")))},
              {"nmin", field_or<NminOptions>(body, "nmin", NminOptions{})},
              {"posterior", field_or<PosteriorOptions>(body, "posterior", PosteriorOptions{})}};
}

Json run_nmin(const Json& r) {
  const auto model = r.at("model").get<ModelSpec>();
  const auto hyp = r.at("hypothesis").get<HypothesisSpec>();
  const auto evidence = evidence_from_json(r.at("evidence"));
  const auto opts = r.at("nmin").get<NminOptions>();
  const auto post = r.at("posterior").get<PosteriorOptions>();
  validate(model, hyp, evidence);
  if (model.family == OutcomeFamily::Continuous) {
    require(model.sigma.has_value(), ErrorCode::Validation, "continuous models need sigma");
    return nmin_normal_closed_form(hyp, model.prior, *model.sigma, evidence_effect(evidence), model.arms);
  }
  if (model.arms == Arms::Two && model.family == OutcomeFamily::Binary &&
      std::holds_alternative<ScalarEvidence>(evidence)) {
    return nmin_pairs_search(model, hyp, evidence_effect(evidence), opts, post);
  }
  return nmin_search(model, hyp, evidence, opts, post);
}

Json resolve_ssr(const Json& body) {
  require_object(body);
  return body.get<SsrRequest>();
}

Json run_ssr(const Json& r) { return sample_size_reestimation(r.get<SsrRequest>()); }

Json resolve_sse(const Json& body) {
  require_object(body);
  const auto test = field<std::string>(body, "test");
  if (test == "superiority") {
    Json out = body.get<FreqDesign>();
    out["test"] = test;
    return out;
  }
  require(test == "noninferiority", ErrorCode::Validation,
          "test must be \"superiority\" or \"noninferiority\"");
  return Json{{"test", test},
              {"p1", field<double>(body, "p1")},
              {"p0", field<double>(body, "p0")},
              {"margin", field<double>(body, "margin")},
              {"alpha", field<double>(body, "alpha")},
              {"beta", field<double>(body, "beta")}};
}

Json run_sse(const Json& r) {
  if (r.at("test") == "superiority") {
    return Json{{"test", "superiority"}, {"n", sse_superiority(r.get<FreqDesign>())}};
  }
  const int n = sse_noninferiority(r.at("p1").get<double>(), r.at("p0").get<double>(),
                                   r.at("margin").get<double>(), r.at("alpha").get<double>(),
                                   r.at("beta").get<double>());
  return Json{{"test", "noninferiority"}, {"n", n}};
}

void check_trials(long long trials) {
  require(trials >= 1, ErrorCode::Validation, "trials must be positive");
  if (trials > kMaxServiceTrials) {
    fail(ErrorCode::TooManyTrials,
         "trials is limited to " + std::to_string(kMaxServiceTrials) + " per hypothesis; use the CLI");
  }
}

std::vector<DesignSpec> default_designs() {
  std::vector<DesignSpec> out;
  for (DesignKind k : {DesignKind::BessSsr, DesignKind::BessSsrCap, DesignKind::StandardSse,
                       DesignKind::StandardSseInterim}) {
    DesignSpec d;
    d.kind = k;
    out.push_back(d);
  }
  return out;
}

Json resolve_simulate(const Json& body) {
  require_object(body);
  require(body.contains("seed") && !body.at("seed").is_null(), ErrorCode::Validation,
          "simulations need an explicit seed");
  const auto study = field<std::string>(body, "study");
  Json out;
  if (study == "error_rate") {
    out = body.get<ErrorRateStudy>();
  } else if (study == "matched") {
    out = body.get<MatchedComparison>();
  } else if (study == "sensitivity") {
    out = body.get<PriorSensitivity>();
  } else if (study == "designs") {
    out["designs"] = field_or<std::vector<DesignSpec>>(body, "designs", default_designs());
    out["scenario"] = field_or<TruthScenario>(body, "scenario", TruthScenario{});
    out["n_totals"] = field_or<std::vector<int>>(body, "n_totals", {});
    out["k"] = field_or<std::vector<double>>(body, "k", {0.5, 1.0, 1.5});
    out["trials"] = field_or<long long>(body, "trials", 1000);
    out["seed"] = field<RngSeed>(body, "seed");
    require(!out["designs"].empty(), ErrorCode::Validation, "designs must not be empty");
    for (int n : out["n_totals"].get<std::vector<int>>()) {
      require(n >= 2, ErrorCode::Validation, "n_totals entries must be at least 2");
    }
  } else {
    fail(ErrorCode::Validation, "study must be one of error_rate, matched, sensitivity, designs");
  }
  out["study"] = study;
  check_trials(out.at("trials").get<long long>());
  return out;
}

Json designs_point(const std::vector<DesignRun>& runs, const TruthScenario& scenario,
                   const std::vector<double>& ks) {
  Json summary = Json::array();
  for (const auto& run : runs) {
    for (double k : ks) {
      const CombinedMetrics m = combined_metrics(run.oc, k);
      summary.push_back(Json{{"design", to_string(run.design.kind)},
                             {"scenario", to_string(scenario.kind)},
                             {"n_total", run.design.n_total},
                             {"k", k},
                             {"alpha", run.oc.type1},
                             {"beta", run.oc.type2},
                             {"fdr", run.oc.fdr ? Json(*run.oc.fdr) : Json(nullptr)},
                             {"for", run.oc.for_rate ? Json(*run.oc.for_rate) : Json(nullptr)},
                             {"cer", m.cer},
                             {"cfr", m.cfr ? Json(*m.cfr) : Json(nullptr)},
                             {"avg_n", run.oc.avg_n}});
    }
  }
  return Json{{"runs", runs}, {"summary", summary}};
}

Json run_simulate(const Json& r) {
  const auto study = r.at("study").get<std::string>();
  Json out{{"study", study}};
  if (study == "error_rate") {
    out["result"] = error_rate_study(r.get<ErrorRateStudy>());
  } else if (study == "matched") {
    out["result"] = matched_sse_comparison(r.get<MatchedComparison>());
  } else if (study == "sensitivity") {
    out["result"] = prior_sensitivity_study(r.get<PriorSensitivity>());
  } else {
    auto designs = r.at("designs").get<std::vector<DesignSpec>>();
    const auto scenario = r.at("scenario").get<TruthScenario>();
    const auto ks = r.at("k").get<std::vector<double>>();
    auto totals = r.at("n_totals").get<std::vector<int>>();
    if (totals.empty()) totals.push_back(designs.front().n_total);
    Json points = Json::array();
    Json summary = Json::array();
    for (int n_total : totals) {
      for (auto& d : designs) d.n_total = n_total;
      Json point = designs_point(run_designs(designs, scenario, r.at("trials").get<long long>(),
                                             r.at("seed").get<RngSeed>()),
                                 scenario, ks);
      for (const auto& row : point.at("summary")) summary.push_back(row);
      points.push_back(Json{{"n_total", n_total}, {"runs", point.at("runs")}});
    }
    out["result"] = Json{{"points", points}, {"summary", summary}};
  }
  return out;
}

Json health_body() {
  return Json{{"status", "ok"}, {"service", "bess"}, {"version", version()}};
}

const std::map<std::string, Endpoint>& post_endpoints() {
  static const std::map<std::string, Endpoint> endpoints{
      {"/v1/sample-size", {resolve_sample_size, run_sample_size}},
      {"/v1/confidence", {resolve_confidence, run_confidence}},
      {"/v1/evidence-table", {resolve_table, run_table}},
      {"/v1/nmin", {resolve_nmin, run_nmin}},
      {"/v1/ssr", {resolve_ssr, run_ssr}},
      {"/v1/simulate", {resolve_simulate, run_simulate}},
      {"/v1/frequentist/sse", {resolve_sse, run_sse}},
  };
  return endpoints;
}

const Endpoint& endpoint(const std::string& path) {
  const auto& eps = post_endpoints();
  const auto it = eps.find(path);
  if (it == eps.end()) fail(ErrorCode::NotFound, "no endpoint " + path);
  return it->second;
}

}  // namespace

Json resolve_request(const std::string& path, const Json& body) {
  return endpoint(path).resolve(body);
}

ApiResponse handle_request(const std::string& method, const std::string& path,
                           const std::string& body) {
  try {
    if (method == "GET") {
      if (path == "/v1/health") return {200, health_body()};
      if (path == "/v1/schema") return {200, api_schema()};
      if (post_endpoints().count(path)) {
        return {405, error_json(ErrorCode::Validation, path + " accepts POST only")};
      }
      fail(ErrorCode::NotFound, "no endpoint " + path);
    }
    require(method == "POST", ErrorCode::Validation, "unsupported method " + method);
    const Endpoint& ep = endpoint(path);
    return {200, ep.run(ep.resolve(parse_json(body)))};
  } catch (const Error& e) {
    return {http_status(e.code()), error_json(e.code(), e.what())};
  } catch (const std::exception& e) {
    return {500, Json{{"code", "E_INTERNAL"}, {"message", e.what()}}};
  }
}

namespace {

Json object_schema(Json properties, std::vector<std::string> required = {}) {
  return Json{{"type", "object"}, {"properties", std::move(properties)}, {"required", std::move(required)}};
}

Json ref(const std::string& name) { return Json{{"$ref", "#/definitions/" + name}}; }

const Json kNumber{{"type", "number"}};
const Json kInteger{{"type", "integer"}};
const Json kString{{"type", "string"}};
const Json kBoolean{{"type", "boolean"}};

}  // namespace

Json api_schema() {
  Json defs;
  defs["ModelSpec"] = object_schema(
      {{"family", {{"enum", {"binary", "continuous", "count"}}}},
       {"arms", {{"enum", {1, 2, "one", "two"}}}},
       {"prior", {{"oneOf", {object_schema({{"a1", kNumber}, {"b1", kNumber}, {"a0", kNumber}, {"b0", kNumber}}),
                             Json{{"type", "array"}, {"items", kNumber}}}}}},
       {"sigma", kNumber},
       {"improper_epsilon", kNumber}});
  defs["HypothesisSpec"] =
      object_schema({{"theta_star", kNumber}, {"q", kNumber}, {"theta0_ref", kNumber}}, {"theta_star"});
  defs["EvidenceSpec"] = Json{{"oneOf", {object_schema({{"e", kNumber}}, {"e"}),
                                         object_schema({{"ybar1", kNumber}, {"ybar0", kNumber}},
                                                       {"ybar1", "ybar0"})}}};
  defs["PosteriorOptions"] = object_schema(
      {{"tolerance", kNumber}, {"max_subdivisions", kInteger}, {"degenerate", {{"enum", {"error", "regularize"}}}}});
  defs["NminOptions"] = object_schema({{"n_max", kInteger},
                                       {"verify_span", kInteger},
                                       {"grid_step", kNumber},
                                       {"pairs_scan_max", kInteger},
                                       {"tolerance", kNumber}});
  defs["SearchOptions"] = object_schema({{"nmin", ref("NminOptions")}, {"posterior", ref("PosteriorOptions")}});
  defs["RngSeed"] = Json{{"oneOf", {kInteger, object_schema({{"seed", kInteger}, {"stream_id", kInteger}}, {"seed"})}}};
  defs["TruthPair"] = object_schema({{"theta1", kNumber}, {"theta0", kNumber}}, {"theta1", "theta0"});
  defs["TrialData"] = object_schema(
      {{"n", kInteger}, {"sum1", kNumber}, {"sum0", kNumber}, {"ybar1", kNumber}, {"ybar0", kNumber}}, {"n"});
  defs["DesignSpec"] = object_schema({{"kind", {{"enum", {"bess_ssr", "bess_ssr_cap", "standard_sse", "standard_sse_interim"}}}},
                                      {"n_total", kInteger},
                                      {"c", kNumber},
                                      {"c_star", kNumber},
                                      {"alpha", kNumber},
                                      {"e", kNumber},
                                      {"model", ref("ModelSpec")},
                                      {"hypothesis", ref("HypothesisSpec")},
                                      {"ssr_n_max", kInteger},
                                      {"ssr_search", ref("SearchOptions")}});
  defs["TruthScenario"] = object_schema({{"kind", {{"enum", {"fixed", "random"}}}},
                                         {"null_truth", ref("TruthPair")},
                                         {"alt_truth", ref("TruthPair")},
                                         {"margin", kNumber},
                                         {"upper", kNumber},
                                         {"ceiling", kNumber},
                                         {"q", kNumber}});
  defs["ApiError"] = object_schema({{"code", kString}, {"message", kString}, {"details", Json::object()}},
                                   {"code", "message"});

  Json paths;
  paths["/v1/sample-size"] = {
      {"method", "POST"},
      {"request", object_schema({{"model", ref("ModelSpec")},
                                 {"hypothesis", ref("HypothesisSpec")},
                                 {"evidence", ref("EvidenceSpec")},
                                 {"c", kNumber},
                                 {"n_max", kInteger},
                                 {"search", ref("SearchOptions")}},
                                {"model", "hypothesis", "evidence", "c"})},
      {"response", "SampleSizeResult"}};
  paths["/v1/confidence"] = {
      {"method", "POST"},
      {"request", object_schema({{"model", ref("ModelSpec")},
                                 {"hypothesis", ref("HypothesisSpec")},
                                 {"evidence", ref("EvidenceSpec")},
                                 {"n", kInteger},
                                 {"method", {{"enum", {"quadrature", "monte_carlo"}}}},
                                 {"draws", kInteger},
                                 {"seed", ref("RngSeed")},
                                 {"posterior", ref("PosteriorOptions")}},
                                {"model", "hypothesis", "evidence", "n"})},
      {"response", "PosteriorResult"}};
  paths["/v1/evidence-table"] = {
      {"method", "POST"},
      {"request", object_schema({{"model", ref("ModelSpec")},
                                 {"hypothesis", ref("HypothesisSpec")},
                                 {"n", kInteger},
                                 {"evidence_grid", {{"oneOf", {Json{{"type", "array"}, {"items", kNumber}},
                                                               object_schema({{"lo", kNumber}, {"hi", kNumber}, {"step", kNumber}},
                                                                             {"lo", "hi", "step"})}}}},
                                 {"control_mean", kNumber},
                                 {"posterior", ref("PosteriorOptions")}},
                                {"model", "hypothesis", "n", "evidence_grid"})},
      {"response", "{n, rows: [EvidenceConfidenceRow], epsilon_used}"}};
  paths["/v1/nmin"] = {{"method", "POST"},
                       {"request", object_schema({{"model", ref("ModelSpec")},
                                                  {"hypothesis", ref("HypothesisSpec")},
                                                  {"evidence", ref("EvidenceSpec")},
                                                  {"nmin", ref("NminOptions")},
                                                  {"posterior", ref("PosteriorOptions")}},
                                                 {"model", "hypothesis", "evidence"})},
                       {"response", "NminResult"}};
  paths["/v1/ssr"] = {{"method", "POST"},
                      {"request", object_schema({{"model", ref("ModelSpec")},
                                                 {"hypothesis", ref("HypothesisSpec")},
                                                 {"interim", ref("TrialData")},
                                                 {"n_total", kInteger},
                                                 {"c", kNumber},
                                                 {"c_star", kNumber},
                                                 {"cap", kBoolean},
                                                 {"n_max", kInteger},
                                                 {"search", ref("SearchOptions")}},
                                                {"interim", "n_total"})},
                      {"response", "SsrOutcome"}};
  paths["/v1/simulate"] = {
      {"method", "POST"},
      {"request", object_schema({{"study", {{"enum", {"error_rate", "matched", "sensitivity", "designs"}}}},
                                 {"seed", ref("RngSeed")},
                                 {"trials", {{"type", "integer"}, {"minimum", 1}, {"maximum", kMaxServiceTrials}}},
                                 {"designs", {{"type", "array"}, {"items", ref("DesignSpec")}}},
                                 {"scenario", ref("TruthScenario")},
                                 {"n_totals", {{"type", "array"}, {"items", kInteger}}},
                                 {"k", {{"type", "array"}, {"items", kNumber}}}},
                                {"study", "seed"})},
      {"response", "{study, result}"}};
  paths["/v1/frequentist/sse"] = {
      {"method", "POST"},
      {"request", object_schema({{"test", {{"enum", {"superiority", "noninferiority"}}}},
                                 {"alpha", kNumber},
                                 {"beta", kNumber},
                                 {"theta1", kNumber},
                                 {"theta0", kNumber},
                                 {"theta_star", kNumber},
                                 {"p1", kNumber},
                                 {"p0", kNumber},
                                 {"margin", kNumber}},
                                {"test", "alpha", "beta"})},
      {"response", "{test, n}"}};
  paths["/v1/health"] = {{"method", "GET"}, {"response", "{status, service, version}"}};
  paths["/v1/schema"] = {{"method", "GET"}, {"response", "this document"}};

  return Json{{"$schema", "http://json-schema.org/draft-07/schema#"},
              {"title", "bess service"},
              {"version", version()},
              {"definitions", defs},
              {"paths", paths},
              {"errors", {{"400", "validation and precondition failures"},
                          {"404", "E_NOT_FOUND"},
                          {"422", {"E_NMAX_EXCEEDED", "E_TOO_MANY_TRIALS"}},
                          {"500", "E_QUADRATURE_CONVERGENCE"}}}};
}

ServerConfig load_server_config(const std::optional<std::string>& path) {
  ServerConfig cfg;
  std::optional<std::string> file = path;
  if (!file) {
    if (const char* env = std::getenv("BESS_CONFIG")) file = env;
  }
  if (file) {
    std::ifstream in(*file);
    require(in.good(), ErrorCode::Validation, "cannot read config file " + *file);
    std::stringstream text;
    text << in.rdbuf();
    const Json j = parse_json(text.str());
    cfg.host = field_or<std::string>(j, "host", cfg.host);
    cfg.port = int_field_or(j, "port", cfg.port);
    cfg.cors_origin = field_or<std::string>(j, "cors_origin", cfg.cors_origin);
  }
  if (const char* env = std::getenv("BESS_HOST")) cfg.host = env;
  if (const char* env = std::getenv("BESS_PORT")) {
    try {
      cfg.port = std::stoi(env);
    } catch (const std::exception&) {
      fail(ErrorCode::Validation, std::string("BESS_PORT is not a port: ") + env);
    }
  }
  if (const char* env = std::getenv("BESS_CORS_ORIGIN")) cfg.cors_origin = env;
  require(cfg.port > 0 && cfg.port < 65536, ErrorCode::Validation, "port must lie in [1, 65535]");
  return cfg;
}

}  // namespace bess
