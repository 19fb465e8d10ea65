// bess: command-line front end. Every computation goes through the same
// request handler as the HTTP service, so --output json prints exactly the
// service response body.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bess/service.hpp"

namespace {

using bess::Json;

enum class Output { Table, Json, Csv };

struct ModelFlags {
  std::string family = "binary";
  int arms = 2;
  std::string prior;
  std::optional<double> sigma;
  std::optional<double> theta_star;
  std::optional<double> theta0;
  std::optional<double> q;
  std::optional<double> epsilon;
  std::optional<double> tolerance;
};

struct EvidenceFlags {
  std::optional<double> e;
  std::optional<double> ybar1;
  std::optional<double> ybar0;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--model", f.family, "Outcome family")
      ->check(CLI::IsMember({"binary", "continuous", "count"}))
      ->capture_default_str();
  cmd->add_option("--arms", f.arms, "Number of arms")->check(CLI::IsMember({1, 2}))->capture_default_str();
  cmd->add_option("--prior", f.prior, "Prior hyperparameters a,b[,a0,b0]");
  cmd->add_option("--sigma", f.sigma, "Known outcome SD (continuous)");
  cmd->add_option("--theta-star", f.theta_star, "Hypothesis boundary")->required();
  cmd->add_option("--theta0", f.theta0, "Known reference rate (one arm)");
  cmd->add_option("--q", f.q, "Prior probability of H1");
  cmd->add_option("--epsilon", f.epsilon, "Stand-in for zero Beta parameters in prior masses");
  cmd->add_option("--tolerance", f.tolerance, "Absolute quadrature tolerance");
}

void add_evidence_flags(CLI::App* cmd, EvidenceFlags& f) {
  auto* e = cmd->add_option("--e", f.e, "Evidence (effect)");
  auto* y1 = cmd->add_option("--ybar1", f.ybar1, "Treatment arm mean");
  auto* y0 = cmd->add_option("--ybar0", f.ybar0, "Control arm mean");
  e->excludes(y1)->excludes(y0);
  y1->needs(y0);
  y0->needs(y1);
}

std::vector<double> parse_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      bess::require(used == item.size(), bess::ErrorCode::Validation, "bad number '" + item + "'");
    } catch (const std::logic_error&) {
      bess::fail(bess::ErrorCode::Validation, "bad number '" + item + "' in '" + text + "'");
    }
  }
  return out;
}

Json model_json(const ModelFlags& f) {
  Json m{{"family", f.family}, {"arms", f.arms}};
  if (!f.prior.empty()) m["prior"] = parse_numbers(f.prior, ',');
  if (f.sigma) m["sigma"] = *f.sigma;
  if (f.epsilon) m["improper_epsilon"] = *f.epsilon;
  return m;
}

Json hypothesis_json(const ModelFlags& f) {
  Json h{{"theta_star", *f.theta_star}};
  if (f.q) h["q"] = *f.q;
  if (f.theta0) h["theta0_ref"] = *f.theta0;
  return h;
}

Json evidence_json(const EvidenceFlags& f) {
  if (f.ybar1) return Json{{"ybar1", *f.ybar1}, {"ybar0", *f.ybar0}};
  bess::require(f.e.has_value(), bess::ErrorCode::Validation, "give --e or --ybar1/--ybar0");
  return Json{{"e", *f.e}};
}

Json posterior_json(const ModelFlags& f) {
  Json p = Json::object();
  if (f.tolerance) p["tolerance"] = *f.tolerance;
  return p;
}

// One service call with its rendering. Presets run several.
struct Call {
  std::string path;
  Json request;
};

std::string cell(const Json& v, bool rounded) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float() && rounded) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v.get<double>());
    return buf;
  }
  if (v.is_array()) {
    std::string out;
    for (const auto& x : v) out += (out.empty() ? "" : ";") + cell(x, rounded);
    return out;
  }
  return v.dump();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (!(j.is_array() && !j.empty() && j.front().is_structured())) {
    out.emplace_back(prefix, j);
  }
}

struct Grid {
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;
};

Grid grid_from_objects(const Json& items) {
  Grid g;
  for (const auto& item : items) {
    std::vector<std::pair<std::string, Json>> flat;
    flatten(item, "", flat);
    if (g.header.empty()) {
      for (const auto& [k, v] : flat) g.header.push_back(k);
    }
    std::vector<Json> row(g.header.size());
    for (const auto& [k, v] : flat) {
      for (std::size_t i = 0; i < g.header.size(); ++i) {
        if (g.header[i] == k) row[i] = v;
      }
    }
    g.rows.push_back(std::move(row));
  }
  return g;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void print_csv(const Grid& g) {
  std::string line;
  for (std::size_t i = 0; i < g.header.size(); ++i) line += (i ? "," : "") + csv_field(g.header[i]);
  std::cout << line << "\r\n";
  for (const auto& row : g.rows) {
    line.clear();
    for (std::size_t i = 0; i < row.size(); ++i) line += (i ? "," : "") + csv_field(cell(row[i], false));
    std::cout << line << "\r\n";
  }
}

void print_table(const Grid& g) {
  std::vector<std::size_t> width(g.header.size());
  std::vector<std::vector<std::string>> text;
  for (std::size_t i = 0; i < g.header.size(); ++i) width[i] = g.header[i].size();
  for (const auto& row : g.rows) {
    std::vector<std::string> t;
    for (std::size_t i = 0; i < row.size(); ++i) {
      t.push_back(cell(row[i], true));
      width[i] = std::max(width[i], t.back().size());
    }
    text.push_back(std::move(t));
  }
  const auto emit = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      std::string c = cells[i];
      c.resize(width[i], ' ');
      line += (i ? "  " : "") + c;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    std::cout << line << "\n";
  };
  emit(g.header);
  for (const auto& t : text) emit(t);
}

void print_pairs(const Json& body) {
  std::vector<std::pair<std::string, Json>> flat;
  flatten(body, "", flat);
  std::size_t width = 0;
  for (const auto& [k, v] : flat) width = std::max(width, k.size());
  for (const auto& [k, v] : flat) {
    std::string key = k;
    key.resize(width, ' ');
    std::cout << key << "  " << cell(v, true) << "\n";
  }
}

// Rows shown by table and csv output. Results with a natural row list use
// it; anything else is one flattened record.
Grid result_grid(const std::string& path, const std::vector<Json>& bodies) {
  if (path == "/v1/evidence-table") return grid_from_objects(bodies.front().at("rows"));
  if (path == "/v1/simulate") {
    const auto& first = bodies.front();
    if (first.at("study") == "designs") return grid_from_objects(first.at("result").at("summary"));
    if (first.at("study") == "matched") {
      Json rows = Json::array();
      for (const auto& b : bodies) {
        const auto& r = b.at("result");
        const auto& oc = r.at("bess_oc");
        const auto& sse = r.at("sse_oc");
        rows.push_back(Json{{"e", b.at("request_e")},
                            {"c", b.at("request_c")},
                            {"n", r.at("bess").at("n")},
                            {"alpha", oc.at("type1")},
                            {"power", oc.at("power")},
                            {"fdr", oc.at("fdr")},
                            {"for", oc.at("for")},
                            {"n_sse", r.at("n_sse")},
                            {"sse_alpha", sse.at("type1")},
                            {"sse_power", sse.at("power")},
                            {"sse_fdr", sse.at("fdr")},
                            {"sse_for", sse.at("for")}});
      }
      return grid_from_objects(rows);
    }
  }
  Json items = Json::array();
  for (const auto& b : bodies) items.push_back(b);
  return grid_from_objects(items);
}

struct Preset {
  std::string provenance;
  std::vector<std::string> derived;
};

int run_calls(const std::vector<Call>& calls, Output output, const std::optional<Preset>& preset) {
  std::ostream& info = output == Output::Table ? std::cout : std::cerr;
  std::vector<Json> resolved;
  try {
    for (const auto& call : calls) resolved.push_back(bess::resolve_request(call.path, call.request));
  } catch (const bess::Error& e) {
    std::cerr << bess::to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
  if (preset) {
    info << "preset: " << preset->provenance << "\n";
    for (const auto& d : preset->derived) info << "[warning] derived parameter: " << d << "\n";
  }
  info << "configuration:\n";
  for (std::size_t i = 0; i < calls.size(); ++i) info << calls[i].path << " " << resolved[i].dump() << "\n";
  info.flush();

  std::vector<Json> bodies;
  for (const auto& call : calls) {
    const bess::ApiResponse res = bess::handle_request("POST", call.path, call.request.dump());
    if (res.status != 200) {
      std::cerr << res.body.value("code", "E_INTERNAL") << ": " << res.body.value("message", "") << "\n";
      return 1;
    }
    bodies.push_back(res.body);
  }

  if (output == Output::Json) {
    if (bodies.size() == 1) {
      std::cout << bodies.front().dump() << "\n";
    } else {
      Json all = Json::array();
      for (const auto& b : bodies) all.push_back(b);
      std::cout << all.dump() << "\n";
    }
    return 0;
  }

  // Row renderers for matched presets need the grid coordinates.
  std::vector<Json> shown = bodies;
  for (std::size_t i = 0; i < shown.size(); ++i) {
    if (resolved[i].contains("study") && resolved[i].at("study") == "matched") {
      shown[i]["request_e"] = resolved[i].at("e");
      shown[i]["request_c"] = resolved[i].at("c");
    }
  }
  const std::string& path = calls.front().path;
  const bool one_record = shown.size() == 1 && path != "/v1/evidence-table" &&
                          !(path == "/v1/simulate" && shown.front().at("study") != "error_rate" &&
                            shown.front().at("study") != "sensitivity");
  if (output == Output::Table && one_record) {
    print_pairs(shown.front());
  } else if (output == Output::Table) {
    print_table(result_grid(path, shown));
  } else {
    print_csv(result_grid(path, shown));
  }
  return 0;
}

Json binary_two_arm(double prior) {
  return Json{{"family", "binary"}, {"arms", 2}, {"prior", {prior, prior, prior, prior}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian evidence-based sample size toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output_name = "table";
  app.add_option("--output", output_name, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();

  std::vector<Call> calls;
  std::optional<Preset> preset;

  ModelFlags n_model;
  EvidenceFlags n_evidence;
  double n_c = 0.8;
  int n_max = 10000;
  auto* n_cmd = app.add_subcommand("n", "Sample size for evidence e and confidence c");
  add_model_flags(n_cmd, n_model);
  add_evidence_flags(n_cmd, n_evidence);
  n_cmd->add_option("--c", n_c, "Target confidence")->required();
  n_cmd->add_option("--n-max", n_max, "Largest n searched")->capture_default_str();
  n_cmd->callback([&] {
    Json req{{"model", model_json(n_model)},
             {"hypothesis", hypothesis_json(n_model)},
             {"evidence", evidence_json(n_evidence)},
             {"c", n_c},
             {"n_max", n_max}};
    if (n_model.tolerance) req["search"] = Json{{"posterior", posterior_json(n_model)}};
    calls.push_back({"/v1/sample-size", req});
  });

  ModelFlags conf_model;
  EvidenceFlags conf_evidence;
  int conf_n = 0;
  std::optional<long long> conf_draws;
  std::uint64_t conf_seed = 2024;
  auto* conf_cmd = app.add_subcommand("confidence", "Posterior probability of H1 at n");
  add_model_flags(conf_cmd, conf_model);
  add_evidence_flags(conf_cmd, conf_evidence);
  conf_cmd->add_option("--n", conf_n, "Patients per arm")->required();
  conf_cmd->add_option("--mc-draws", conf_draws, "Use Monte Carlo with this many draws");
  conf_cmd->add_option("--seed", conf_seed, "Monte Carlo seed")->capture_default_str();
  conf_cmd->callback([&] {
    Json req{{"model", model_json(conf_model)},
             {"hypothesis", hypothesis_json(conf_model)},
             {"evidence", evidence_json(conf_evidence)},
             {"n", conf_n},
             {"posterior", posterior_json(conf_model)}};
    if (conf_draws) {
      req["method"] = "monte_carlo";
      req["draws"] = *conf_draws;
      req["seed"] = conf_seed;
    }
    calls.push_back({"/v1/confidence", req});
  });

  ModelFlags table_model;
  int table_n = 0;
  std::string e_grid;
  std::optional<double> control_mean;
  auto* table_cmd = app.add_subcommand("table", "Confidence across an evidence grid at fixed n");
  add_model_flags(table_cmd, table_model);
  table_cmd->add_option("--n", table_n, "Patients per arm")->required();
  table_cmd->add_option("--e-grid", e_grid, "Evidence grid lo:hi:step or a comma list")->required();
  table_cmd->add_option("--control-mean", control_mean, "Control mean for two-arm count tables");
  table_cmd->callback([&] {
    Json grid;
    if (e_grid.find(':') != std::string::npos) {
      const auto parts = parse_numbers(e_grid, ':');
      bess::require(parts.size() == 3, bess::ErrorCode::Validation, "--e-grid takes lo:hi:step");
      grid = Json{{"lo", parts[0]}, {"hi", parts[1]}, {"step", parts[2]}};
    } else {
      grid = parse_numbers(e_grid, ',');
    }
    Json req{{"model", model_json(table_model)},
             {"hypothesis", hypothesis_json(table_model)},
             {"n", table_n},
             {"evidence_grid", grid},
             {"posterior", posterior_json(table_model)}};
    if (control_mean) req["control_mean"] = *control_mean;
    calls.push_back({"/v1/evidence-table", req});
  });

  ModelFlags nmin_model;
  EvidenceFlags nmin_evidence;
  int nmin_n_max = 10000;
  auto* nmin_cmd = app.add_subcommand("nmin", "Smallest n from which confidence grows with n");
  add_model_flags(nmin_cmd, nmin_model);
  add_evidence_flags(nmin_cmd, nmin_evidence);
  nmin_cmd->add_option("--n-max", nmin_n_max, "Largest n checked")->capture_default_str();
  nmin_cmd->callback([&] {
    calls.push_back({"/v1/nmin",
                     Json{{"model", model_json(nmin_model)},
                          {"hypothesis", hypothesis_json(nmin_model)},
                          {"evidence", evidence_json(nmin_evidence)},
                          {"nmin", {{"n_max", nmin_n_max}}},
                          {"posterior", posterior_json(nmin_model)}}});
  });

  auto* freq_cmd = app.add_subcommand("freq", "Frequentist two-proportion sample size");
  freq_cmd->require_subcommand(1);
  freq_cmd->fallthrough();
  double f_alpha = 0.05, f_beta = 0.2, f_theta1 = 0, f_theta0 = 0, f_theta_star = 0;
  auto* sup_cmd = freq_cmd->add_subcommand("superiority", "One-sided superiority z-test");
  sup_cmd->add_option("--alpha", f_alpha, "Type I error rate")->required();
  sup_cmd->add_option("--beta", f_beta, "Type II error rate")->required();
  sup_cmd->add_option("--theta1", f_theta1, "Treatment rate")->required();
  sup_cmd->add_option("--theta0", f_theta0, "Control rate")->required();
  sup_cmd->add_option("--theta-star", f_theta_star, "Superiority margin")->capture_default_str();
  sup_cmd->callback([&] {
    calls.push_back({"/v1/frequentist/sse", Json{{"test", "superiority"},
                                                 {"alpha", f_alpha},
                                                 {"beta", f_beta},
                                                 {"theta1", f_theta1},
                                                 {"theta0", f_theta0},
                                                 {"theta_star", f_theta_star}}});
  });
  double ni_p1 = 0, ni_p0 = 0, ni_margin = 0, ni_alpha = 0.05, ni_beta = 0.2;
  auto* ni_cmd = freq_cmd->add_subcommand("noninferiority", "Non-inferiority z-test");
  ni_cmd->add_option("--p1", ni_p1, "Treatment rate")->required();
  ni_cmd->add_option("--p0", ni_p0, "Control rate")->required();
  ni_cmd->add_option("--margin", ni_margin, "Non-inferiority margin")->required();
  ni_cmd->add_option("--alpha", ni_alpha, "Type I error rate")->required();
  ni_cmd->add_option("--beta", ni_beta, "Type II error rate")->required();
  ni_cmd->callback([&] {
    calls.push_back({"/v1/frequentist/sse", Json{{"test", "noninferiority"},
                                                 {"p1", ni_p1},
                                                 {"p0", ni_p0},
                                                 {"margin", ni_margin},
                                                 {"alpha", ni_alpha},
                                                 {"beta", ni_beta}}});
  });

  auto* sim_cmd = app.add_subcommand("sim", "Simulation presets");
  sim_cmd->require_subcommand(1);
  sim_cmd->fallthrough();
  std::optional<long long> sim_trials;
  std::uint64_t sim_seed = 2024;
  const auto add_sim_flags = [&](CLI::App* cmd) {
    cmd->add_option("--trials", sim_trials, "Trials per hypothesis");
    cmd->add_option("--seed", sim_seed, "Random seed")->capture_default_str();
  };

  auto* t2_cmd = sim_cmd->add_subcommand("table2", "BESS vs oracle SSE across e and c");
  add_sim_flags(t2_cmd);
  t2_cmd->callback([&] {
    preset = Preset{"matched BESS and oracle SSE grid, source Table 2 (two-arm binary, improper prior)",
                    {"theta_star=0.05", "improper_epsilon=1e-4"}};
    for (double e : {0.10, 0.15, 0.20}) {
      for (double c : {0.7, 0.8, 0.9}) {
        calls.push_back({"/v1/simulate", Json{{"study", "matched"},
                                              {"model", binary_two_arm(0.0)},
                                              {"hypothesis", {{"theta_star", 0.05}}},
                                              {"e", e},
                                              {"c", c},
                                              {"trials", sim_trials.value_or(10000)},
                                              {"seed", sim_seed}}});
      }
    }
  });

  auto* mis_cmd = sim_cmd->add_subcommand("misspecified", "Oracle SSE planned at theta0 + e");
  add_sim_flags(mis_cmd);
  mis_cmd->callback([&] {
    preset = Preset{"mis-specified SSE grid, source Table A.2 (planned theta1 = 0.25 + e)",
                    {"theta_star=0.05", "improper_epsilon=1e-4"}};
    for (double e : {0.10, 0.20}) {
      for (double c : {0.7, 0.8, 0.9}) {
        calls.push_back({"/v1/simulate", Json{{"study", "matched"},
                                              {"model", binary_two_arm(0.0)},
                                              {"hypothesis", {{"theta_star", 0.05}}},
                                              {"e", e},
                                              {"c", c},
                                              {"planned", {{"theta1", 0.25 + e}, {"theta0", 0.25}}},
                                              {"trials", sim_trials.value_or(10000)},
                                              {"seed", sim_seed}}});
      }
    }
  });

  int sens_n0 = 10;
  auto* sens_cmd = sim_cmd->add_subcommand("sensitivity", "Sample size under history-built priors");
  add_sim_flags(sens_cmd);
  sens_cmd->add_option("--n0", sens_n0, "Historical patients per arm")->capture_default_str();
  sens_cmd->callback([&] {
    preset = Preset{"prior sensitivity, source section on informative priors (e=0.15, c=0.8)",
                    {"theta_star=0.05", "zero history parameters replaced by 0.5"}};
    calls.push_back({"/v1/simulate", Json{{"study", "sensitivity"},
                                          {"n0", sens_n0},
                                          {"trials", sim_trials.value_or(1000)},
                                          {"seed", sim_seed}}});
  });

  std::string scenario = "fixed";
  std::vector<int> n_totals{20, 30, 40, 50, 60, 70, 80, 90, 100};
  bool no_interim = false;
  auto* des_cmd = sim_cmd->add_subcommand("designs", "Interim designs across n_total");
  add_sim_flags(des_cmd);
  des_cmd->add_option("--scenario", scenario, "Truth scenario")
      ->check(CLI::IsMember({"fixed", "random"}))
      ->capture_default_str();
  des_cmd->add_option("--n-totals", n_totals, "Planned patients per arm")->delimiter(',');
  des_cmd->add_flag("--no-interim", no_interim, "Compare the standard designs with interim stops disabled (c = 1, c* = 0)");
  des_cmd->callback([&] {
    preset = Preset{"interim design comparison, source section on sample size re-estimation",
                    {"theta_star=-0.07 (margin 0.07, arm 1 = low dose)", "ssr_n_max=1000",
                     "prior Beta(0.05, 0.05) per arm"}};
    Json designs = Json::array();
    std::vector<std::string> kinds{"standard_sse", "standard_sse_interim"};
    if (!no_interim) kinds.insert(kinds.begin(), {"bess_ssr", "bess_ssr_cap"});
    for (const auto& kind : kinds) {
      Json d{{"kind", kind}};
      if (no_interim) {
        d["c"] = 1.0;
        d["c_star"] = 0.0;
      }
      designs.push_back(d);
    }
    calls.push_back({"/v1/simulate", Json{{"study", "designs"},
                                          {"designs", designs},
                                          {"scenario", {{"kind", scenario}}},
                                          {"n_totals", n_totals},
                                          {"trials", sim_trials.value_or(1000)},
                                          {"seed", sim_seed}}});
  });

  std::optional<std::string> serve_host;
  std::optional<int> serve_port;
  std::optional<std::string> serve_config;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP JSON service");
  serve_cmd->add_option("--host", serve_host, "Listen address");
  serve_cmd->add_option("--port", serve_port, "Listen port");
  serve_cmd->add_option("--config", serve_config, "JSON config file with host, port, cors_origin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const bess::Error& e) {
    std::cerr << bess::to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  }

  if (serve_cmd->parsed()) {
    try {
      bess::ServerConfig cfg = bess::load_server_config(serve_config);
      if (serve_host) cfg.host = *serve_host;
      if (serve_port) cfg.port = *serve_port;
      std::cout << "configuration: host=" << cfg.host << " port=" << cfg.port
                << " cors_origin=" << cfg.cors_origin << std::endl;
      return bess::run_server(cfg);
    } catch (const bess::Error& e) {
      std::cerr << bess::to_string(e.code()) << ": " << e.what() << "\n";
      return 1;
    }
  }

  const Output output = output_name == "json" ? Output::Json : output_name == "csv" ? Output::Csv : Output::Table;
  return run_calls(calls, output, preset);
}
