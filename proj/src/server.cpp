#include <httplib.h>

#include <cstdio>

#include "bess/service.hpp"

namespace bess {

int run_server(const ServerConfig& config) {
  httplib::Server server;
  server.set_default_headers({{"Access-Control-Allow-Origin", config.cors_origin},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

  const auto reply = [](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse out = handle_request(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  server.Get(R"(/v1/.*)", reply);
  server.Post(R"(/v1/.*)", reply);
  server.Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  if (!server.bind_to_port(config.host, config.port)) {
    std::fprintf(stderr, "cannot listen on %s:%d\n", config.host.c_str(), config.port);
    return 1;
  }
  std::fprintf(stderr, "bess %s listening on http://%s:%d\n", version().c_str(), config.host.c_str(),
               config.port);
  return server.listen_after_bind() ? 0 : 1;
}

}  // namespace bess
