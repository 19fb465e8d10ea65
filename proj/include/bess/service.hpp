#pragma once

#include <optional>
#include <string>

#include "bess/serialization.hpp"

namespace bess {

std::string version();

struct ApiResponse {
  int status = 200;
  Json body;
};

/// HTTP status carried by each error code.
int http_status(ErrorCode code);

/// The request body with every default filled in, as the handler will use
/// it. Throws Error on invalid input.
Json resolve_request(const std::string& path, const Json& body);

/// Runs one API call. Never throws; failures come back as ApiError bodies.
ApiResponse handle_request(const std::string& method, const std::string& path,
                           const std::string& body);

/// Machine-readable description of every endpoint and its bodies.
Json api_schema();

/// Largest trial count /v1/simulate accepts per hypothesis.
inline constexpr long long kMaxServiceTrials = 100000;

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string cors_origin = "*";
};

/// Defaults, then the JSON config file (path argument or BESS_CONFIG), then
/// BESS_HOST / BESS_PORT / BESS_CORS_ORIGIN.
ServerConfig load_server_config(const std::optional<std::string>& path = std::nullopt);

/// Blocks serving /v1/*. Returns nonzero when the socket cannot be bound.
int run_server(const ServerConfig& config);

}  // namespace bess
