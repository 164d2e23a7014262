// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/http_provider.hpp"

#include <cstdlib>

#include <httplib.h>

#include "voicelens/error.hpp"

namespace voicelens::llm {

HttpChatProvider::HttpChatProvider(std::string endpoint, std::string api_key,
                                   std::chrono::seconds timeout)
    : api_key_(std::move(api_key)), timeout_(timeout) {
  if (api_key_.empty()) {
    throw Error(Errc::kProviderUnavailable, std::string("no API key (set ") + kApiKeyEnv + ")");
  }
  const auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(Errc::kInvalidArgument, "endpoint must be a full URL: " + endpoint);
  }
  const auto path_start = endpoint.find('/', scheme_end + 3);
  scheme_host_port_ = endpoint.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : endpoint.substr(path_start);
}

HttpChatProvider HttpChatProvider::from_env(std::string endpoint) {
  const char* key = std::getenv(kApiKeyEnv);
  return HttpChatProvider(std::move(endpoint), key ? key : "");
}

std::string HttpChatProvider::request_body(const LlmRequest& request) {
  nlohmann::ordered_json body;
  body["model"] = request.model_name;
  body["temperature"] = request.temperature;
  body["messages"] = nlohmann::ordered_json::array(
      {nlohmann::ordered_json{{"role", "user"}, {"content", request.prompt_text}}});
  return body.dump();
}

std::string HttpChatProvider::reply_text(std::string_view response_body) {
  const auto j = nlohmann::json::parse(response_body, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::kProviderError, "response is not JSON");
  try {
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kProviderError, std::string("unexpected response shape: ") + e.what());
  }
}

LlmResponse HttpChatProvider::complete(const LlmRequest& request) {
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_bearer_token_auth(api_key_);
  auto res = client.Post(path_, request_body(request), "application/json");
  if (!res) {
    throw Error(Errc::kProviderUnavailable,
                scheme_host_port_ + ": " + httplib::to_string(res.error()));
  }
  if (res->status == 401 || res->status == 403 || res->status == 404) {
    throw Error(Errc::kProviderUnavailable, "HTTP " + std::to_string(res->status));
  }
  if (res->status != 200) {
    throw Error(Errc::kProviderError, "HTTP " + std::to_string(res->status) + ": " + res->body);
  }
  return {reply_text(res->body)};
}

}  // namespace voicelens::llm
