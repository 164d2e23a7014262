// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <string>

#include "voicelens/llm_annotator.hpp"

namespace voicelens::llm {

inline constexpr const char* kApiKeyEnv = "VOICELENS_LLM_API_KEY";

// Chat-completions client (OpenAI-compatible wire format). The whole prompt
// goes out as a single user message; the reply text is
// choices[0].message.content.
class HttpChatProvider final : public LlmProvider {
 public:
  // `endpoint` is a full URL such as https://api.openai.com/v1/chat/completions.
  // Throws kProviderUnavailable if `api_key` is empty.
  HttpChatProvider(std::string endpoint, std::string api_key,
                   std::chrono::seconds timeout = std::chrono::seconds(120));

  // Reads the key from VOICELENS_LLM_API_KEY.
  static HttpChatProvider from_env(std::string endpoint);

  LlmResponse complete(const LlmRequest& request) override;

  // Request body for the chat API.
  static std::string request_body(const LlmRequest& request);
  // Extracts the reply text; throws kProviderError on an unexpected shape.
  static std::string reply_text(std::string_view response_body);

 private:
  std::string scheme_host_port_;
  std::string path_;
  std::string api_key_;
  std::chrono::seconds timeout_;
};

}  // namespace voicelens::llm
