#pragma once

#include <chrono>
#include <memory>
#include <semaphore>
#include <string>

#include "dct/lm.hpp"

namespace dct {

struct EndpointSettings {
  std::string base_url = "http://127.0.0.1:8000";  ///< scheme://host[:port]
  std::string path = "/v1/completions";
  std::string model;
  std::string token;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  std::chrono::seconds timeout{120};
  int max_in_flight = 4;

  /// Overrides base_url/model/token from DCT_LM_ENDPOINT, DCT_LM_MODEL, DCT_LM_TOKEN when set.
  void apply_environment();
};

/// Completions client over HTTP. Request body: {model, prompt, temperature, top_p,
/// max_tokens, stop, logprobs}; response: choices[0].text and optional
/// choices[0].logprobs.{tokens, token_logprobs, top_logprobs}.
class HttpCompletionClient final : public LanguageModel {
 public:
  explicit HttpCompletionClient(EndpointSettings settings);

  CompletionResult complete(std::string_view prompt, const SamplingParams& params) override;

  const EndpointSettings& settings() const { return settings_; }

 private:
  EndpointSettings settings_;
  std::unique_ptr<std::counting_semaphore<>> in_flight_;
};

/// Request JSON for one completion call (exposed for wire-format tests).
std::string completion_request_body(const std::string& model, std::string_view prompt, const SamplingParams& params);

/// Parses a completions response body. Throws Error when no choice is present.
CompletionResult parse_completion_response(std::string_view body);

}  // namespace dct
