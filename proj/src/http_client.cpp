#include "dct/http_client.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace dct {

using nlohmann::json;

namespace {

// Servers occasionally report rounding noise just above zero.
double checked_logprob(double v) {
  if (v > 1e-6) throw Error("completion response has a positive log-probability " + std::to_string(v));
  return std::min(v, 0.0);
}

}  // namespace

void EndpointSettings::apply_environment() {
  if (const char* v = std::getenv("DCT_LM_ENDPOINT"); v && *v) base_url = v;
  if (const char* v = std::getenv("DCT_LM_MODEL"); v && *v) model = v;
  if (const char* v = std::getenv("DCT_LM_TOKEN"); v && *v) token = v;
}

HttpCompletionClient::HttpCompletionClient(EndpointSettings settings)
    : settings_(std::move(settings)),
      in_flight_(std::make_unique<std::counting_semaphore<>>(std::max(1, settings_.max_in_flight))) {
  if (settings_.max_attempts < 1) throw ContractError("max_attempts must be >= 1");
}

std::string completion_request_body(const std::string& model, std::string_view prompt, const SamplingParams& params) {
  json body = {
      {"model", model},
      {"prompt", std::string(prompt)},
      {"temperature", params.temperature},
      {"top_p", params.top_p},
      {"max_tokens", params.max_tokens},
      {"stop", params.stop_sequences},
      {"logprobs", params.top_logprobs > 0 ? json(params.top_logprobs) : json(nullptr)},
  };
  return body.dump();
}

CompletionResult parse_completion_response(std::string_view body) {
  const json j = json::parse(body);
  if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty())
    throw Error("completion response has no choices");
  const json& choice = j["choices"][0];
  CompletionResult r;
  r.text = choice.value("text", "");
  if (choice.contains("logprobs") && choice["logprobs"].is_object()) {
    const json& lp = choice["logprobs"];
    if (lp.contains("tokens") && lp.contains("token_logprobs")) {
      std::vector<TokenLogprob> toks;
      const auto& names = lp["tokens"];
      const auto& values = lp["token_logprobs"];
      for (std::size_t i = 0; i < names.size() && i < values.size(); ++i) {
        toks.push_back({names[i].get<std::string>(), values[i].is_number() ? checked_logprob(values[i].get<double>()) : 0.0});
      }
      r.token_logprobs = std::move(toks);
    }
    if (lp.contains("top_logprobs") && lp["top_logprobs"].is_array()) {
      for (const auto& pos : lp["top_logprobs"]) {
        std::vector<TokenLogprob> alts;
        if (pos.is_object()) {
          for (const auto& [tok, v] : pos.items()) alts.push_back({tok, checked_logprob(v.get<double>())});
        }
        r.top_logprobs.push_back(std::move(alts));
      }
    }
  }
  return r;
}

CompletionResult HttpCompletionClient::complete(std::string_view prompt, const SamplingParams& params) {
  if (prompt.empty()) throw ContractError("empty prompt");
  params.validate();
  const std::string body = completion_request_body(settings_.model, prompt, params);

  in_flight_->acquire();
  struct Release {
    std::counting_semaphore<>& s;
    ~Release() { s.release(); }
  } release{*in_flight_};

  httplib::Client cli(settings_.base_url);
  cli.set_connection_timeout(settings_.timeout);
  cli.set_read_timeout(settings_.timeout);
  httplib::Headers headers;
  if (!settings_.token.empty()) headers.emplace("Authorization", "Bearer " + settings_.token);

  std::string last_error;
  auto backoff = settings_.initial_backoff;
  for (int attempt = 1; attempt <= settings_.max_attempts; ++attempt) {
    const auto res = cli.Post(settings_.path, headers, body, "application/json");
    if (res && res->status == 200) {
      CompletionResult r = parse_completion_response(res->body);
      r.text = truncate_at_stop(r.text, params.stop_sequences);
      return r;
    }
    if (res && res->status >= 400 && res->status < 500 && res->status != 429)
      throw Error("completion request rejected with HTTP " + std::to_string(res->status) + ": " + res->body);
    last_error = res ? "HTTP " + std::to_string(res->status) : httplib::to_string(res.error());
    if (attempt < settings_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw TransportError("completion request to " + settings_.base_url + settings_.path + " failed: " + last_error,
                       settings_.max_attempts);
}

}  // namespace dct
