#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "dct/lm.hpp"
#include "dct/templates.hpp"

namespace dct {

/// Deterministic stand-in for a language model. Responses are keyed by the SHA-256
/// fingerprint of the exact prompt; the k-th call with a given prompt receives that
/// prompt's k-th scripted response (the last one repeats once exhausted).
class ScriptedModel final : public LanguageModel {
 public:
  static std::string fingerprint(std::string_view prompt);

  void add(std::string_view prompt, CompletionResult response);
  void add_fingerprint(const std::string& fingerprint, CompletionResult response);

  /// Throws ScriptMissError when the prompt has no script entry.
  CompletionResult complete(std::string_view prompt, const SamplingParams& params) override;

  std::size_t calls() const;
  std::size_t entries() const;

  /// Loads a script document:
  ///   {"entries": [{<key>, "response": R} | {<key>, "responses": [R, ...]}, ...]}
  /// where <key> is one of "prompt": text, "fingerprint": hex, or
  /// "template": name with "vars": {placeholder: value} rendered through `templates`.
  /// R is {"text": s, "tokens": [{"token": s, "logprob": x}], "top_logprobs": [{tok: x}]}
  /// or the shorthand {"label_logprobs": {"true": x, "false": y}} for a one-token label.
  static ScriptedModel from_json(const nlohmann::json& script, const TemplateSet& templates);
  static ScriptedModel from_file(const std::filesystem::path& path, const TemplateSet& templates);

 private:
  std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
  std::map<std::string, std::vector<CompletionResult>> responses_;
  std::map<std::string, std::size_t> served_;
  std::size_t calls_ = 0;
};

/// Parses one scripted response object.
CompletionResult scripted_response_from_json(const nlohmann::json& r);

/// One-token completion whose alternatives are the two labels with the given log-probabilities.
CompletionResult label_completion(double logprob_true, double logprob_false, const LabelTokens& labels = {});

}  // namespace dct
