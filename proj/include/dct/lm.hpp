#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dct/statement.hpp"

namespace dct {

struct SamplingParams {
  double temperature = 0.6;
  double top_p = 0.9;
  int max_tokens = 256;
  std::vector<std::string> stop_sequences;
  /// Number of alternatives requested per generated position; 0 requests none.
  int top_logprobs = 0;

  std::vector<std::string> problems() const;
  void validate() const;

  /// Sampling used for unsupervised seed claims.
  static SamplingParams seed_sampling();
  /// Greedy single-token request with alternatives, used for label scoring.
  static SamplingParams scoring(int top_k = 5);
};

struct TokenLogprob {
  std::string token;
  double logprob = 0.0;

  friend bool operator==(const TokenLogprob&, const TokenLogprob&) = default;
};

struct CompletionResult {
  std::string text;
  /// Generated tokens with their log-probabilities, when the backend reports them.
  std::optional<std::vector<TokenLogprob>> token_logprobs;
  /// Top alternatives at each generated position (parallel to token_logprobs).
  std::vector<std::vector<TokenLogprob>> top_logprobs;

  friend bool operator==(const CompletionResult&, const CompletionResult&) = default;
};

/// Backend-agnostic completion contract.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;
  virtual CompletionResult complete(std::string_view prompt, const SamplingParams& params) = 0;
};

/// Network failure; retryable. Carries the number of attempts made.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, int attempts)
      : Error(what + " (after " + std::to_string(attempts) + " attempt" + (attempts == 1 ? "" : "s") + ")"),
        attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

/// The scripted model has no response for a prompt. A test-setup bug; never retried.
class ScriptMissError : public Error {
 public:
  using Error::Error;
};

class UnsupportedCapabilityError : public Error {
 public:
  using Error::Error;
};

class ScoringError : public Error {
 public:
  using Error::Error;
};

class UnparseableVerdictError : public Error {
 public:
  explicit UnparseableVerdictError(std::string raw)
      : Error("verdict matches neither marker: \"" + raw + "\""), raw_(std::move(raw)) {}
  const std::string& raw() const { return raw_; }

 private:
  std::string raw_;
};

/// Cuts `text` before the earliest occurrence of any stop sequence.
std::string truncate_at_stop(std::string_view text, const std::vector<std::string>& stops);

struct TruthScore {
  double p_true = 0.5;
  double p_false() const { return 1.0 - p_true; }
};

/// Label tokens scored for truth estimation. A candidate token counts for a label when,
/// after stripping leading whitespace, it is a non-empty prefix of the label.
struct LabelTokens {
  std::string true_label = "true";
  std::string false_label = "false";
};

/// exp(a) / (exp(a) + exp(b)), computed without overflow.
double two_way_softmax(double a, double b);

/// Best log-probability among `candidates` that count for `label`, if any.
std::optional<double> label_logprob(const std::vector<TokenLogprob>& candidates, std::string_view label);

/// P(true) for a statement from the next-token label distribution after `fewshot_prompt`.
/// `statement_text` names the statement in errors.
TruthScore truth_probability(LanguageModel& lm, std::string_view statement_text, std::string_view fewshot_prompt,
                             const LabelTokens& labels = {}, const SamplingParams& params = SamplingParams::scoring());

/// Marker matched in a verdict completion: true for positive, false for negative,
/// nullopt for neither. Matching is case-insensitive, longest marker first, and confined
/// to the line after the first "Verdict:" when one is present.
std::optional<bool> match_verdict(std::string_view text, std::string_view positive, std::string_view negative);

/// Probability that the verdict is the positive marker. With token alternatives at the
/// position where the markers diverge, returns their two-way normalized probability;
/// otherwise 1 or 0 from the matched marker.
double verdict_probability_of(const CompletionResult& completion, std::string_view positive, std::string_view negative);

double verdict_probability(LanguageModel& lm, std::string_view prompt, std::string_view positive,
                           std::string_view negative, const SamplingParams& params);

}  // namespace dct
