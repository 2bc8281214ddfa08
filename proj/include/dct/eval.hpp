#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dct/graph_io.hpp"
#include "dct/lm.hpp"
#include "dct/templates.hpp"

namespace dct {

class Pipeline;

struct LabeledClaim {
  std::string text;
  bool gold = false;
  std::optional<std::string> pair_id;
};

enum class Direction { Same, Reverse };

struct QAItem {
  std::string question;
  std::vector<std::string> gold_answers;
  Direction direction = Direction::Same;
};

/// Claim text -> predicted truth value.
using Predictions = std::map<std::string, bool>;

/// Fraction of `golds` whose prediction matches. Throws ContractError on a missing prediction.
double verification_accuracy(const Predictions& predictions, const std::vector<LabeledClaim>& golds);

struct ContrastMetrics {
  double both_true = 0.0;     ///< pairs with both claims predicted true
  double both_correct = 0.0;  ///< pairs with both predictions matching gold
  double accuracy = 0.0;      ///< per-claim accuracy over all paired claims
  std::size_t pairs = 0;
};

/// Throws ContractError when a claim is unpaired, a pair is not exactly two claims with
/// opposite gold labels, or a prediction is missing.
ContrastMetrics contrast_metrics(const Predictions& predictions, const std::vector<LabeledClaim>& claims);

/// Lowercase, ASCII punctuation removed, whitespace collapsed and trimmed.
std::string normalize_answer(std::string_view s);

bool exact_match(std::string_view candidate, const std::vector<std::string>& golds);

/// Exact-match accuracy of question -> answer predictions over `items`.
double qa_accuracy(const std::map<std::string, std::string>& answers, const std::vector<QAItem>& items);

/// Few-shot verification baseline: P(true) thresholded at 0.5, ties true.
Predictions predict_verification(LanguageModel& lm, const TemplateSet& templates,
                                 const std::vector<LabeledClaim>& claims, const LabelTokens& labels = {},
                                 int top_logprobs = 5);

/// Graph-Inference baseline: builds and solves a free-seed graph around `claim` and
/// returns the seed's inferred truth value. Generation and scoring errors propagate.
bool graph_inference_label(Pipeline& pipeline, std::string_view claim);

/// Labels every claim on the pipeline's worker pool; output order follows `claims`.
/// The first failure (in claim order) is rethrown.
std::vector<bool> graph_inference_labels(Pipeline& pipeline, const std::vector<std::string>& claims);

std::vector<LabeledClaim> read_labeled_claims(const std::filesystem::path& path);

/// A claim to label, with its gold value when known.
struct ClaimInput {
  std::string text;
  std::optional<bool> gold;
};
/// JSON lines with "text" (and optional "gold"), or one claim per non-empty line.
std::vector<ClaimInput> read_claims(const std::filesystem::path& path);
std::vector<QAItem> read_qa_items(const std::filesystem::path& path);
/// Lines of {"text": s, "pred": bool}.
Predictions read_predictions(const std::filesystem::path& path);
/// Lines of {"question": s, "answer": s}.
std::map<std::string, std::string> read_qa_answers(const std::filesystem::path& path);

}  // namespace dct
