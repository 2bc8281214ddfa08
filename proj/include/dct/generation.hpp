#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dct/lm.hpp"
#include "dct/statement.hpp"
#include "dct/templates.hpp"

namespace dct {

struct GenerationConfig {
  SamplingParams sampling;
  /// Items the template asks for; extra items beyond this are dropped.
  std::optional<int> n_expected;
  bool dedupe = true;
};

enum class Relation { Implies, Contradicts };

/// Statements produced by one generator call, plus anything worth surfacing.
struct Generated {
  std::vector<Statement> statements;
  std::vector<std::string> warnings;
  /// Background facts from correlative prompts; recorded, never trained on.
  std::vector<std::string> related_facts;
};

class ConversionError : public Error {
 public:
  using Error::Error;
};

/// Items of a "1. A\n2. B" list. Numbering ("k." or "k)") and whitespace are stripped;
/// non-numbered lines are skipped; a blank line followed by a non-numbered line ends the list.
std::vector<std::string> parse_numbered_list(std::string_view text);

/// Implications or contradictions of `seed`, with ids "<seed>.<first_index + k>".
Generated generate_children(LanguageModel& lm, const Statement& seed, Relation relation,
                            const PromptTemplate& tmpl, const GenerationConfig& cfg, std::size_t first_index = 1);

/// Implications drawn from the "Implications:" section of a correlative completion.
Generated generate_correlative(LanguageModel& lm, const Statement& seed, const PromptTemplate& tmpl,
                               const GenerationConfig& cfg, std::size_t first_index = 1);

/// Related claims (kind=related, no parent) that the pipeline promotes to seeds.
Generated generate_related(LanguageModel& lm, const Statement& seed, const PromptTemplate& tmpl,
                           const GenerationConfig& cfg);

/// Up to n_queries * per_query LM-sampled seeds with ids "0", "1", ...
Generated generate_seed_claims(LanguageModel& lm, const PromptTemplate& tmpl, int n_queries, int per_query,
                               const GenerationConfig& cfg);

struct DoubleCheckOutcome {
  bool keep = false;
  std::optional<double> probability;
  std::optional<std::string> warning;
};

inline constexpr std::string_view kImpliesMarker = "Implies";
inline constexpr std::string_view kNotImpliesMarker = "Does not imply";
inline constexpr std::string_view kContradictoryMarker = "Contradictory";
inline constexpr std::string_view kNotContradictoryMarker = "Not contradictory";

/// Keeps `child` iff the verdict probability of its relation to `seed` reaches `threshold`.
/// Unparseable verdicts discard the child with a warning.
DoubleCheckOutcome double_check(LanguageModel& lm, const TemplateSet& templates, const Statement& seed,
                                const Statement& child, double threshold, const SamplingParams& params);

struct QaPair {
  std::string question;
  std::string answer;
};

/// Question from the conversion prompt; the answer is the statement text itself.
QaPair to_question(LanguageModel& lm, const PromptTemplate& tmpl, const Statement& statement,
                   const SamplingParams& params);

}  // namespace dct
