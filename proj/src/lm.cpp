#include "dct/lm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace dct {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view lstrip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  return s;
}

std::optional<double> prefix_logprob(const std::vector<TokenLogprob>& candidates, std::string_view label,
                                     bool case_insensitive) {
  std::optional<double> best;
  const std::string lab = case_insensitive ? lower(label) : std::string(label);
  for (const auto& c : candidates) {
    const std::string tok = case_insensitive ? lower(lstrip(c.token)) : std::string(lstrip(c.token));
    if (tok.empty() || !lab.starts_with(tok)) continue;
    if (!best || c.logprob > *best) best = c.logprob;
  }
  return best;
}

struct VerdictMatch {
  bool positive;
  std::size_t pos;  // offset of the marker within the full text
};

std::optional<VerdictMatch> find_verdict(std::string_view text, std::string_view positive, std::string_view negative) {
  const std::string low = lower(text);
  std::size_t begin = 0;
  std::size_t end = low.size();
  constexpr std::string_view kVerdict = "verdict:";
  if (const auto v = low.find(kVerdict); v != std::string::npos) {
    begin = v + kVerdict.size();
    const auto nl = low.find('\n', begin);
    if (nl != std::string::npos) end = nl;
  }
  const std::string_view region = std::string_view(low).substr(begin, end - begin);

  const bool positive_longer = positive.size() >= negative.size();
  const std::string first = lower(positive_longer ? positive : negative);
  const std::string second = lower(positive_longer ? negative : positive);
  if (const auto p = region.find(first); p != std::string_view::npos) return VerdictMatch{positive_longer, begin + p};
  if (const auto p = region.find(second); p != std::string_view::npos) return VerdictMatch{!positive_longer, begin + p};
  return std::nullopt;
}

}  // namespace

std::vector<std::string> SamplingParams::problems() const {
  std::vector<std::string> out;
  if (!(temperature >= 0.0)) out.push_back("temperature must be >= 0");
  if (!(top_p > 0.0 && top_p <= 1.0)) out.push_back("top_p must lie in (0, 1]");
  if (max_tokens < 1) out.push_back("max_tokens must be >= 1");
  if (top_logprobs < 0) out.push_back("top_logprobs must be >= 0");
  return out;
}

void SamplingParams::validate() const {
  if (const auto p = problems(); !p.empty()) throw ContractError("invalid sampling params: " + p.front());
}

SamplingParams SamplingParams::seed_sampling() {
  SamplingParams p;
  p.temperature = 0.9;
  return p;
}

SamplingParams SamplingParams::scoring(int top_k) {
  SamplingParams p;
  p.temperature = 0.0;
  p.top_p = 1.0;
  p.max_tokens = 1;
  p.top_logprobs = top_k;
  return p;
}

std::string truncate_at_stop(std::string_view text, const std::vector<std::string>& stops) {
  std::size_t cut = text.size();
  for (const auto& s : stops) {
    if (s.empty()) continue;
    cut = std::min(cut, text.find(s));
  }
  return std::string(text.substr(0, cut));
}

double two_way_softmax(double a, double b) {
  // 1 / (1 + e^(b-a)) is stable for a >= b; mirror it otherwise.
  if (a >= b) return 1.0 / (1.0 + std::exp(b - a));
  const double e = std::exp(a - b);
  return e / (1.0 + e);
}

std::optional<double> label_logprob(const std::vector<TokenLogprob>& candidates, std::string_view label) {
  return prefix_logprob(candidates, label, false);
}

TruthScore truth_probability(LanguageModel& lm, std::string_view statement_text, std::string_view fewshot_prompt,
                             const LabelTokens& labels, const SamplingParams& params) {
  if (fewshot_prompt.empty()) throw ContractError("empty scoring prompt");
  const CompletionResult r = lm.complete(fewshot_prompt, params);
  if (!r.token_logprobs || r.token_logprobs->empty())
    throw UnsupportedCapabilityError("model did not return token log-probabilities");

  std::vector<TokenLogprob> candidates = r.top_logprobs.empty() ? std::vector<TokenLogprob>{} : r.top_logprobs.front();
  candidates.push_back(r.token_logprobs->front());

  auto lt = label_logprob(candidates, labels.true_label);
  auto lf = label_logprob(candidates, labels.false_label);
  if (!lt && !lf)
    throw ScoringError("neither label token among the top candidates for \"" + std::string(statement_text) + "\"");
  // A label absent from the top-k list is bounded above by the weakest listed candidate.
  double floor = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) floor = std::min(floor, c.logprob);
  return TruthScore{two_way_softmax(lt.value_or(floor), lf.value_or(floor))};
}

std::optional<bool> match_verdict(std::string_view text, std::string_view positive, std::string_view negative) {
  const auto m = find_verdict(text, positive, negative);
  if (!m) return std::nullopt;
  return m->positive;
}

double verdict_probability_of(const CompletionResult& completion, std::string_view positive,
                              std::string_view negative) {
  if (positive.empty() || negative.empty() || lower(positive) == lower(negative))
    throw ContractError("verdict markers must be distinct and non-empty");
  const auto m = find_verdict(completion.text, positive, negative);
  if (!m) throw UnparseableVerdictError(completion.text);
  const double by_text = m->positive ? 1.0 : 0.0;

  if (!completion.token_logprobs || completion.top_logprobs.size() != completion.token_logprobs->size())
    return by_text;

  const std::string pos_low = lower(positive);
  const std::string neg_low = lower(negative);
  std::size_t common = 0;
  while (common < pos_low.size() && common < neg_low.size() && pos_low[common] == neg_low[common]) ++common;
  const std::size_t diverge_at = m->pos + common;

  // Locate the generated token that starts the divergent part of the marker.
  const auto& tokens = *completion.token_logprobs;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::size_t next = offset + tokens[i].token.size();
    if (diverge_at >= offset && diverge_at < next) {
      const std::string_view lead = std::string_view(completion.text).substr(offset, diverge_at - offset);
      if (!lstrip(lead).empty()) return by_text;
      std::vector<TokenLogprob> cands = completion.top_logprobs[i];
      cands.push_back(tokens[i]);
      const auto lp = prefix_logprob(cands, std::string_view(positive).substr(common), true);
      const auto ln = prefix_logprob(cands, std::string_view(negative).substr(common), true);
      if (lp && ln) return two_way_softmax(*lp, *ln);
      return by_text;
    }
    offset = next;
  }
  return by_text;
}

double verdict_probability(LanguageModel& lm, std::string_view prompt, std::string_view positive,
                           std::string_view negative, const SamplingParams& params) {
  if (prompt.empty()) throw ContractError("empty verdict prompt");
  return verdict_probability_of(lm.complete(prompt, params), positive, negative);
}

}  // namespace dct
