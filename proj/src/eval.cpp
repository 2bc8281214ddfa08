#include "dct/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <fstream>
#include <thread>

#include "dct/pipeline.hpp"

namespace dct {
namespace {

bool predicted(const Predictions& p, const std::string& text) {
  const auto it = p.find(text);
  if (it == p.end()) throw ContractError("no prediction for claim \"" + text + "\"");
  return it->second;
}

template <typename F>
void for_each_json_line(const std::filesystem::path& path, F&& f) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      f(ordered_json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace

double verification_accuracy(const Predictions& predictions, const std::vector<LabeledClaim>& golds) {
  if (golds.empty()) throw ContractError("no gold claims");
  std::size_t correct = 0;
  for (const auto& g : golds) correct += predicted(predictions, g.text) == g.gold ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(golds.size());
}

ContrastMetrics contrast_metrics(const Predictions& predictions, const std::vector<LabeledClaim>& claims) {
  std::map<std::string, std::vector<const LabeledClaim*>> pairs;
  for (const auto& c : claims) {
    if (!c.pair_id) throw ContractError("claim \"" + c.text + "\" has no pair_id");
    pairs[*c.pair_id].push_back(&c);
  }
  if (pairs.empty()) throw ContractError("no contrast pairs");

  ContrastMetrics m;
  std::size_t both_true = 0, both_correct = 0, correct = 0, total = 0;
  for (const auto& [id, members] : pairs) {
    if (members.size() != 2) throw ContractError("pair " + id + " has " + std::to_string(members.size()) + " claims");
    if (members[0]->gold == members[1]->gold) throw ContractError("pair " + id + " has equal gold labels");
    const bool p0 = predicted(predictions, members[0]->text);
    const bool p1 = predicted(predictions, members[1]->text);
    const bool c0 = p0 == members[0]->gold;
    const bool c1 = p1 == members[1]->gold;
    both_true += (p0 && p1) ? 1 : 0;
    both_correct += (c0 && c1) ? 1 : 0;
    correct += (c0 ? 1 : 0) + (c1 ? 1 : 0);
    total += 2;
  }
  m.pairs = pairs.size();
  m.both_true = static_cast<double>(both_true) / static_cast<double>(m.pairs);
  m.both_correct = static_cast<double>(both_correct) / static_cast<double>(m.pairs);
  m.accuracy = static_cast<double>(correct) / static_cast<double>(total);
  return m;
}

std::string normalize_answer(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (const char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::ispunct(c)) continue;
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

bool exact_match(std::string_view candidate, const std::vector<std::string>& golds) {
  const std::string c = normalize_answer(candidate);
  for (const auto& g : golds) {
    if (normalize_answer(g) == c) return true;
  }
  return false;
}

double qa_accuracy(const std::map<std::string, std::string>& answers, const std::vector<QAItem>& items) {
  if (items.empty()) throw ContractError("no QA items");
  std::size_t correct = 0;
  for (const auto& item : items) {
    if (item.gold_answers.empty()) throw ContractError("QA item \"" + item.question + "\" has no gold answers");
    const auto it = answers.find(item.question);
    if (it == answers.end()) throw ContractError("no answer for question \"" + item.question + "\"");
    correct += exact_match(it->second, item.gold_answers) ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(items.size());
}

Predictions predict_verification(LanguageModel& lm, const TemplateSet& templates,
                                 const std::vector<LabeledClaim>& claims, const LabelTokens& labels,
                                 int top_logprobs) {
  Predictions out;
  const auto& tmpl = templates.get(TemplateName::TruthValue);
  const auto params = SamplingParams::scoring(top_logprobs);
  for (const auto& c : claims) {
    out[c.text] = truth_probability(lm, c.text, tmpl.render({{"claim", c.text}}), labels, params).p_true >= 0.5;
  }
  return out;
}

bool graph_inference_label(Pipeline& pipeline, std::string_view claim) {
  SeedSpec spec;
  spec.seed.id = "0";
  spec.seed.text = trim(claim);
  spec.seed.kind = StatementKind::Seed;
  spec.seed.origin = Origin::External;
  spec.fixed_true = false;
  const GraphOutcome o = pipeline.build_graph(spec);
  if (o.error) throw Error("graph inference failed at " + o.failed_stage + ": " + *o.error);
  return o.record.solve->assignment.at(spec.seed.id);
}

std::vector<bool> graph_inference_labels(Pipeline& pipeline, const std::vector<std::string>& claims) {
  std::vector<char> labels(claims.size(), 0);
  std::vector<std::exception_ptr> errors(claims.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < claims.size(); i = next++) {
      try {
        labels[i] = graph_inference_label(pipeline, claims[i]) ? 1 : 0;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, pipeline.config().workers)), claims.size());
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return {labels.begin(), labels.end()};
}

std::vector<LabeledClaim> read_labeled_claims(const std::filesystem::path& path) {
  std::vector<LabeledClaim> out;
  for_each_json_line(path, [&](const ordered_json& j) {
    LabeledClaim c;
    c.text = j.at("text").get<std::string>();
    c.gold = j.at("gold").get<bool>();
    if (j.contains("pair_id") && !j["pair_id"].is_null())
      c.pair_id = j["pair_id"].is_string() ? j["pair_id"].get<std::string>() : j["pair_id"].dump();
    out.push_back(std::move(c));
  });
  return out;
}

std::vector<ClaimInput> read_claims(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::vector<ClaimInput> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() != '{') {
      out.push_back({t, std::nullopt});
      continue;
    }
    try {
      const auto j = ordered_json::parse(t);
      ClaimInput c{trim(j.at("text").get<std::string>()), std::nullopt};
      if (j.contains("gold") && !j["gold"].is_null()) c.gold = j["gold"].get<bool>();
      out.push_back(std::move(c));
    } catch (const nlohmann::json::exception& e) {
      throw Error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<QAItem> read_qa_items(const std::filesystem::path& path) {
  std::vector<QAItem> out;
  for_each_json_line(path, [&](const ordered_json& j) {
    QAItem q;
    q.question = j.at("question").get<std::string>();
    q.gold_answers = j.at("gold_answers").get<std::vector<std::string>>();
    q.direction = j.value("direction", std::string("same")) == "reverse" ? Direction::Reverse : Direction::Same;
    out.push_back(std::move(q));
  });
  return out;
}

Predictions read_predictions(const std::filesystem::path& path) {
  Predictions out;
  for_each_json_line(path, [&](const ordered_json& j) { out[j.at("text").get<std::string>()] = j.at("pred").get<bool>(); });
  return out;
}

std::map<std::string, std::string> read_qa_answers(const std::filesystem::path& path) {
  std::map<std::string, std::string> out;
  for_each_json_line(path, [&](const ordered_json& j) {
    out[j.at("question").get<std::string>()] = j.at("answer").get<std::string>();
  });
  return out;
}

}  // namespace dct
