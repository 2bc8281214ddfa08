#include "dct/generation.hpp"

#include <cctype>
#include <sstream>
#include <unordered_set>

namespace dct {
namespace {

// "12. text" / "3) text" -> "text"; nullopt when the line is not numbered.
std::optional<std::string> strip_numbering(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
  if (i == 0 || i >= line.size() || (line[i] != '.' && line[i] != ')')) return std::nullopt;
  return trim(line.substr(i + 1));
}

std::string label_of(Relation r) { return r == Relation::Implies ? "implication" : "contradiction"; }

void dedupe_and_truncate(std::vector<std::string>& items, const GenerationConfig& cfg, std::vector<std::string>& warnings,
                         std::string_view what) {
  if (cfg.dedupe) {
    std::unordered_set<std::string> seen;
    std::vector<std::string> kept;
    for (auto& s : items) {
      if (seen.insert(s).second) kept.push_back(std::move(s));
    }
    items = std::move(kept);
  }
  if (cfg.n_expected && items.size() > static_cast<std::size_t>(*cfg.n_expected)) {
    warnings.push_back(std::string(what) + ": model returned " + std::to_string(items.size()) + " items, keeping first " +
                       std::to_string(*cfg.n_expected));
    items.resize(static_cast<std::size_t>(*cfg.n_expected));
  }
}

void require_template(const PromptTemplate& tmpl, std::initializer_list<TemplateName> allowed, std::string_view op) {
  for (const TemplateName n : allowed) {
    if (tmpl.name == n) return;
  }
  throw ContractError(std::string(op) + " cannot use template " + std::string(to_string(tmpl.name)));
}

std::vector<Statement> make_children(const Statement& seed, const std::vector<std::string>& items, StatementKind kind,
                                     std::size_t first_index) {
  std::vector<Statement> out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    Statement s;
    s.id = child_id(seed.id, first_index + k);
    s.text = items[k];
    s.kind = kind;
    if (kind == StatementKind::Implication || kind == StatementKind::Contradiction) s.parent = seed.id;
    s.origin = Origin::LmSampled;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<std::string> parse_numbered_list(std::string_view text) {
  std::vector<std::string> items;
  std::istringstream in{std::string(text)};
  std::string line;
  bool after_blank = false;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) {
      after_blank = true;
      continue;
    }
    const auto item = strip_numbering(t);
    if (!item) {
      if (after_blank) break;
      continue;
    }
    after_blank = false;
    if (!item->empty()) items.push_back(*item);
  }
  return items;
}

Generated generate_children(LanguageModel& lm, const Statement& seed, Relation relation, const PromptTemplate& tmpl,
                            const GenerationConfig& cfg, std::size_t first_index) {
  if (relation == Relation::Implies)
    require_template(tmpl, {TemplateName::Implication, TemplateName::ImplicationMquake}, "implication generation");
  else
    require_template(tmpl, {TemplateName::Contradiction}, "contradiction generation");

  Generated out;
  const CompletionResult r = lm.complete(tmpl.render({{"claim", seed.text}}), cfg.sampling);
  auto items = parse_numbered_list(r.text);
  if (items.empty()) {
    out.warnings.push_back("seed " + seed.id + ": no parseable " + label_of(relation) + "s");
    return out;
  }
  dedupe_and_truncate(items, cfg, out.warnings, "seed " + seed.id + " " + label_of(relation) + "s");
  const auto kind = relation == Relation::Implies ? StatementKind::Implication : StatementKind::Contradiction;
  out.statements = make_children(seed, items, kind, first_index);
  return out;
}

Generated generate_correlative(LanguageModel& lm, const Statement& seed, const PromptTemplate& tmpl,
                               const GenerationConfig& cfg, std::size_t first_index) {
  require_template(tmpl, {TemplateName::CorrelativeImplication}, "correlative generation");
  Generated out;
  const CompletionResult r = lm.complete(tmpl.render({{"claim", seed.text}}), cfg.sampling);

  constexpr std::string_view kHeader = "Implications:";
  const auto pos = r.text.find(kHeader);
  if (pos == std::string::npos) {
    out.warnings.push_back("seed " + seed.id + ": correlative completion has no Implications: section");
    return out;
  }
  out.related_facts = parse_numbered_list(std::string_view(r.text).substr(0, pos));
  auto items = parse_numbered_list(std::string_view(r.text).substr(pos + kHeader.size()));
  if (items.empty()) {
    out.warnings.push_back("seed " + seed.id + ": no parseable correlative implications");
    return out;
  }
  dedupe_and_truncate(items, cfg, out.warnings, "seed " + seed.id + " correlative implications");
  out.statements = make_children(seed, items, StatementKind::Implication, first_index);
  return out;
}

Generated generate_related(LanguageModel& lm, const Statement& seed, const PromptTemplate& tmpl,
                           const GenerationConfig& cfg) {
  require_template(tmpl, {TemplateName::RelatedClaims}, "related-claim generation");
  Generated out;
  const CompletionResult r = lm.complete(tmpl.render({{"claim", seed.text}}), cfg.sampling);
  auto items = parse_numbered_list(r.text);
  if (items.empty()) {
    out.warnings.push_back("claim " + seed.id + ": no parseable related claims");
    return out;
  }
  dedupe_and_truncate(items, cfg, out.warnings, "claim " + seed.id + " related claims");
  out.statements = make_children(seed, items, StatementKind::Related, 1);
  return out;
}

Generated generate_seed_claims(LanguageModel& lm, const PromptTemplate& tmpl, int n_queries, int per_query,
                               const GenerationConfig& cfg) {
  require_template(tmpl, {TemplateName::SeedClaims}, "seed generation");
  if (n_queries < 1 || per_query < 1) throw ContractError("seed generation needs positive query counts");
  Generated out;
  const std::string prompt = tmpl.render({});
  std::vector<std::string> all;
  std::unordered_set<std::string> seen;
  for (int q = 0; q < n_queries; ++q) {
    // The prompt ends with "1." so the completion starts inside the first item.
    const CompletionResult r = lm.complete(prompt, cfg.sampling);
    auto items = parse_numbered_list("1." + r.text);
    if (items.size() > static_cast<std::size_t>(per_query)) items.resize(static_cast<std::size_t>(per_query));
    if (items.empty()) out.warnings.push_back("seed query " + std::to_string(q) + ": no parseable claims");
    for (auto& s : items) {
      if (seen.insert(s).second) all.push_back(std::move(s));
    }
  }
  for (std::size_t k = 0; k < all.size(); ++k) {
    Statement s;
    s.id = std::to_string(k);
    s.text = std::move(all[k]);
    s.kind = StatementKind::Seed;
    s.origin = Origin::LmSampled;
    out.statements.push_back(std::move(s));
  }
  return out;
}

DoubleCheckOutcome double_check(LanguageModel& lm, const TemplateSet& templates, const Statement& seed,
                                const Statement& child, double threshold, const SamplingParams& params) {
  const bool implies = child.kind == StatementKind::Implication;
  if (!implies && child.kind != StatementKind::Contradiction)
    throw ContractError("double_check needs an implication or contradiction, got " + std::string(to_string(child.kind)));

  const auto& tmpl =
      templates.get(implies ? TemplateName::DoubleCheckImplication : TemplateName::DoubleCheckContradiction);
  const std::string prompt = tmpl.render({{"claim1", seed.text}, {"claim2", child.text}});
  DoubleCheckOutcome out;
  try {
    const double p = implies ? verdict_probability(lm, prompt, kImpliesMarker, kNotImpliesMarker, params)
                             : verdict_probability(lm, prompt, kContradictoryMarker, kNotContradictoryMarker, params);
    out.probability = p;
    out.keep = p >= threshold;
  } catch (const UnparseableVerdictError& e) {
    out.keep = false;
    out.warning = "child " + child.id + " discarded: " + e.what();
  }
  return out;
}

QaPair to_question(LanguageModel& lm, const PromptTemplate& tmpl, const Statement& statement,
                   const SamplingParams& params) {
  require_template(tmpl, {TemplateName::QaConversion}, "question conversion");
  if (trim(statement.text).empty()) throw ContractError("cannot convert an empty statement");
  const CompletionResult r = lm.complete(tmpl.render({{"sentence", statement.text}}), params);
  const std::string text = trim(r.text);
  const std::string question = trim(text.substr(0, text.find('\n')));
  if (question.empty()) throw ConversionError("empty question for statement " + statement.id);
  return QaPair{question, statement.text};
}

}  // namespace dct
