#include "dct/statement.hpp"

#include <unordered_set>

namespace dct {

std::string_view to_string(StatementKind kind) {
  switch (kind) {
    case StatementKind::Seed: return "seed";
    case StatementKind::Implication: return "implication";
    case StatementKind::Contradiction: return "contradiction";
    case StatementKind::Related: return "related";
    case StatementKind::QaPair: return "qa-pair";
  }
  return "seed";
}

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::LmSampled: return "lm-sampled";
    case Origin::External: return "external";
    case Origin::Derived: return "derived";
  }
  return "lm-sampled";
}

StatementKind parse_statement_kind(std::string_view s) {
  if (s == "seed") return StatementKind::Seed;
  if (s == "implication") return StatementKind::Implication;
  if (s == "contradiction") return StatementKind::Contradiction;
  if (s == "related") return StatementKind::Related;
  if (s == "qa-pair") return StatementKind::QaPair;
  throw ContractError("unknown statement kind: " + std::string(s));
}

Origin parse_origin(std::string_view s) {
  if (s == "lm-sampled") return Origin::LmSampled;
  if (s == "external") return Origin::External;
  if (s == "derived") return Origin::Derived;
  throw ContractError("unknown origin: " + std::string(s));
}

std::string trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> validate_statement(const Statement& s) {
  std::vector<std::string> out;
  const std::string who = "statement '" + s.id + "'";
  if (s.id.empty()) out.push_back("statement with empty id");
  if (trim(s.text).empty()) out.push_back(who + ": text is empty");
  const bool needs_parent =
      s.kind == StatementKind::Implication || s.kind == StatementKind::Contradiction;
  if (needs_parent && !s.parent) out.push_back(who + ": " + std::string(to_string(s.kind)) + " without parent");
  if (!needs_parent && s.parent) out.push_back(who + ": " + std::string(to_string(s.kind)) + " must not have a parent");
  if (s.truth_prior && !(*s.truth_prior >= 0.0 && *s.truth_prior <= 1.0))
    out.push_back(who + ": truth_prior outside [0,1]");
  return out;
}

std::vector<const Statement*> DeductionGraph::statements() const {
  std::vector<const Statement*> out;
  out.reserve(size());
  out.push_back(&seed);
  for (const auto& s : implications) out.push_back(&s);
  for (const auto& s : contradictions) out.push_back(&s);
  return out;
}

std::vector<std::string> validate_graph(const DeductionGraph& graph) {
  std::vector<std::string> out;
  auto append = [&out](std::vector<std::string> v) {
    out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  };

  if (graph.seed.kind != StatementKind::Seed)
    out.push_back("seed '" + graph.seed.id + "' has kind " + std::string(to_string(graph.seed.kind)));
  append(validate_statement(graph.seed));

  auto check_children = [&](const std::vector<Statement>& children, StatementKind expected) {
    for (const auto& child : children) {
      if (child.kind != expected)
        out.push_back("child '" + child.id + "' listed as " + std::string(to_string(expected)) +
                      " but has kind " + std::string(to_string(child.kind)));
      append(validate_statement(child));
      if (child.parent && *child.parent != graph.seed.id)
        out.push_back("child '" + child.id + "' has parent '" + *child.parent + "', expected seed '" +
                      graph.seed.id + "'");
    }
  };
  check_children(graph.implications, StatementKind::Implication);
  check_children(graph.contradictions, StatementKind::Contradiction);

  std::unordered_set<std::string> seen;
  for (const Statement* s : graph.statements()) {
    if (!seen.insert(s->id).second) out.push_back("duplicate statement id '" + s->id + "'");
  }
  return out;
}

TruthAssignment TruthAssignment::from_ordered(const DeductionGraph& graph, const std::vector<bool>& bits) {
  const auto stmts = graph.statements();
  if (bits.size() != stmts.size()) throw ContractError("assignment size does not match graph");
  TruthAssignment t;
  for (std::size_t i = 0; i < stmts.size(); ++i) t.values_[stmts[i]->id] = bits[i];
  return t;
}

bool TruthAssignment::at(const std::string& id) const {
  const auto it = values_.find(id);
  if (it == values_.end()) throw ContractError("truth assignment has no value for '" + id + "'");
  return it->second;
}

bool TruthAssignment::covers(const DeductionGraph& graph) const {
  const auto stmts = graph.statements();
  if (stmts.size() != values_.size()) return false;
  for (const Statement* s : stmts) {
    if (!values_.contains(s->id)) return false;
  }
  return true;
}

std::vector<bool> TruthAssignment::ordered(const DeductionGraph& graph) const {
  std::vector<bool> out;
  for (const Statement* s : graph.statements()) out.push_back(at(s->id));
  return out;
}

std::string child_id(std::string_view seed_id, std::size_t child_index) {
  return std::string(seed_id) + "." + std::to_string(child_index);
}

}  // namespace dct
