#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dct {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a caller violates a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

enum class StatementKind { Seed, Implication, Contradiction, Related, QaPair };
enum class Origin { LmSampled, External, Derived };

std::string_view to_string(StatementKind kind);
std::string_view to_string(Origin origin);
StatementKind parse_statement_kind(std::string_view s);
Origin parse_origin(std::string_view s);

/// One unit of text taking part in a deduction graph.
struct Statement {
  std::string id;
  std::string text;
  StatementKind kind = StatementKind::Seed;
  std::optional<std::string> parent;
  Origin origin = Origin::LmSampled;
  std::optional<double> truth_prior;

  friend bool operator==(const Statement&, const Statement&) = default;
};

/// Returns the statement's own invariant violations (empty when well-formed).
std::vector<std::string> validate_statement(const Statement& s);

/// A seed with one level of generated children. Children keep generation
/// order; downstream tie-breaking depends on it.
struct DeductionGraph {
  Statement seed;
  std::vector<Statement> implications;
  std::vector<Statement> contradictions;
  bool seed_fixed_true = false;

  const std::string& id() const { return seed.id; }
  std::size_t size() const { return 1 + implications.size() + contradictions.size(); }

  /// Seed first, then implications, then contradictions.
  std::vector<const Statement*> statements() const;

  friend bool operator==(const DeductionGraph&, const DeductionGraph&) = default;
};

/// All invariant violations of `graph`; an empty result means the graph can be solved.
std::vector<std::string> validate_graph(const DeductionGraph& graph);

/// Statement id -> truth value, covering exactly the statements of one graph.
class TruthAssignment {
 public:
  TruthAssignment() = default;
  explicit TruthAssignment(std::unordered_map<std::string, bool> values)
      : values_(std::move(values)) {}

  /// Builds an assignment in `DeductionGraph::statements()` order.
  static TruthAssignment from_ordered(const DeductionGraph& graph, const std::vector<bool>& bits);

  bool at(const std::string& id) const;
  void set(const std::string& id, bool value) { values_[id] = value; }
  std::size_t size() const { return values_.size(); }
  const std::unordered_map<std::string, bool>& values() const { return values_; }

  /// True iff the domain equals the graph's id set.
  bool covers(const DeductionGraph& graph) const;

  /// Values in `DeductionGraph::statements()` order.
  std::vector<bool> ordered(const DeductionGraph& graph) const;

  friend bool operator==(const TruthAssignment&, const TruthAssignment&) = default;

 private:
  std::unordered_map<std::string, bool> values_;
};

/// Pipeline id scheme: seeds are "<seedIndex>", children "<seedIndex>.<childIndex>".
std::string child_id(std::string_view seed_id, std::size_t child_index);

std::string trim(std::string_view s);

}  // namespace dct
