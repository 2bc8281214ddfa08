#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>

#include "dct/statement.hpp"

namespace dct {

/// A graph plus the model's P(true) for each of its statements.
struct ScoredGraph {
  DeductionGraph graph;
  std::unordered_map<std::string, double> priors;

  /// Builds a scored graph from priors listed in `DeductionGraph::statements()` order.
  static ScoredGraph from_ordered(DeductionGraph graph, const std::vector<double>& priors);

  std::vector<std::string> validate() const;
};

struct SolveResult {
  TruthAssignment assignment;
  double score = 0.0;      ///< exp(log_score)
  double log_score = 0.0;  ///< sum of clamped log-probabilities, seed first then children in list order
  bool consistent = true;
  std::size_t n_candidates = 0;  ///< consistent assignments in the search space
};

/// Priors are clamped to [kPriorEpsilon, 1 - kPriorEpsilon] before taking logs in the solvers.
inline constexpr double kPriorEpsilon = 1e-9;

/// Largest graph brute_force_best will enumerate.
inline constexpr std::size_t kBruteForceLimit = 20;

class SolverError : public Error {
 public:
  using Error::Error;
};

/// 1 iff every seed->implication holds and every seed->not(contradiction) holds.
int consistency(const DeductionGraph& graph, const TruthAssignment& t);

/// Product over all statements (seed included) of p or 1-p, accumulated in log space
/// from unclamped priors, so a zero factor yields exactly 0.
double assignment_probability(const ScoredGraph& sg, const TruthAssignment& t);

/// Most probable consistent assignment. Ties prefer a true seed, then true children in
/// list order. Honors `seed_fixed_true`. Depth-first branch and bound.
SolveResult best_assignment(const ScoredGraph& sg);

/// Exhaustive enumeration of all 2^n assignments (n <= kBruteForceLimit).
SolveResult brute_force_best(const ScoredGraph& sg);

/// O(n) solve exploiting the star shape: the seed-true branch forces every child, the
/// seed-false branch leaves each child free.
SolveResult closed_form_best(const ScoredGraph& sg);

}  // namespace dct
