#include "dct/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace dct {
namespace {

enum class Edge { None, Implies, Contradicts };

// Edge kind of each statement in statements() order; index 0 is the seed.
std::vector<Edge> edges_of(const DeductionGraph& g) {
  std::vector<Edge> e;
  e.reserve(g.size());
  e.push_back(Edge::None);
  e.insert(e.end(), g.implications.size(), Edge::Implies);
  e.insert(e.end(), g.contradictions.size(), Edge::Contradicts);
  return e;
}

bool consistent_bits(const std::vector<Edge>& edges, const std::vector<bool>& bits) {
  if (!bits[0]) return true;
  for (std::size_t i = 1; i < bits.size(); ++i) {
    if (edges[i] == Edge::Implies && !bits[i]) return false;
    if (edges[i] == Edge::Contradicts && bits[i]) return false;
  }
  return true;
}

struct LogPriors {
  std::vector<double> log_true;
  std::vector<double> log_false;

  double score(const std::vector<bool>& bits) const {
    double s = 0.0;
    for (std::size_t i = 0; i < bits.size(); ++i) s += bits[i] ? log_true[i] : log_false[i];
    return s;
  }
};

LogPriors clamped_log_priors(const ScoredGraph& sg) {
  LogPriors lp;
  for (const Statement* s : sg.graph.statements()) {
    const double p = std::clamp(sg.priors.at(s->id), kPriorEpsilon, 1.0 - kPriorEpsilon);
    lp.log_true.push_back(std::log(p));
    lp.log_false.push_back(std::log1p(-p));
  }
  return lp;
}

void require_valid(const ScoredGraph& sg) {
  const auto problems = sg.validate();
  if (!problems.empty()) throw ContractError("invalid scored graph: " + problems.front());
}

std::size_t candidate_count(const DeductionGraph& g) {
  const std::size_t k = g.size() - 1;
  std::size_t free_branch = 0;
  if (!g.seed_fixed_true) {
    free_branch = k >= std::numeric_limits<std::size_t>::digits ? std::numeric_limits<std::size_t>::max() - 1
                                                                : std::size_t{1} << k;
  }
  return 1 + free_branch;
}

SolveResult make_result(const ScoredGraph& sg, const LogPriors& lp, const std::vector<bool>& bits,
                        std::size_t n_candidates) {
  SolveResult r;
  r.assignment = TruthAssignment::from_ordered(sg.graph, bits);
  r.log_score = lp.score(bits);
  r.score = std::exp(r.log_score);
  r.consistent = true;
  r.n_candidates = n_candidates;
  return r;
}

}  // namespace

ScoredGraph ScoredGraph::from_ordered(DeductionGraph graph, const std::vector<double>& priors) {
  ScoredGraph sg{std::move(graph), {}};
  const auto stmts = sg.graph.statements();
  if (stmts.size() != priors.size()) throw ContractError("prior count does not match graph size");
  for (std::size_t i = 0; i < stmts.size(); ++i) sg.priors[stmts[i]->id] = priors[i];
  return sg;
}

std::vector<std::string> ScoredGraph::validate() const {
  auto out = validate_graph(graph);
  std::size_t matched = 0;
  for (const Statement* s : graph.statements()) {
    const auto it = priors.find(s->id);
    if (it == priors.end()) {
      out.push_back("no prior for statement '" + s->id + "'");
      continue;
    }
    ++matched;
    if (!(it->second >= 0.0 && it->second <= 1.0))
      out.push_back("prior of '" + s->id + "' outside [0,1]");
  }
  if (matched != priors.size()) out.push_back("priors name statements outside the graph");
  return out;
}

int consistency(const DeductionGraph& graph, const TruthAssignment& t) {
  if (!t.covers(graph)) throw ContractError("truth assignment does not cover graph '" + graph.id() + "'");
  return consistent_bits(edges_of(graph), t.ordered(graph)) ? 1 : 0;
}

double assignment_probability(const ScoredGraph& sg, const TruthAssignment& t) {
  if (!t.covers(sg.graph)) throw ContractError("truth assignment does not cover graph '" + sg.graph.id() + "'");
  double log_p = 0.0;
  for (const Statement* s : sg.graph.statements()) {
    const double p = sg.priors.at(s->id);
    log_p += t.at(s->id) ? std::log(p) : std::log1p(-p);
  }
  return std::exp(log_p);
}

SolveResult brute_force_best(const ScoredGraph& sg) {
  require_valid(sg);
  const std::size_t n = sg.graph.size();
  if (n > kBruteForceLimit)
    throw SolverError("brute force refuses graph '" + sg.graph.id() + "' with " + std::to_string(n) +
                      " statements (limit " + std::to_string(kBruteForceLimit) + ")");

  const auto edges = edges_of(sg.graph);
  const auto lp = clamped_log_priors(sg);

  // Mask bit (n-1-i) set means statement i is false, so ascending masks visit
  // assignments in tie-break preference order: seed true first, then children true.
  std::vector<bool> bits(n);
  std::vector<bool> best;
  double best_score = -std::numeric_limits<double>::infinity();
  std::size_t n_consistent = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < n; ++i) bits[i] = ((mask >> (n - 1 - i)) & 1U) == 0;
    if (sg.graph.seed_fixed_true && !bits[0]) continue;
    if (!consistent_bits(edges, bits)) continue;
    ++n_consistent;
    const double s = lp.score(bits);
    if (best.empty() || s > best_score) {
      best = bits;
      best_score = s;
    }
  }
  if (best.empty()) throw SolverError("no consistent assignment for graph '" + sg.graph.id() + "'");
  return make_result(sg, lp, best, n_consistent);
}

SolveResult closed_form_best(const ScoredGraph& sg) {
  require_valid(sg);
  const std::size_t n = sg.graph.size();
  const auto edges = edges_of(sg.graph);
  const auto lp = clamped_log_priors(sg);

  std::vector<bool> seed_true(n);
  seed_true[0] = true;
  for (std::size_t i = 1; i < n; ++i) seed_true[i] = edges[i] == Edge::Implies;

  if (sg.graph.seed_fixed_true) return make_result(sg, lp, seed_true, candidate_count(sg.graph));

  std::vector<bool> seed_false(n);
  seed_false[0] = false;
  for (std::size_t i = 1; i < n; ++i) seed_false[i] = lp.log_true[i] >= lp.log_false[i];

  const bool take_true = lp.score(seed_true) >= lp.score(seed_false);
  return make_result(sg, lp, take_true ? seed_true : seed_false, candidate_count(sg.graph));
}

namespace {

struct BranchAndBound {
  const std::vector<Edge>& edges;
  const LogPriors& lp;
  bool seed_fixed_true;
  std::vector<double> suffix_max;  // best achievable contribution of statements [i, n)
  std::vector<bool> bits;
  std::vector<bool> best;
  double best_score = -std::numeric_limits<double>::infinity();

  BranchAndBound(const std::vector<Edge>& e, const LogPriors& p, bool fixed)
      : edges(e), lp(p), seed_fixed_true(fixed), suffix_max(e.size() + 1, 0.0), bits(e.size()) {
    for (std::size_t i = e.size(); i-- > 0;)
      suffix_max[i] = suffix_max[i + 1] + std::max(lp.log_true[i], lp.log_false[i]);
  }

  bool allowed(std::size_t i, bool value) const {
    if (i == 0) return value || !seed_fixed_true;
    if (!bits[0]) return true;
    return edges[i] == Edge::Implies ? value : !value;
  }

  void search(std::size_t i, double partial) {
    if (i == bits.size()) {
      if (best.empty() || partial > best_score) {
        best = bits;
        best_score = partial;
      }
      return;
    }
    // The tolerance keeps bound round-off from pruning a branch that could tie.
    if (!best.empty() && partial + suffix_max[i] < best_score - 1e-12) return;
    for (const bool value : {true, false}) {
      if (!allowed(i, value)) continue;
      bits[i] = value;
      search(i + 1, partial + (value ? lp.log_true[i] : lp.log_false[i]));
    }
  }
};

}  // namespace

SolveResult best_assignment(const ScoredGraph& sg) {
  require_valid(sg);
  const auto edges = edges_of(sg.graph);
  const auto lp = clamped_log_priors(sg);
  BranchAndBound bb(edges, lp, sg.graph.seed_fixed_true);
  bb.search(0, 0.0);
  if (bb.best.empty() || !consistent_bits(edges, bb.best))
    throw SolverError("no consistent assignment for graph '" + sg.graph.id() + "'");
  return make_result(sg, lp, bb.best, candidate_count(sg.graph));
}

}  // namespace dct
