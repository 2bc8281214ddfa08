#include "dct/graph_io.hpp"

#include <fstream>

namespace dct {

ordered_json to_json(const Statement& s) {
  ordered_json j;
  j["id"] = s.id;
  j["text"] = s.text;
  j["kind"] = std::string(to_string(s.kind));
  j["parent"] = s.parent ? ordered_json(*s.parent) : ordered_json(nullptr);
  j["origin"] = std::string(to_string(s.origin));
  j["truth_prior"] = s.truth_prior ? ordered_json(*s.truth_prior) : ordered_json(nullptr);
  return j;
}

Statement statement_from_json(const ordered_json& j) {
  Statement s;
  s.id = j.at("id").get<std::string>();
  s.text = j.at("text").get<std::string>();
  s.kind = parse_statement_kind(j.at("kind").get<std::string>());
  if (j.contains("parent") && !j["parent"].is_null()) s.parent = j["parent"].get<std::string>();
  s.origin = parse_origin(j.value("origin", std::string("lm-sampled")));
  if (j.contains("truth_prior") && !j["truth_prior"].is_null()) s.truth_prior = j["truth_prior"].get<double>();
  return s;
}

ordered_json to_json(const DeductionGraph& g) {
  ordered_json j;
  j["seed"] = to_json(g.seed);
  j["implications"] = ordered_json::array();
  for (const auto& s : g.implications) j["implications"].push_back(to_json(s));
  j["contradictions"] = ordered_json::array();
  for (const auto& s : g.contradictions) j["contradictions"].push_back(to_json(s));
  j["seed_fixed_true"] = g.seed_fixed_true;
  return j;
}

DeductionGraph graph_from_json(const ordered_json& j) {
  DeductionGraph g;
  g.seed = statement_from_json(j.at("seed"));
  for (const auto& s : j.value("implications", ordered_json::array())) g.implications.push_back(statement_from_json(s));
  for (const auto& s : j.value("contradictions", ordered_json::array()))
    g.contradictions.push_back(statement_from_json(s));
  g.seed_fixed_true = j.value("seed_fixed_true", false);
  return g;
}

ordered_json priors_to_json(const ScoredGraph& sg) {
  ordered_json j = ordered_json::object();
  for (const Statement* s : sg.graph.statements()) {
    if (const auto it = sg.priors.find(s->id); it != sg.priors.end()) j[s->id] = it->second;
  }
  return j;
}

ordered_json to_json(const SolveResult& r, const DeductionGraph& g) {
  ordered_json j;
  ordered_json assignment = ordered_json::object();
  for (const Statement* s : g.statements()) assignment[s->id] = r.assignment.at(s->id);
  j["assignment"] = std::move(assignment);
  j["score"] = r.score;
  j["log_score"] = r.log_score;
  j["consistent"] = r.consistent;
  j["n_candidates"] = r.n_candidates;
  return j;
}

SolveResult solve_result_from_json(const ordered_json& j) {
  SolveResult r;
  std::unordered_map<std::string, bool> values;
  for (const auto& [id, v] : j.at("assignment").items()) values[id] = v.get<bool>();
  r.assignment = TruthAssignment(std::move(values));
  r.score = j.at("score").get<double>();
  r.log_score = j.value("log_score", 0.0);
  r.consistent = j.value("consistent", true);
  r.n_candidates = j.value("n_candidates", std::size_t{0});
  return r;
}

ordered_json to_json(const GraphRecord& r) {
  ordered_json j;
  j["graph"] = to_json(r.scored.graph);
  j["priors"] = priors_to_json(r.scored);
  j["solve"] = r.solve ? to_json(*r.solve, r.scored.graph) : ordered_json(nullptr);
  j["related_facts"] = r.related_facts;
  j["warnings"] = r.warnings;
  return j;
}

GraphRecord graph_record_from_json(const ordered_json& j) {
  GraphRecord r;
  r.scored.graph = graph_from_json(j.at("graph"));
  if (j.contains("priors")) {
    for (const auto& [id, v] : j["priors"].items()) r.scored.priors[id] = v.get<double>();
  }
  if (j.contains("solve") && !j["solve"].is_null()) r.solve = solve_result_from_json(j["solve"]);
  if (j.contains("related_facts")) r.related_facts = j["related_facts"].get<std::vector<std::string>>();
  if (j.contains("warnings")) r.warnings = j["warnings"].get<std::vector<std::string>>();
  return r;
}

GraphRecord read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read graph file " + path.string());
  return graph_record_from_json(ordered_json::parse(in));
}

void write_graph_file(const std::filesystem::path& path, const GraphRecord& r) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write graph file " + path.string());
  out << dump_pretty(to_json(r));
}

std::string dump_pretty(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace dct
