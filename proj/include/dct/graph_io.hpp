#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dct/solver.hpp"
#include "dct/statement.hpp"

namespace dct {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const Statement& s);
Statement statement_from_json(const ordered_json& j);

ordered_json to_json(const DeductionGraph& g);
DeductionGraph graph_from_json(const ordered_json& j);

/// Priors keyed by id, in statement order.
ordered_json priors_to_json(const ScoredGraph& sg);

ordered_json to_json(const SolveResult& r, const DeductionGraph& g);
SolveResult solve_result_from_json(const ordered_json& j);

/// Contents of one graphs/<id>.json file.
struct GraphRecord {
  ScoredGraph scored;
  std::optional<SolveResult> solve;
  std::vector<std::string> related_facts;
  std::vector<std::string> warnings;
};

ordered_json to_json(const GraphRecord& r);
GraphRecord graph_record_from_json(const ordered_json& j);

GraphRecord read_graph_file(const std::filesystem::path& path);
void write_graph_file(const std::filesystem::path& path, const GraphRecord& r);

/// Pretty-printed JSON with a trailing newline.
std::string dump_pretty(const ordered_json& j);

}  // namespace dct
