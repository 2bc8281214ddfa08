#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dct/generation.hpp"
#include "dct/graph_io.hpp"
#include "dct/http_client.hpp"
#include "dct/lm.hpp"
#include "dct/solver.hpp"
#include "dct/templates.hpp"

namespace dct {

enum class Mode { Unsupervised, Supervised, SemiSupervised, Editing, Transductive };
enum class TaskStyle { Verification, FreeText, Qa };

std::string_view to_string(Mode m);
std::string_view to_string(TaskStyle s);
Mode parse_mode(std::string_view s);
TaskStyle parse_task_style(std::string_view s);

struct LmSettings {
  std::string backend = "http";  ///< "http" or "mock"
  EndpointSettings endpoint;
  std::filesystem::path mock_script;
  int top_logprobs = 5;
  LabelTokens labels;
};

struct SeedGenerationSettings {
  int n_queries = 10;
  int per_query = 10;
  SamplingParams sampling = SamplingParams::seed_sampling();
};

struct RunConfig {
  Mode mode = Mode::Unsupervised;
  TaskStyle task_style = TaskStyle::Verification;
  std::optional<std::filesystem::path> seeds_path;
  bool double_check = false;
  double double_check_threshold = 0.5;
  GenerationConfig generation;
  TemplateName implication_template = TemplateName::Implication;
  bool generate_implications = true;
  bool generate_contradictions = true;
  SeedGenerationSettings seed_generation;
  LmSettings lm;
  std::optional<std::filesystem::path> prompts_dir;
  std::uint64_t rng_seed = 0;
  std::filesystem::path output_dir = "dct-out";
  int workers = 4;
  /// Fixed clock for manifest timestamps (seconds since the epoch); falls back to the
  /// SOURCE_DATE_EPOCH environment variable, then to the wall clock.
  std::optional<std::int64_t> source_date_epoch;

  std::vector<std::string> problems() const;

  /// Relative paths in `j` are resolved against `base_dir`.
  static RunConfig from_json(const ordered_json& j, const std::filesystem::path& base_dir = {});
  static RunConfig load(const std::filesystem::path& path);
  ordered_json to_json() const;
};

struct TrainingRecord {
  std::string text;
  bool label = true;
  std::string source_id;
  std::string graph_id;
  TaskStyle style = TaskStyle::FreeText;

  ordered_json to_json() const;
  static TrainingRecord from_json(const ordered_json& j);
};

/// "Verify the following statement: {text} True|False"
std::string render_verification(std::string_view text, bool label);

struct StageCounts {
  std::size_t generated = 0;
  std::size_t kept = 0;
  std::size_t inferred_true = 0;
  std::size_t emitted = 0;

  bool monotone() const { return emitted <= kept && kept <= generated; }
};

struct RunManifest {
  ordered_json config;
  StageCounts seeds;
  StageCounts implications;
  StageCounts contradictions;
  std::size_t graphs_solved = 0;
  std::size_t graphs_failed = 0;
  std::size_t records = 0;
  std::size_t warnings = 0;
  std::map<std::string, std::string> template_checksums;
  std::string started_at;
  std::string finished_at;

  ordered_json to_json() const;
};

struct SeedSpec {
  Statement seed;
  bool fixed_true = false;
};

/// One seed's pass through generation, double-checking, scoring and solving.
struct GraphOutcome {
  GraphRecord record;
  std::size_t generated_implications = 0;
  std::size_t generated_contradictions = 0;
  std::optional<std::string> error;
  std::string failed_stage;
};

struct EmitResult {
  std::vector<TrainingRecord> records;
  std::vector<std::string> warnings;
};

/// Options needed only for question-answer emission.
struct QaEmitter {
  LanguageModel* lm = nullptr;
  const PromptTemplate* conversion = nullptr;
  SamplingParams sampling;
};

/// Training records from solved graphs, in graph order then statement order. Graphs
/// without a solve result are skipped.
EmitResult emit_dataset(const std::vector<GraphRecord>& graphs, TaskStyle style, const QaEmitter& qa = {});

/// Solves each graph with the linear-time solver (or brute force when `use_brute_force`).
std::vector<SolveResult> solve_all(const std::vector<ScoredGraph>& graphs, bool use_brute_force = false);

/// Reads a seeds file: JSON lines with a "text" field, or one claim per non-empty line.
std::vector<std::string> read_seed_texts(const std::filesystem::path& path);

class Pipeline {
 public:
  Pipeline(RunConfig config, LanguageModel& lm, TemplateSet templates);

  const RunConfig& config() const { return config_; }
  const TemplateSet& templates() const { return templates_; }

  /// Seeds for the configured mode, ids "0".."n-1". Throws Error on an unreadable or empty seed set.
  std::vector<SeedSpec> acquire_seeds(std::vector<std::string>& warnings);

  /// Generates, double-checks, scores and solves one seed's graph. Errors are captured
  /// in the outcome rather than thrown.
  GraphOutcome build_graph(const SeedSpec& seed);

  /// P(true) for every statement in `graph`.
  ScoredGraph score_graph(DeductionGraph graph);

  /// Runs every stage and writes graphs/, dataset.jsonl, errors.jsonl and manifest.json.
  RunManifest run();

 private:
  RunConfig config_;
  LanguageModel& lm_;
  TemplateSet templates_;
};

/// Backend named by `settings`: the HTTP client or a scripted model loaded from its script.
std::unique_ptr<LanguageModel> make_language_model(const LmSettings& settings, const TemplateSet& templates);

TemplateSet load_templates(const RunConfig& config);

/// Loads the config, validates it, builds the model and runs the pipeline.
RunManifest run_from_config(const std::filesystem::path& config_path);

}  // namespace dct
