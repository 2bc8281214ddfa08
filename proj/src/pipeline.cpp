#include "dct/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "dct/hash.hpp"
#include "dct/scripted_model.hpp"

namespace dct {
namespace fs = std::filesystem;

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Unsupervised: return "unsupervised";
    case Mode::Supervised: return "supervised";
    case Mode::SemiSupervised: return "semi-supervised";
    case Mode::Editing: return "editing";
    case Mode::Transductive: return "transductive";
  }
  return "unsupervised";
}

std::string_view to_string(TaskStyle s) {
  switch (s) {
    case TaskStyle::Verification: return "verification";
    case TaskStyle::FreeText: return "free-text";
    case TaskStyle::Qa: return "qa";
  }
  return "verification";
}

Mode parse_mode(std::string_view s) {
  for (const Mode m : {Mode::Unsupervised, Mode::Supervised, Mode::SemiSupervised, Mode::Editing, Mode::Transductive})
    if (to_string(m) == s) return m;
  throw ContractError("unknown mode: " + std::string(s));
}

TaskStyle parse_task_style(std::string_view s) {
  for (const TaskStyle t : {TaskStyle::Verification, TaskStyle::FreeText, TaskStyle::Qa})
    if (to_string(t) == s) return t;
  throw ContractError("unknown task style: " + std::string(s));
}

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : (base / path).lexically_normal();
}

SamplingParams sampling_from_json(const ordered_json& j, SamplingParams p) {
  p.temperature = j.value("temperature", p.temperature);
  p.top_p = j.value("top_p", p.top_p);
  p.max_tokens = j.value("max_tokens", p.max_tokens);
  if (j.contains("stop")) p.stop_sequences = j["stop"].get<std::vector<std::string>>();
  return p;
}

ordered_json sampling_to_json(const SamplingParams& p) {
  ordered_json j;
  j["temperature"] = p.temperature;
  j["top_p"] = p.top_p;
  j["max_tokens"] = p.max_tokens;
  j["stop"] = p.stop_sequences;
  return j;
}

std::string iso_utc(std::int64_t epoch_seconds) {
  const std::time_t t = static_cast<std::time_t>(epoch_seconds);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string timestamp(const RunConfig& cfg) {
  if (cfg.source_date_epoch) return iso_utc(*cfg.source_date_epoch);
  if (const char* v = std::getenv("SOURCE_DATE_EPOCH"); v && *v) return iso_utc(std::stoll(v));
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  return iso_utc(std::chrono::duration_cast<std::chrono::seconds>(now).count());
}

ordered_json counts_json(const StageCounts& c) {
  ordered_json j;
  j["generated"] = c.generated;
  j["kept"] = c.kept;
  j["inferred_true"] = c.inferred_true;
  j["emitted"] = c.emitted;
  return j;
}

Statement make_seed(std::string text, Origin origin) {
  Statement s;
  s.text = std::move(text);
  s.kind = StatementKind::Seed;
  s.origin = origin;
  return s;
}

enum class StatementClass { Seed, Implication, Contradiction };

StatementClass class_of(const Statement& s) {
  switch (s.kind) {
    case StatementKind::Implication: return StatementClass::Implication;
    case StatementKind::Contradiction: return StatementClass::Contradiction;
    default: return StatementClass::Seed;
  }
}

}  // namespace

std::vector<std::string> RunConfig::problems() const {
  std::vector<std::string> out;
  const bool needs_seeds = mode == Mode::Supervised || mode == Mode::Editing || mode == Mode::SemiSupervised ||
                           mode == Mode::Transductive;
  if (needs_seeds && !seeds_path) out.push_back(std::string(to_string(mode)) + " mode requires seeds_path");
  if (!(double_check_threshold >= 0.0 && double_check_threshold <= 1.0))
    out.push_back("double_check_threshold must lie in [0, 1]");
  for (const auto& p : generation.sampling.problems()) out.push_back("generation: " + p);
  for (const auto& p : seed_generation.sampling.problems()) out.push_back("seed_generation: " + p);
  if (generation.n_expected && *generation.n_expected < 1) out.push_back("generation.n_expected must be >= 1");
  if (seed_generation.n_queries < 1 || seed_generation.per_query < 1)
    out.push_back("seed_generation counts must be >= 1");
  if (implication_template != TemplateName::Implication && implication_template != TemplateName::ImplicationMquake &&
      implication_template != TemplateName::CorrelativeImplication)
    out.push_back("implication_template must be an implication template");
  if (lm.backend != "http" && lm.backend != "mock") out.push_back("lm.backend must be \"http\" or \"mock\"");
  if (lm.backend == "mock" && lm.mock_script.empty()) out.push_back("mock backend requires lm.mock_script");
  if (lm.backend == "http" && lm.endpoint.base_url.empty()) out.push_back("http backend requires an endpoint");
  if (lm.top_logprobs < 2) out.push_back("lm.top_logprobs must be >= 2");
  if (lm.labels.true_label.empty() || lm.labels.false_label.empty() || lm.labels.true_label == lm.labels.false_label)
    out.push_back("label tokens must be distinct and non-empty");
  if (workers < 1) out.push_back("workers must be >= 1");
  if (output_dir.empty()) out.push_back("output_dir is required");
  return out;
}

RunConfig RunConfig::from_json(const ordered_json& j, const fs::path& base_dir) {
  RunConfig c;
  c.mode = parse_mode(j.value("mode", std::string("unsupervised")));
  c.task_style = parse_task_style(j.value("task_style", std::string("verification")));
  if (j.contains("seeds_path") && !j["seeds_path"].is_null())
    c.seeds_path = resolve(base_dir, j["seeds_path"].get<std::string>());
  c.double_check = j.value("double_check", c.double_check);
  c.double_check_threshold = j.value("double_check_threshold", c.double_check_threshold);
  if (j.contains("generation")) {
    const auto& g = j["generation"];
    c.generation.sampling = sampling_from_json(g, c.generation.sampling);
    if (g.contains("n_expected") && !g["n_expected"].is_null()) c.generation.n_expected = g["n_expected"].get<int>();
    c.generation.dedupe = g.value("dedupe", c.generation.dedupe);
  }
  if (j.contains("implication_template"))
    c.implication_template = parse_template_name(j["implication_template"].get<std::string>());
  c.generate_implications = j.value("generate_implications", c.generate_implications);
  c.generate_contradictions = j.value("generate_contradictions", c.generate_contradictions);
  if (j.contains("seed_generation")) {
    const auto& s = j["seed_generation"];
    c.seed_generation.n_queries = s.value("n_queries", c.seed_generation.n_queries);
    c.seed_generation.per_query = s.value("per_query", c.seed_generation.per_query);
    c.seed_generation.sampling = sampling_from_json(s, c.seed_generation.sampling);
  }

  c.lm.endpoint.apply_environment();
  if (j.contains("lm")) {
    const auto& l = j["lm"];
    c.lm.backend = l.value("backend", c.lm.backend);
    auto& e = c.lm.endpoint;
    e.base_url = l.value("endpoint", e.base_url);
    e.path = l.value("path", e.path);
    e.model = l.value("model", e.model);
    e.token = l.value("token", e.token);
    e.max_attempts = l.value("max_attempts", e.max_attempts);
    e.initial_backoff = std::chrono::milliseconds(l.value("initial_backoff_ms", e.initial_backoff.count()));
    e.timeout = std::chrono::seconds(l.value("timeout_s", e.timeout.count()));
    e.max_in_flight = l.value("max_in_flight", e.max_in_flight);
    if (l.contains("mock_script")) c.lm.mock_script = resolve(base_dir, l["mock_script"].get<std::string>());
    c.lm.top_logprobs = l.value("top_logprobs", c.lm.top_logprobs);
    c.lm.labels.true_label = l.value("true_label", c.lm.labels.true_label);
    c.lm.labels.false_label = l.value("false_label", c.lm.labels.false_label);
  }
  if (j.contains("prompts_dir") && !j["prompts_dir"].is_null())
    c.prompts_dir = resolve(base_dir, j["prompts_dir"].get<std::string>());
  c.rng_seed = j.value("rng_seed", c.rng_seed);
  if (j.contains("output_dir")) c.output_dir = resolve(base_dir, j["output_dir"].get<std::string>());
  c.workers = j.value("workers", c.workers);
  if (j.contains("source_date_epoch") && !j["source_date_epoch"].is_null())
    c.source_date_epoch = j["source_date_epoch"].get<std::int64_t>();
  return c;
}

RunConfig RunConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config " + path.string());
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed config " + path.string() + ": " + e.what());
  }
  return from_json(j, fs::absolute(path).parent_path());
}

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["mode"] = std::string(to_string(mode));
  j["task_style"] = std::string(to_string(task_style));
  j["seeds_path"] = seeds_path ? ordered_json(seeds_path->string()) : ordered_json(nullptr);
  j["double_check"] = double_check;
  j["double_check_threshold"] = double_check_threshold;
  auto g = sampling_to_json(generation.sampling);
  g["n_expected"] = generation.n_expected ? ordered_json(*generation.n_expected) : ordered_json(nullptr);
  g["dedupe"] = generation.dedupe;
  j["generation"] = std::move(g);
  j["implication_template"] = std::string(to_string(implication_template));
  j["generate_implications"] = generate_implications;
  j["generate_contradictions"] = generate_contradictions;
  auto s = sampling_to_json(seed_generation.sampling);
  s["n_queries"] = seed_generation.n_queries;
  s["per_query"] = seed_generation.per_query;
  j["seed_generation"] = std::move(s);
  ordered_json l;
  l["backend"] = lm.backend;
  if (lm.backend == "http") {
    l["endpoint"] = lm.endpoint.base_url;
    l["path"] = lm.endpoint.path;
    l["model"] = lm.endpoint.model;
    l["max_attempts"] = lm.endpoint.max_attempts;
    l["max_in_flight"] = lm.endpoint.max_in_flight;
  } else {
    l["mock_script"] = lm.mock_script.string();
  }
  l["top_logprobs"] = lm.top_logprobs;
  l["true_label"] = lm.labels.true_label;
  l["false_label"] = lm.labels.false_label;
  j["lm"] = std::move(l);
  j["prompts_dir"] = prompts_dir ? ordered_json(prompts_dir->string()) : ordered_json(nullptr);
  j["rng_seed"] = rng_seed;
  j["output_dir"] = output_dir.string();
  j["workers"] = workers;
  j["source_date_epoch"] = source_date_epoch ? ordered_json(*source_date_epoch) : ordered_json(nullptr);
  return j;
}

ordered_json TrainingRecord::to_json() const {
  ordered_json j;
  j["text"] = text;
  j["label"] = label;
  j["style"] = std::string(to_string(style));
  j["source_id"] = source_id;
  j["graph_id"] = graph_id;
  return j;
}

TrainingRecord TrainingRecord::from_json(const ordered_json& j) {
  TrainingRecord r;
  r.text = j.at("text").get<std::string>();
  r.label = j.at("label").get<bool>();
  r.style = parse_task_style(j.at("style").get<std::string>());
  r.source_id = j.at("source_id").get<std::string>();
  r.graph_id = j.at("graph_id").get<std::string>();
  return r;
}

std::string render_verification(std::string_view text, bool label) {
  return "Verify the following statement: " + std::string(text) + (label ? " True" : " False");
}

ordered_json RunManifest::to_json() const {
  ordered_json j;
  j["config"] = config;
  ordered_json counts;
  counts["seeds"] = counts_json(seeds);
  counts["implication"] = counts_json(implications);
  counts["contradiction"] = counts_json(contradictions);
  j["counts"] = std::move(counts);
  j["graphs_solved"] = graphs_solved;
  j["graphs_failed"] = graphs_failed;
  j["records"] = records;
  j["warnings"] = warnings;
  j["template_checksums"] = template_checksums;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  return j;
}

EmitResult emit_dataset(const std::vector<GraphRecord>& graphs, TaskStyle style, const QaEmitter& qa) {
  if (style == TaskStyle::Qa && (qa.lm == nullptr || qa.conversion == nullptr))
    throw ContractError("qa emission needs a language model and the conversion template");
  EmitResult out;
  for (const auto& g : graphs) {
    if (!g.solve) continue;
    const auto& graph = g.scored.graph;
    for (const Statement* s : graph.statements()) {
      const bool value = g.solve->assignment.at(s->id);
      TrainingRecord r{.text = {}, .label = value, .source_id = s->id, .graph_id = graph.id(), .style = style};
      switch (style) {
        case TaskStyle::FreeText:
          if (!value) continue;
          r.text = s->text;
          break;
        case TaskStyle::Verification:
          r.text = render_verification(s->text, value);
          break;
        case TaskStyle::Qa:
          if (!value) continue;
          try {
            const QaPair p = to_question(*qa.lm, *qa.conversion, *s, qa.sampling);
            r.text = "Q: " + p.question + "\nA: " + p.answer;
          } catch (const Error& e) {
            out.warnings.push_back("statement " + s->id + " skipped in qa emission: " + e.what());
            continue;
          }
          break;
      }
      out.records.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<SolveResult> solve_all(const std::vector<ScoredGraph>& graphs, bool use_brute_force) {
  std::vector<SolveResult> out;
  out.reserve(graphs.size());
  for (const auto& g : graphs) out.push_back(use_brute_force ? brute_force_best(g) : closed_form_best(g));
  return out;
}

std::vector<std::string> read_seed_texts(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read seeds file " + path.string());
  std::vector<std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '{') {
      try {
        const auto j = ordered_json::parse(t);
        out.push_back(trim(j.at("text").get<std::string>()));
      } catch (const nlohmann::json::exception& e) {
        throw Error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
      }
    } else {
      out.push_back(t);
    }
  }
  return out;
}

Pipeline::Pipeline(RunConfig config, LanguageModel& lm, TemplateSet templates)
    : config_(std::move(config)), lm_(lm), templates_(std::move(templates)) {
  if (const auto p = config_.problems(); !p.empty()) throw ContractError("invalid run config: " + p.front());
}

std::vector<SeedSpec> Pipeline::acquire_seeds(std::vector<std::string>& warnings) {
  std::vector<SeedSpec> seeds;
  auto add_external = [&](bool fixed) {
    for (auto& text : read_seed_texts(*config_.seeds_path)) seeds.push_back({make_seed(std::move(text), Origin::External), fixed});
  };
  auto add_sampled = [&] {
    GenerationConfig gc{config_.seed_generation.sampling, std::nullopt, true};
    auto g = generate_seed_claims(lm_, templates_.get(TemplateName::SeedClaims), config_.seed_generation.n_queries,
                                  config_.seed_generation.per_query, gc);
    warnings.insert(warnings.end(), g.warnings.begin(), g.warnings.end());
    for (auto& s : g.statements) seeds.push_back({std::move(s), false});
  };

  switch (config_.mode) {
    case Mode::Unsupervised: add_sampled(); break;
    case Mode::Supervised:
    case Mode::Editing: add_external(true); break;
    case Mode::SemiSupervised:
      add_external(true);
      add_sampled();
      break;
    case Mode::Transductive: {
      const auto claims = read_seed_texts(*config_.seeds_path);
      for (std::size_t i = 0; i < claims.size(); ++i) {
        Statement claim = make_seed(claims[i], Origin::External);
        claim.id = "claim" + std::to_string(i);
        auto g = generate_related(lm_, claim, templates_.get(TemplateName::RelatedClaims), config_.generation);
        warnings.insert(warnings.end(), g.warnings.begin(), g.warnings.end());
        for (auto& r : g.statements) seeds.push_back({make_seed(std::move(r.text), Origin::Derived), false});
      }
      break;
    }
  }

  if (config_.generation.dedupe) {
    std::unordered_set<std::string> seen;
    std::vector<SeedSpec> unique;
    for (auto& s : seeds) {
      if (seen.insert(s.seed.text).second) unique.push_back(std::move(s));
    }
    seeds = std::move(unique);
  }
  if (seeds.empty()) throw Error("seed set is empty for mode " + std::string(to_string(config_.mode)));
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i].seed.id = std::to_string(i);
  return seeds;
}

ScoredGraph Pipeline::score_graph(DeductionGraph graph) {
  ScoredGraph sg{std::move(graph), {}};
  const auto& tmpl = templates_.get(TemplateName::TruthValue);
  const auto params = SamplingParams::scoring(config_.lm.top_logprobs);
  for (const Statement* s : sg.graph.statements()) {
    const TruthScore t = truth_probability(lm_, s->text, tmpl.render({{"claim", s->text}}), config_.lm.labels, params);
    sg.priors[s->id] = t.p_true;
  }
  return sg;
}

GraphOutcome Pipeline::build_graph(const SeedSpec& spec) {
  GraphOutcome out;
  auto& rec = out.record;
  DeductionGraph graph;
  graph.seed = spec.seed;
  graph.seed_fixed_true = spec.fixed_true;
  out.failed_stage = "generation";
  try {
    std::size_t next_index = 1;
    if (config_.generate_implications) {
      const auto& tmpl = templates_.get(config_.implication_template);
      Generated g = config_.implication_template == TemplateName::CorrelativeImplication
                        ? generate_correlative(lm_, graph.seed, tmpl, config_.generation, next_index)
                        : generate_children(lm_, graph.seed, Relation::Implies, tmpl, config_.generation, next_index);
      next_index += g.statements.size();
      rec.warnings.insert(rec.warnings.end(), g.warnings.begin(), g.warnings.end());
      rec.related_facts = std::move(g.related_facts);
      graph.implications = std::move(g.statements);
    }
    if (config_.generate_contradictions) {
      Generated g = generate_children(lm_, graph.seed, Relation::Contradicts, templates_.get(TemplateName::Contradiction),
                                      config_.generation, next_index);
      rec.warnings.insert(rec.warnings.end(), g.warnings.begin(), g.warnings.end());
      graph.contradictions = std::move(g.statements);
    }
    out.generated_implications = graph.implications.size();
    out.generated_contradictions = graph.contradictions.size();

    if (config_.double_check) {
      out.failed_stage = "double-check";
      auto filter = [&](std::vector<Statement>& children) {
        std::vector<Statement> kept;
        for (auto& c : children) {
          const auto v = double_check(lm_, templates_, graph.seed, c, config_.double_check_threshold,
                                      config_.generation.sampling);
          if (v.warning) rec.warnings.push_back(*v.warning);
          if (v.keep) kept.push_back(std::move(c));
        }
        children = std::move(kept);
      };
      filter(graph.implications);
      filter(graph.contradictions);
    }

    if (const auto problems = validate_graph(graph); !problems.empty()) throw Error(problems.front());

    out.failed_stage = "scoring";
    rec.scored = score_graph(graph);
    out.failed_stage = "solving";
    rec.solve = closed_form_best(rec.scored);
    out.failed_stage.clear();
  } catch (const std::exception& e) {
    out.error = e.what();
    if (rec.scored.graph.seed.id.empty()) rec.scored.graph = graph;
  }
  return out;
}

RunManifest Pipeline::run() {
  RunManifest m;
  m.config = config_.to_json();
  m.template_checksums = templates_.checksums();
  m.started_at = timestamp(config_);

  std::vector<std::string> run_warnings;
  const auto seeds = acquire_seeds(run_warnings);

  std::vector<GraphOutcome> outcomes(seeds.size());
  {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < seeds.size(); i = next++) outcomes[i] = build_graph(seeds[i]);
    };
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(config_.workers), seeds.size());
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }

  const fs::path out_dir = config_.output_dir;
  fs::create_directories(out_dir / "graphs");

  std::vector<GraphRecord> solved;
  std::ofstream errors(out_dir / "errors.jsonl", std::ios::binary);
  for (const auto& w : run_warnings) {
    ordered_json e;
    e["seed_id"] = nullptr;
    e["stage"] = "seed-acquisition";
    e["message"] = w;
    e["severity"] = "warning";
    errors << e.dump() << "\n";
  }
  m.warnings = run_warnings.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const GraphOutcome& o = outcomes[i];
    m.warnings += o.record.warnings.size();
    write_graph_file(out_dir / "graphs" / (seeds[i].seed.id + ".json"), o.record);
    if (o.error) {
      ++m.graphs_failed;
      ordered_json e;
      e["seed_id"] = o.record.scored.graph.seed.id;
      e["stage"] = o.failed_stage;
      e["message"] = *o.error;
      e["severity"] = "error";
      errors << e.dump() << "\n";
      continue;
    }
    ++m.graphs_solved;
    m.seeds.generated += 1;
    m.seeds.kept += 1;
    m.implications.generated += o.generated_implications;
    m.implications.kept += o.record.scored.graph.implications.size();
    m.contradictions.generated += o.generated_contradictions;
    m.contradictions.kept += o.record.scored.graph.contradictions.size();
    for (const Statement* s : o.record.scored.graph.statements()) {
      if (!o.record.solve->assignment.at(s->id)) continue;
      switch (class_of(*s)) {
        case StatementClass::Seed: ++m.seeds.inferred_true; break;
        case StatementClass::Implication: ++m.implications.inferred_true; break;
        case StatementClass::Contradiction: ++m.contradictions.inferred_true; break;
      }
    }
    solved.push_back(o.record);
  }

  QaEmitter qa{&lm_, &templates_.get(TemplateName::QaConversion), config_.generation.sampling};
  const EmitResult emitted = emit_dataset(solved, config_.task_style, qa);
  for (const auto& w : emitted.warnings) {
    ordered_json e;
    e["seed_id"] = nullptr;
    e["stage"] = "emission";
    e["message"] = w;
    e["severity"] = "warning";
    errors << e.dump() << "\n";
  }
  m.warnings += emitted.warnings.size();

  // Attribute each record back to its statement's class.
  std::map<std::pair<std::string, std::string>, StatementClass> classes;
  for (const auto& g : solved)
    for (const Statement* s : g.scored.graph.statements()) classes[{g.scored.graph.id(), s->id}] = class_of(*s);

  std::ofstream dataset(out_dir / "dataset.jsonl", std::ios::binary);
  for (const auto& r : emitted.records) {
    dataset << r.to_json().dump() << "\n";
    switch (classes.at({r.graph_id, r.source_id})) {
      case StatementClass::Seed: ++m.seeds.emitted; break;
      case StatementClass::Implication: ++m.implications.emitted; break;
      case StatementClass::Contradiction: ++m.contradictions.emitted; break;
    }
  }
  m.records = emitted.records.size();
  m.finished_at = timestamp(config_);

  std::ofstream(out_dir / "manifest.json", std::ios::binary) << dump_pretty(m.to_json());
  return m;
}

std::unique_ptr<LanguageModel> make_language_model(const LmSettings& settings, const TemplateSet& templates) {
  if (settings.backend == "mock")
    return std::make_unique<ScriptedModel>(ScriptedModel::from_file(settings.mock_script, templates));
  return std::make_unique<HttpCompletionClient>(settings.endpoint);
}

TemplateSet load_templates(const RunConfig& config) {
  return config.prompts_dir ? TemplateSet::load_dir(*config.prompts_dir) : TemplateSet::builtin();
}

RunManifest run_from_config(const fs::path& config_path) {
  const RunConfig cfg = RunConfig::load(config_path);
  if (const auto p = cfg.problems(); !p.empty()) throw ContractError("invalid run config: " + p.front());
  TemplateSet templates = load_templates(cfg);
  auto lm = make_language_model(cfg.lm, templates);
  Pipeline pipeline(cfg, *lm, std::move(templates));
  return pipeline.run();
}

}  // namespace dct
