#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "dct/eval.hpp"
#include "dct/graph_io.hpp"
#include "dct/pipeline.hpp"
#include "dct/prop1.hpp"
#include "dct/solver.hpp"

namespace fs = std::filesystem;

namespace {

dct::ordered_json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw dct::Error("cannot read " + path.string());
  return dct::ordered_json::parse(in);
}

// Graph files in seed-index order: numeric stems first, then lexicographic.
std::vector<fs::path> graph_files(const fs::path& run_dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(run_dir / "graphs"))
    if (e.path().extension() == ".json") files.push_back(e.path());
  auto key = [](const fs::path& p) {
    const std::string s = p.stem().string();
    const bool numeric = !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
    return std::make_tuple(!numeric, numeric ? std::stoull(s) : 0ULL, s);
  };
  std::sort(files.begin(), files.end(), [&](const fs::path& a, const fs::path& b) { return key(a) < key(b); });
  return files;
}

std::ostream& output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw dct::Error("cannot write " + path);
  return file;
}

int cmd_run(const std::string& config) {
  const auto m = dct::run_from_config(config);
  std::cout << m.to_json().at("counts").dump() << "\n";
  std::cerr << "graphs solved: " << m.graphs_solved << ", failed: " << m.graphs_failed << ", records: " << m.records
            << "\n";
  return m.graphs_solved > 0 ? 0 : 1;
}

int cmd_solve(const std::string& graph_path, const std::string& solver, const std::string& out_path) {
  auto record = dct::read_graph_file(graph_path);
  if (const auto p = record.scored.validate(); !p.empty()) throw dct::ContractError("invalid graph: " + p.front());
  if (solver == "closed-form") record.solve = dct::closed_form_best(record.scored);
  else if (solver == "brute-force") record.solve = dct::brute_force_best(record.scored);
  else record.solve = dct::best_assignment(record.scored);
  std::ofstream file;
  output(out_path, file) << dct::dump_pretty(dct::to_json(record));
  return 0;
}

dct::RunConfig run_config_of(const fs::path& run_dir) {
  return dct::RunConfig::from_json(read_json_file(run_dir / "manifest.json").at("config"), run_dir);
}

int cmd_emit(const std::string& run_dir, const std::string& style_name, const std::string& out_path) {
  const auto style = dct::parse_task_style(style_name);
  std::vector<dct::GraphRecord> graphs;
  for (const auto& f : graph_files(run_dir)) graphs.push_back(dct::read_graph_file(f));

  std::unique_ptr<dct::LanguageModel> lm;
  std::optional<dct::TemplateSet> templates;
  dct::QaEmitter qa;
  if (style == dct::TaskStyle::Qa) {
    const auto cfg = run_config_of(run_dir);
    templates = dct::load_templates(cfg);
    lm = dct::make_language_model(cfg.lm, *templates);
    qa = {lm.get(), &templates->get(dct::TemplateName::QaConversion), cfg.generation.sampling};
  }
  const auto result = dct::emit_dataset(graphs, style, qa);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  std::ofstream file;
  auto& out = output(out_path, file);
  for (const auto& r : result.records) out << r.to_json().dump() << "\n";
  return 0;
}

void print_metrics(const dct::ordered_json& j) { std::cout << j.dump() << "\n"; }

int cmd_simulate(const std::string& world_path, const std::string& question, int trials, std::uint64_t rng_seed,
                 int max_questions, int max_answers) {
  auto report_world = [&](const dct::ToyWorld& w, std::optional<std::size_t> only, const dct::ordered_json& extra) {
    std::vector<std::size_t> qs = only ? std::vector<std::size_t>{*only} : dct::reachable_questions(w);
    for (const auto q : qs) {
      auto j = extra;
      j.update(dct::verify_prop1(w, q).to_json());
      std::cout << j.dump() << "\n";
    }
  };
  if (!world_path.empty()) {
    const auto w = dct::ToyWorld::from_json(read_json_file(world_path));
    std::optional<std::size_t> only;
    if (!question.empty()) only = w.question_index(question);
    report_world(w, only, dct::ordered_json::object());
  }
  if (trials > 0) {
    std::mt19937_64 rng(rng_seed);
    std::uniform_int_distribution<int> nq(1, max_questions), na(2, std::max(2, max_answers));
    for (int t = 0; t < trials; ++t) {
      const int q = nq(rng), a = na(rng);
      const auto w = dct::random_world(rng, static_cast<std::size_t>(q), static_cast<std::size_t>(a), t % 2 == 0);
      dct::ordered_json extra;
      extra["trial"] = t;
      report_world(w, std::nullopt, extra);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deductive closure training data engine"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the generation, solving and emission pipeline");
  std::string config;
  run->add_option("--config", config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);

  auto* solve = app.add_subcommand("solve", "Solve one graph file");
  std::string graph, solver = "closed-form", solve_out;
  solve->add_option("--graph", graph, "Graph file")->required()->check(CLI::ExistingFile);
  solve->add_option("--solver", solver, "Solver")
      ->check(CLI::IsMember({"closed-form", "brute-force", "branch-and-bound"}));
  solve->add_option("--out", solve_out, "Output file (default stdout)");

  auto* emit = app.add_subcommand("emit", "Re-emit a dataset from a run directory");
  std::string run_dir, style = "verification", emit_out;
  emit->add_option("--run", run_dir, "Run output directory")->required()->check(CLI::ExistingDirectory);
  emit->add_option("--style", style, "Task style")->check(CLI::IsMember({"verification", "free-text", "qa"}));
  emit->add_option("--out", emit_out, "Output file (default stdout)");

  auto* eval = app.add_subcommand("eval", "Evaluation metrics");
  eval->require_subcommand(1);
  std::string pred, gold, answers, claims, eval_config, eval_out;
  auto* verify = eval->add_subcommand("verify", "Fact-verification accuracy");
  verify->add_option("--pred", pred, "Predictions {text, pred}")->required()->check(CLI::ExistingFile);
  verify->add_option("--gold", gold, "Gold claims {text, gold}")->required()->check(CLI::ExistingFile);
  auto* contrast = eval->add_subcommand("contrast", "Contrast-pair metrics");
  contrast->add_option("--pred", pred, "Predictions {text, pred}")->required()->check(CLI::ExistingFile);
  contrast->add_option("--gold", gold, "Gold claims {text, gold, pair_id}")->required()->check(CLI::ExistingFile);
  auto* qa = eval->add_subcommand("qa", "Exact-match QA accuracy");
  qa->add_option("--answers", answers, "Answers {question, answer}")->required()->check(CLI::ExistingFile);
  qa->add_option("--gold", gold, "Gold items {question, gold_answers}")->required()->check(CLI::ExistingFile);
  auto* gi = eval->add_subcommand("graph-inference", "Label claims by solving their deduction graphs");
  gi->add_option("--claims", claims, "Claims {text[, gold]}")->required()->check(CLI::ExistingFile);
  gi->add_option("--config", eval_config, "Run configuration for the model")->required()->check(CLI::ExistingFile);
  gi->add_option("--out", eval_out, "Predictions output (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Check the seed-prompting improvement bound on toy worlds");
  std::string world, question;
  int trials = 0, max_q = 5, max_a = 5;
  std::uint64_t rng_seed = 0;
  simulate->add_option("--world", world, "World file (JSON)")->check(CLI::ExistingFile);
  simulate->add_option("--question", question, "Question id (default: every reachable question)");
  simulate->add_option("--random-trials", trials, "Random worlds to check")->check(CLI::NonNegativeNumber);
  simulate->add_option("--rng-seed", rng_seed, "Seed for random worlds");
  simulate->add_option("--max-questions", max_q, "Largest random world, questions")->check(CLI::Range(1, 5));
  simulate->add_option("--max-answers", max_a, "Largest random world, answers")->check(CLI::Range(2, 5));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config);
    if (*solve) return cmd_solve(graph, solver, solve_out);
    if (*emit) return cmd_emit(run_dir, style, emit_out);
    if (*verify) {
      dct::ordered_json j;
      j["accuracy"] = dct::verification_accuracy(dct::read_predictions(pred), dct::read_labeled_claims(gold));
      print_metrics(j);
    } else if (*contrast) {
      const auto m = dct::contrast_metrics(dct::read_predictions(pred), dct::read_labeled_claims(gold));
      dct::ordered_json j;
      j["pairs"] = m.pairs;
      j["both_true"] = m.both_true;
      j["both_correct"] = m.both_correct;
      j["accuracy"] = m.accuracy;
      print_metrics(j);
    } else if (*qa) {
      dct::ordered_json j;
      j["accuracy"] = dct::qa_accuracy(dct::read_qa_answers(answers), dct::read_qa_items(gold));
      print_metrics(j);
    } else if (*gi) {
      auto cfg = dct::RunConfig::load(eval_config);
      auto templates = dct::load_templates(cfg);
      auto lm = dct::make_language_model(cfg.lm, templates);
      dct::Pipeline pipeline(cfg, *lm, std::move(templates));
      std::ofstream file;
      auto& out = output(eval_out, file);
      const auto items = dct::read_claims(claims);
      std::vector<std::string> texts;
      for (const auto& c : items) texts.push_back(c.text);
      const auto preds = dct::graph_inference_labels(pipeline, texts);
      std::size_t correct = 0, labeled = 0;
      for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& c = items[i];
        const bool p = preds[i];
        dct::ordered_json j;
        j["text"] = c.text;
        j["pred"] = p;
        out << j.dump() << "\n";
        if (c.gold) {
          ++labeled;
          correct += *c.gold == p ? 1 : 0;
        }
      }
      if (labeled > 0)
        std::cerr << "accuracy: " << static_cast<double>(correct) / static_cast<double>(labeled) << "\n";
    } else if (*simulate) {
      if (world.empty() && trials == 0) throw dct::ContractError("simulate needs --world or --random-trials");
      return cmd_simulate(world, question, trials, rng_seed, max_q, max_a);
    }
  } catch (const std::exception& e) {
    std::cerr << "dct: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
