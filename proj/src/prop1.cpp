#include "dct/prop1.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dct {
namespace {

constexpr double kSumTolerance = 1e-12;

void check_distribution(const std::vector<double>& d, const std::string& what, std::vector<std::string>& out) {
  double sum = 0.0;
  for (const double v : d) {
    if (!(v >= 0.0 && v <= 1.0)) {
      out.push_back(what + " has an entry outside [0,1]");
      return;
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) out.push_back(what + " sums to " + std::to_string(sum));
}

std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = e(rng);
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto& x : v) x /= s;
  return v;
}

// Mixes `d` toward a point mass on `k` with weight `w`, keeping the sum at 1.
std::vector<double> tilt(std::vector<double> d, std::size_t k, double w) {
  for (auto& x : d) x *= 1.0 - w;
  d[k] += w;
  return d;
}

void require_posterior(const ToyWorld& w, std::size_t q) {
  if (q >= w.n_questions()) throw ContractError("question index out of range");
}

}  // namespace

std::vector<std::string> ToyWorld::problems() const {
  std::vector<std::string> out;
  const std::size_t nq = n_questions();
  const std::size_t na = n_answers();
  if (nq == 0 || na == 0) {
    out.push_back("world needs at least one question and one answer");
    return out;
  }
  if (correct.size() != nq) out.push_back("correct must map every question");
  for (const auto c : correct)
    if (c >= na) out.push_back("correct answer index out of range");
  if (seed_prior.size() != nq) out.push_back("seed_prior has wrong size");
  else check_distribution(seed_prior, "seed_prior", out);
  auto check_rows = [&](const std::vector<std::vector<double>>& k, std::size_t rows, std::size_t cols, const std::string& name) {
    if (k.size() != rows) {
      out.push_back(name + " has wrong row count");
      return;
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (k[r].size() != cols) out.push_back(name + " row " + std::to_string(r) + " has wrong width");
      else check_distribution(k[r], name + " row " + std::to_string(r), out);
    }
  };
  check_rows(question_kernel, nq, nq, "question_kernel");
  check_rows(answer_kernel, nq, na, "answer_kernel");
  check_rows(base_kernel, nq, na, "base_kernel");
  if (prompted_kernel.size() != nq * nq * na * na) {
    out.push_back("prompted_kernel has wrong size");
  } else {
    for (std::size_t q = 0; q < nq; ++q)
      for (std::size_t q0 = 0; q0 < nq; ++q0)
        for (std::size_t a0 = 0; a0 < na; ++a0) {
          std::vector<double> row(na);
          for (std::size_t a = 0; a < na; ++a) row[a] = prompted(q, q0, a0, a);
          check_distribution(row, "prompted_kernel[" + std::to_string(q) + "][" + std::to_string(q0) + "][" +
                                      std::to_string(a0) + "]",
                             out);
        }
  }
  return out;
}

std::size_t ToyWorld::question_index(const std::string& id) const {
  const auto it = std::find(questions.begin(), questions.end(), id);
  if (it == questions.end()) throw ContractError("unknown question '" + id + "'");
  return static_cast<std::size_t>(it - questions.begin());
}

ToyWorld ToyWorld::from_json(const ordered_json& j) {
  ToyWorld w;
  w.questions = j.at("questions").get<std::vector<std::string>>();
  w.answers = j.at("answers").get<std::vector<std::string>>();
  const auto& correct = j.at("correct");
  for (const auto& q : w.questions) {
    const auto a = correct.at(q).get<std::string>();
    const auto it = std::find(w.answers.begin(), w.answers.end(), a);
    if (it == w.answers.end()) throw ContractError("correct answer '" + a + "' is not an answer");
    w.correct.push_back(static_cast<std::size_t>(it - w.answers.begin()));
  }
  w.seed_prior = j.at("seed_prior").get<std::vector<double>>();
  w.question_kernel = j.at("question_kernel").get<std::vector<std::vector<double>>>();
  w.answer_kernel = j.at("answer_kernel").get<std::vector<std::vector<double>>>();
  w.base_kernel = j.at("base_kernel").get<std::vector<std::vector<double>>>();
  const auto nested = j.at("prompted_kernel").get<std::vector<std::vector<std::vector<std::vector<double>>>>>();
  for (const auto& a : nested)
    for (const auto& b : a)
      for (const auto& c : b) w.prompted_kernel.insert(w.prompted_kernel.end(), c.begin(), c.end());
  if (const auto p = w.problems(); !p.empty()) throw ContractError("invalid world: " + p.front());
  return w;
}

ordered_json ToyWorld::to_json() const {
  ordered_json j;
  j["questions"] = questions;
  j["answers"] = answers;
  ordered_json c = ordered_json::object();
  for (std::size_t q = 0; q < questions.size(); ++q) c[questions[q]] = answers[correct[q]];
  j["correct"] = std::move(c);
  j["seed_prior"] = seed_prior;
  j["question_kernel"] = question_kernel;
  j["answer_kernel"] = answer_kernel;
  const std::size_t nq = n_questions(), na = n_answers();
  ordered_json pk = ordered_json::array();
  for (std::size_t q = 0; q < nq; ++q) {
    ordered_json by_q0 = ordered_json::array();
    for (std::size_t q0 = 0; q0 < nq; ++q0) {
      ordered_json by_a0 = ordered_json::array();
      for (std::size_t a0 = 0; a0 < na; ++a0) {
        std::vector<double> row(na);
        for (std::size_t a = 0; a < na; ++a) row[a] = prompted(q, q0, a0, a);
        by_a0.push_back(row);
      }
      by_q0.push_back(std::move(by_a0));
    }
    pk.push_back(std::move(by_q0));
  }
  j["prompted_kernel"] = std::move(pk);
  j["base_kernel"] = base_kernel;
  return j;
}

std::vector<double> posterior_seed(const ToyWorld& world, std::size_t q) {
  require_posterior(world, q);
  std::vector<double> post(world.n_questions());
  double z = 0.0;
  for (std::size_t q0 = 0; q0 < post.size(); ++q0) {
    post[q0] = world.question_kernel[q0][q] * world.seed_prior[q0];
    z += post[q0];
  }
  if (!(z > 0.0)) throw UndefinedPosteriorError("question '" + world.questions[q] + "' is unreachable from every seed");
  for (auto& p : post) p /= z;
  return post;
}

double p_lm(const ToyWorld& world, std::size_t q) {
  require_posterior(world, q);
  return world.base_kernel[q][world.correct[q]];
}

double p_dct(const ToyWorld& world, std::size_t q) {
  const auto post = posterior_seed(world, q);
  const std::size_t target = world.correct[q];
  double total = 0.0;
  for (std::size_t q0 = 0; q0 < world.n_questions(); ++q0) {
    double inner = 0.0;
    for (std::size_t a0 = 0; a0 < world.n_answers(); ++a0)
      inner += world.prompted(q, q0, a0, target) * world.answer_kernel[q0][a0];
    total += post[q0] * inner;
  }
  return total;
}

AssumptionCheck check_assumptions(const ToyWorld& world, std::size_t q) {
  const auto post = posterior_seed(world, q);
  const std::size_t target = world.correct[q];
  AssumptionCheck c;
  c.p_star = 1.0;
  for (std::size_t q0 = 0; q0 < post.size(); ++q0) {
    if (post[q0] > 0.0) c.p_star = std::min(c.p_star, world.answer_kernel[q0][world.correct[q0]]);
    c.expected_prompted += post[q0] * world.prompted(q, q0, world.correct[q0], target);
  }
  c.assumption1 = c.p_star > 0.0;
  const double lhs = c.p_star * c.expected_prompted;
  const double base = p_lm(world, q);
  c.assumption2 = c.assumption1 && lhs >= base;
  c.assumption2_strict = c.assumption1 && lhs - base > kStrictMargin;
  return c;
}

Prop1Report verify_prop1(const ToyWorld& world, std::size_t q) {
  Prop1Report r;
  r.q = q;
  r.question = world.questions.at(q);
  const auto reachable = reachable_questions(world);
  if (std::find(reachable.begin(), reachable.end(), q) == reachable.end()) {
    r.posterior_defined = false;
    return r;
  }
  const auto post = posterior_seed(world, q);
  const auto check = check_assumptions(world, q);
  r.p_star = check.p_star;
  r.assumption1_holds = check.assumption1;
  r.assumption2_holds = check.assumption2;
  r.assumption2_strict = check.assumption2_strict;
  r.p_lm = p_lm(world, q);
  r.p_dct = p_dct(world, q);

  const std::size_t target = world.correct[q];
  for (std::size_t q0 = 0; q0 < post.size(); ++q0) {
    const std::size_t a0 = world.correct[q0];
    r.bound_correct_seeds += post[q0] * world.prompted(q, q0, a0, target) * world.answer_kernel[q0][a0];
  }
  r.bound_p_star = check.p_star * check.expected_prompted;

  auto geq = [](double a, double b) { return a >= b - kStrictMargin * std::max(1.0, std::abs(b)); };
  r.chain_holds = geq(r.p_dct, r.bound_correct_seeds) && geq(r.bound_correct_seeds, r.bound_p_star) &&
                  (!r.assumption2_holds || geq(r.bound_p_star, r.p_lm));

  const bool assumed = r.assumption1_holds && r.assumption2_holds;
  r.conclusion_holds = assumed && r.p_dct > r.p_lm;
  r.boundary = assumed && std::abs(r.p_dct - r.p_lm) <= kStrictMargin;
  return r;
}

ordered_json Prop1Report::to_json() const {
  ordered_json j;
  j["q"] = question;
  j["posterior_defined"] = posterior_defined;
  j["p_star"] = p_star;
  j["assumption1_holds"] = assumption1_holds;
  j["assumption2_holds"] = assumption2_holds;
  j["assumption2_strict"] = assumption2_strict;
  j["p_lm"] = p_lm;
  j["p_dct"] = p_dct;
  j["bound_correct_seeds"] = bound_correct_seeds;
  j["bound_p_star"] = bound_p_star;
  j["chain_holds"] = chain_holds;
  j["conclusion_holds"] = conclusion_holds;
  j["boundary"] = boundary;
  return j;
}

std::vector<std::size_t> reachable_questions(const ToyWorld& world) {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < world.n_questions(); ++q) {
    double z = 0.0;
    for (std::size_t q0 = 0; q0 < world.n_questions(); ++q0) z += world.question_kernel[q0][q] * world.seed_prior[q0];
    if (z > 0.0) out.push_back(q);
  }
  return out;
}

ToyWorld random_world(std::mt19937_64& rng, std::size_t nq, std::size_t na, bool helpful) {
  if (nq == 0 || na == 0) throw ContractError("random world needs questions and answers");
  ToyWorld w;
  for (std::size_t i = 0; i < nq; ++i) w.questions.push_back("q" + std::to_string(i));
  for (std::size_t i = 0; i < na; ++i) w.answers.push_back("a" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> pick_answer(0, na - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t q = 0; q < nq; ++q) w.correct.push_back(pick_answer(rng));

  w.seed_prior = dirichlet(rng, nq);
  for (std::size_t q0 = 0; q0 < nq; ++q0) {
    auto row = dirichlet(rng, nq);
    // Sparse kernels exercise the support restriction of the posterior.
    if (nq > 1 && unit(rng) < 0.3) {
      std::uniform_int_distribution<std::size_t> pick(0, nq - 1);
      const std::size_t drop = pick(rng);
      row[drop] = 0.0;
      const double s = std::accumulate(row.begin(), row.end(), 0.0);
      for (auto& x : row) x /= s;
    }
    w.question_kernel.push_back(std::move(row));
    auto answers = dirichlet(rng, na);
    if (helpful) answers = tilt(std::move(answers), w.correct[q0], 0.3 + 0.7 * unit(rng));
    w.answer_kernel.push_back(std::move(answers));
  }
  for (std::size_t q = 0; q < nq; ++q) w.base_kernel.push_back(dirichlet(rng, na));

  w.prompted_kernel.assign(nq * nq * na * na, 0.0);
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t q0 = 0; q0 < nq; ++q0)
      for (std::size_t a0 = 0; a0 < na; ++a0) {
        auto row = dirichlet(rng, na);
        if (helpful && a0 == w.correct[q0]) row = tilt(w.base_kernel[q], w.correct[q], unit(rng));
        for (std::size_t a = 0; a < na; ++a) w.prompted(q, q0, a0, a) = row[a];
      }
  return w;
}

}  // namespace dct
