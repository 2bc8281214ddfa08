#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "dct/graph_io.hpp"
#include "dct/statement.hpp"

namespace dct {

/// A finite question-answering model small enough to enumerate exactly.
///
/// A seed question q0 is drawn from `seed_prior`, answered with a0 from
/// `answer_kernel[q0]`, and a follow-up question q is drawn from `question_kernel[q0]`.
/// After training on such (q0, a0, q, a) documents to convergence, the model answers q
/// with the marginal of `prompted(q, q0, a0, .)` over the seed pair; `base_kernel[q]` is
/// the model's answer distribution before training.
struct ToyWorld {
  std::vector<std::string> questions;
  std::vector<std::string> answers;
  std::vector<std::size_t> correct;                      ///< [q] -> index of the correct answer
  std::vector<double> seed_prior;                        ///< [q0]
  std::vector<std::vector<double>> question_kernel;      ///< [q0][q]
  std::vector<std::vector<double>> answer_kernel;        ///< [q0][a0]
  std::vector<double> prompted_kernel;                   ///< flattened [q][q0][a0][a]
  std::vector<std::vector<double>> base_kernel;          ///< [q][a]

  std::size_t n_questions() const { return questions.size(); }
  std::size_t n_answers() const { return answers.size(); }

  double prompted(std::size_t q, std::size_t q0, std::size_t a0, std::size_t a) const {
    const std::size_t na = n_answers();
    return prompted_kernel[((q * n_questions() + q0) * na + a0) * na + a];
  }
  double& prompted(std::size_t q, std::size_t q0, std::size_t a0, std::size_t a) {
    const std::size_t na = n_answers();
    return prompted_kernel[((q * n_questions() + q0) * na + a0) * na + a];
  }

  /// Shape and normalization problems (every distribution must sum to 1 within 1e-12).
  std::vector<std::string> problems() const;

  std::size_t question_index(const std::string& id) const;

  /// Dense-table JSON: questions, answers, correct {q: a}, seed_prior, question_kernel,
  /// answer_kernel, prompted_kernel [q][q0][a0][a], base_kernel.
  static ToyWorld from_json(const ordered_json& j);
  ordered_json to_json() const;
};

class UndefinedPosteriorError : public Error {
 public:
  using Error::Error;
};

/// p(q0 | q) by Bayes' rule. Throws UndefinedPosteriorError when no seed reaches q.
std::vector<double> posterior_seed(const ToyWorld& world, std::size_t q);

/// Probability of the correct answer to q before training.
double p_lm(const ToyWorld& world, std::size_t q);

/// Probability of the correct answer to q after training to convergence:
/// sum over (q0, a0) of prompted(q, q0, a0, a*) p(a0 | q0) p(q0 | q).
double p_dct(const ToyWorld& world, std::size_t q);

struct AssumptionCheck {
  double p_star = 0.0;            ///< min over supported q0 of p(correct a0 | q0)
  bool assumption1 = false;       ///< p_star > 0
  bool assumption2 = false;       ///< p_star * E[prompted(a* | q, q0, a0*)] >= p_lm
  bool assumption2_strict = false;  ///< the same with margin above kStrictMargin
  double expected_prompted = 0.0;   ///< E_{q0|q} prompted(q, q0, a0*, a*)
};

/// Gap treated as numerically indistinguishable from equality.
inline constexpr double kStrictMargin = 1e-12;

AssumptionCheck check_assumptions(const ToyWorld& world, std::size_t q);

struct Prop1Report {
  std::size_t q = 0;
  std::string question;
  bool posterior_defined = true;  ///< false when no seed reaches q; nothing else is computed
  double p_star = 0.0;
  bool assumption1_holds = false;
  bool assumption2_holds = false;
  bool assumption2_strict = false;
  double p_lm = 0.0;
  double p_dct = 0.0;
  /// Bound after dropping seed pairs with a wrong answer.
  double bound_correct_seeds = 0.0;
  /// p_star times the expected prompted probability.
  double bound_p_star = 0.0;
  /// Each step of the chain p_dct >= bound_correct_seeds >= bound_p_star (>= p_lm under assumption 2).
  bool chain_holds = false;
  bool conclusion_holds = false;  ///< both assumptions hold and p_dct > p_lm strictly
  bool boundary = false;          ///< both assumptions hold and p_dct equals p_lm within kStrictMargin

  ordered_json to_json() const;
};

Prop1Report verify_prop1(const ToyWorld& world, std::size_t q);

/// Questions whose posterior is defined.
std::vector<std::size_t> reachable_questions(const ToyWorld& world);

/// Random world with every distribution drawn from a flat Dirichlet. When `helpful`,
/// prompting with a correct seed pair shifts mass toward the correct answer and seed
/// answers lean correct, so the assumptions are often met.
ToyWorld random_world(std::mt19937_64& rng, std::size_t n_questions, std::size_t n_answers, bool helpful);

}  // namespace dct
