#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {
namespace {

double clamp(double p) { return std::min(std::max(p, dct::kPriorEpsilon), 1.0 - dct::kPriorEpsilon); }

// Inverse-CDF draw; the last index absorbs rounding slack.
std::size_t draw(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

std::vector<double> cdf_of(const std::vector<double>& p) {
  std::vector<double> c(p.size());
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) c[i] = (s += p[i]);
  return c;
}

}  // namespace

Best enumerate(const std::vector<double>& priors, std::size_t n_implications, bool seed_fixed_true) {
  const std::size_t n = priors.size();
  Best best;
  bool have = false;
  // Visit assignments in preference order (seed true first, then earlier children true),
  // replacing only on a strict improvement, so ties keep the preferred assignment.
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    std::vector<bool> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = ((code >> (n - 1 - i)) & 1U) == 0;
    if (seed_fixed_true && !bits[0]) continue;
    bool ok = true;
    for (std::size_t i = 1; i < n; ++i) {
      const bool implication = i <= n_implications;
      const bool child_ok = implication ? bits[i] : !bits[i];
      if (bits[0] && !child_ok) ok = false;
    }
    if (!ok) continue;
    ++best.consistent_count;
    double log_score = 0.0;
    for (std::size_t i = 0; i < n; ++i) log_score += std::log(bits[i] ? clamp(priors[i]) : 1.0 - clamp(priors[i]));
    if (!have || log_score > best.log_score) {
      best.bits = bits;
      best.log_score = log_score;
      have = true;
    }
  }
  return best;
}

dct::ScoredGraph random_graph(std::mt19937_64& rng, std::size_t max_children, bool seed_fixed_true) {
  std::uniform_int_distribution<std::size_t> total(0, max_children);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t k = total(rng);
  std::uniform_int_distribution<std::size_t> split(0, k);
  const std::size_t k_imp = split(rng);

  dct::DeductionGraph g;
  g.seed = {"0", "seed claim", dct::StatementKind::Seed, std::nullopt, dct::Origin::External, std::nullopt};
  g.seed_fixed_true = seed_fixed_true;
  for (std::size_t i = 0; i < k; ++i) {
    dct::Statement c{dct::child_id("0", i + 1), "child claim " + std::to_string(i + 1),
                     i < k_imp ? dct::StatementKind::Implication : dct::StatementKind::Contradiction, "0",
                     dct::Origin::LmSampled, std::nullopt};
    (i < k_imp ? g.implications : g.contradictions).push_back(std::move(c));
  }
  std::vector<double> priors(g.size());
  for (auto& p : priors) {
    do p = unit(rng);
    while (p <= 0.0);
  }
  return dct::ScoredGraph::from_ordered(std::move(g), priors);
}

double question_marginal(const dct::ToyWorld& w, std::size_t q) {
  double m = 0.0;
  for (std::size_t q0 = 0; q0 < w.n_questions(); ++q0) m += w.seed_prior[q0] * w.question_kernel[q0][q];
  return m;
}

Estimate monte_carlo_p_dct(const dct::ToyWorld& w, std::size_t q, std::uint64_t accepted_samples,
                           std::mt19937_64& rng) {
  const std::size_t nq = w.n_questions(), na = w.n_answers();
  const auto seed_cdf = cdf_of(w.seed_prior);
  std::vector<std::vector<double>> question_cdf, answer_cdf;
  for (std::size_t q0 = 0; q0 < nq; ++q0) {
    question_cdf.push_back(cdf_of(w.question_kernel[q0]));
    answer_cdf.push_back(cdf_of(w.answer_kernel[q0]));
  }
  std::vector<std::vector<double>> prompted_cdf(nq * na);
  for (std::size_t q0 = 0; q0 < nq; ++q0)
    for (std::size_t a0 = 0; a0 < na; ++a0) {
      std::vector<double> row(na);
      for (std::size_t a = 0; a < na; ++a) row[a] = w.prompted(q, q0, a0, a);
      prompted_cdf[q0 * na + a0] = cdf_of(row);
    }

  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uint64_t hits = 0, accepted = 0;
  while (accepted < accepted_samples) {
    const std::size_t q0 = draw(seed_cdf, u(rng));
    if (draw(question_cdf[q0], u(rng)) != q) continue;
    const std::size_t a0 = draw(answer_cdf[q0], u(rng));
    const std::size_t a = draw(prompted_cdf[q0 * na + a0], u(rng));
    ++accepted;
    hits += a == w.correct[q] ? 1 : 0;
  }
  Estimate e;
  e.accepted = accepted;
  e.mean = static_cast<double>(hits) / static_cast<double>(accepted);
  e.standard_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(accepted));
  return e;
}

}  // namespace oracle
