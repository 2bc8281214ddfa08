#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dct/prop1.hpp"
#include "dct/solver.hpp"

namespace oracle {

// Direct enumeration straight from the definitions: consistency as the product of
// material implications, probability as a plain product (clamped like the solver).
struct Best {
  std::vector<bool> bits;  // seed, implications..., contradictions...
  double log_score = 0.0;
  std::size_t consistent_count = 0;
};

Best enumerate(const std::vector<double>& priors, std::size_t n_implications, bool seed_fixed_true);

// Random star graph with k_imp + k_con children and priors uniform in (0,1).
dct::ScoredGraph random_graph(std::mt19937_64& rng, std::size_t max_children, bool seed_fixed_true);

// Estimate of P(correct answer to q) after training, by ancestral sampling of
// (q0, q, a0, a) and rejecting draws whose follow-up question is not q.
struct Estimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t accepted = 0;
};

Estimate monte_carlo_p_dct(const dct::ToyWorld& world, std::size_t q, std::uint64_t accepted_samples,
                           std::mt19937_64& rng);

// Marginal probability that a generated follow-up question is q.
double question_marginal(const dct::ToyWorld& world, std::size_t q);

}  // namespace oracle
