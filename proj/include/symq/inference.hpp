#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "symq/rational.hpp"
#include "symq/scenario.hpp"

namespace symq {

enum class Mechanism { first_draw, either_draw };

Mechanism mechanism_from_text(const std::string& text);

// Exact outcome-1 probabilities by exhaustive enumeration of the sample
// space: 36 ordered die pairs, 30 ordered card draws from six cards with a
// single ace. Pure rational arithmetic.
Rational die_outcome_one(Mechanism m);
Rational cards_outcome_one(Mechanism m);

// Per-channel, per-hypothesis outcome-1 probability for a scenario: either
// the built-in two-draw model above or the scenario's likelihood table.
Rational outcome_one_probability(const ScenarioFile& scn, int channel, int hypothesis);

// Deterministic integer sampler: unbiased via top-bits rejection, so
// identical seeds give identical draws on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}
  int uniform(int k);            // uniform on {0..k-1}, k >= 1
  bool bernoulli(double p);      // 53-bit uniform against p

 private:
  std::mt19937_64 gen_;
};

struct SimulationResult {
  std::vector<std::uint8_t> bits;
  std::vector<int> hypothesis_per_trial;  // index into the hypothesis labels
  double frequency = 0.0;
};

// Runs n trials of one channel. A fixed hypothesis pins the apparatus
// content; otherwise a fresh hypothesis is drawn uniformly once per
// lifetime (lifetime 0 = one draw for the whole run). Both draws happen on
// every trial regardless of channel, keeping the random stream aligned.
SimulationResult simulate(const ScenarioFile& scn, int channel, std::optional<int> fixed_hypothesis,
                          long n, std::uint64_t seed, long lifetime = 0);

struct Posterior {
  std::vector<std::string> labels;
  std::vector<double> probabilities;
  std::string provenance;  // "prior" or a data summary
};

Posterior uniform_prior(const std::vector<std::string>& labels);

// Log-space Bayes update from a bitstream summary (only the counts matter
// for independent trials).
Posterior bayes_update(const Posterior& prior, const ScenarioFile& scn, int channel,
                       const std::vector<std::uint8_t>& bits);

}  // namespace symq
