#include "symq/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symq/errors.hpp"

namespace symq {

Mechanism mechanism_from_text(const std::string& text) {
  if (text == "first") return Mechanism::first_draw;
  if (text == "either") return Mechanism::either_draw;
  throw ValidationError("unknown mechanism '" + text + "'");
}

Rational die_outcome_one(Mechanism m) {
  int hits = 0, total = 0;
  for (int d1 = 0; d1 < 6; ++d1)
    for (int d2 = 0; d2 < 6; ++d2) {
      const bool b1 = d1 == 0, b2 = d2 == 0;
      hits += (m == Mechanism::first_draw ? b1 : (b1 || b2)) ? 1 : 0;
      ++total;
    }
  return Rational(hits, total);
}

Rational cards_outcome_one(Mechanism m) {
  int hits = 0, total = 0;
  for (int c1 = 0; c1 < 6; ++c1)
    for (int c2 = 0; c2 < 6; ++c2) {
      if (c1 == c2) continue;  // without replacement
      const bool b1 = c1 == 0, b2 = c2 == 0;  // card 0 is the ace
      hits += (m == Mechanism::first_draw ? b1 : (b1 || b2)) ? 1 : 0;
      ++total;
    }
  return Rational(hits, total);
}

namespace {

const ScenarioFile::Channel& channel_at(const ScenarioFile& scn, int channel) {
  if (channel < 0 || channel >= static_cast<int>(scn.channels.size()))
    throw UnknownExperiment("channel index out of range");
  return scn.channels[channel];
}

const std::vector<std::string>& hypothesis_labels(const ScenarioFile& scn) {
  const int b = scn.base_index();
  if (b < 0) throw ValidationError("scenario declares no hypothesis parameter");
  return scn.parameters[b].values;
}

}  // namespace

Rational outcome_one_probability(const ScenarioFile& scn, int channel, int hypothesis) {
  const auto& ch = channel_at(scn, channel);
  const auto& labels = hypothesis_labels(scn);
  if (hypothesis < 0 || hypothesis >= static_cast<int>(labels.size()))
    throw UnknownValue("hypothesis index out of range");
  const std::string& hyp = labels[hypothesis];
  if (scn.trial_model == "example1") {
    const Mechanism m = mechanism_from_text(ch.mechanism);
    if (hyp == "die") return die_outcome_one(m);
    if (hyp == "cards") return cards_outcome_one(m);
    throw ValidationError("the two-draw model knows no hypothesis '" + hyp + "'");
  }
  for (const auto& [label, p] : ch.likelihood)
    if (label == hyp) return p;
  throw ValidationError("channel '" + ch.name + "' has no likelihood for '" + hyp + "'");
}

int Sampler::uniform(int k) {
  if (k < 1) throw ValidationError("uniform() needs a positive range");
  if (k == 1) return 0;
  int bits = 0;
  while ((1 << bits) < k) ++bits;
  for (;;) {
    const auto r = static_cast<int>(gen_() >> (64 - bits));
    if (r < k) return r;
  }
}

bool Sampler::bernoulli(double p) {
  const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  return u < p;
}

SimulationResult simulate(const ScenarioFile& scn, int channel,
                          std::optional<int> fixed_hypothesis, long n, std::uint64_t seed,
                          long lifetime) {
  if (n < 1) throw ValidationError("trial count must be at least 1");
  const auto& ch = channel_at(scn, channel);
  const auto& labels = hypothesis_labels(scn);
  const int n_hyp = static_cast<int>(labels.size());
  if (fixed_hypothesis && (*fixed_hypothesis < 0 || *fixed_hypothesis >= n_hyp))
    throw UnknownValue("hypothesis index out of range");

  const bool two_draw = scn.trial_model == "example1";
  const Mechanism m = two_draw ? mechanism_from_text(ch.mechanism) : Mechanism::first_draw;
  std::vector<double> p_one;
  if (!two_draw)
    for (int h = 0; h < n_hyp; ++h) p_one.push_back(to_double(outcome_one_probability(scn, channel, h)));

  Sampler rng(seed);
  SimulationResult out;
  out.bits.reserve(n);
  out.hypothesis_per_trial.reserve(n);
  int hyp = fixed_hypothesis.value_or(-1);
  long hits = 0;
  for (long t = 0; t < n; ++t) {
    if (!fixed_hypothesis && (t == 0 || (lifetime > 0 && t % lifetime == 0)))
      hyp = rng.uniform(n_hyp);
    std::uint8_t bit = 0;
    if (two_draw) {
      bool b1, b2;
      if (labels[hyp] == "die") {
        b1 = rng.uniform(6) == 0;
        b2 = rng.uniform(6) == 0;
      } else {
        const int c1 = rng.uniform(6);
        const int c2 = rng.uniform(5);
        b1 = c1 == 0;
        b2 = c1 != 0 && c2 == 0;  // the ace leads the remaining five cards
      }
      bit = (m == Mechanism::first_draw ? b1 : (b1 || b2)) ? 1 : 0;
    } else {
      bit = rng.bernoulli(p_one[hyp]) ? 1 : 0;
    }
    out.bits.push_back(bit);
    out.hypothesis_per_trial.push_back(hyp);
    hits += bit;
  }
  out.frequency = static_cast<double>(hits) / static_cast<double>(n);
  return out;
}

Posterior uniform_prior(const std::vector<std::string>& labels) {
  Posterior p;
  p.labels = labels;
  p.probabilities.assign(labels.size(), 1.0 / static_cast<double>(labels.size()));
  p.provenance = "prior";
  return p;
}

Posterior bayes_update(const Posterior& prior, const ScenarioFile& scn, int channel,
                       const std::vector<std::uint8_t>& bits) {
  const long n1 = std::count(bits.begin(), bits.end(), std::uint8_t{1});
  const long n0 = static_cast<long>(bits.size()) - n1;
  const double neg_inf = -std::numeric_limits<double>::infinity();

  std::vector<double> log_post(prior.labels.size());
  for (std::size_t h = 0; h < prior.labels.size(); ++h) {
    if (prior.probabilities[h] <= 0.0) {
      log_post[h] = neg_inf;
      continue;
    }
    const double p = to_double(outcome_one_probability(scn, channel, static_cast<int>(h)));
    double ll = std::log(prior.probabilities[h]);
    if (n1 > 0) ll += (p > 0.0) ? n1 * std::log(p) : neg_inf;
    if (n0 > 0) ll += (p < 1.0) ? n0 * std::log1p(-p) : neg_inf;
    log_post[h] = ll;
  }
  const double top = *std::max_element(log_post.begin(), log_post.end());
  if (top == neg_inf) throw ZeroEvidence("every hypothesis assigns probability 0 to the data");

  Posterior out;
  out.labels = prior.labels;
  out.probabilities.resize(log_post.size());
  double total = 0.0;
  for (std::size_t h = 0; h < log_post.size(); ++h) {
    out.probabilities[h] = log_post[h] == neg_inf ? 0.0 : std::exp(log_post[h] - top);
    total += out.probabilities[h];
  }
  for (auto& q : out.probabilities) q /= total;
  out.provenance = "updated(n=" + std::to_string(bits.size()) + ", ones=" + std::to_string(n1) + ")";
  return out;
}

}  // namespace symq
