#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symq/born.hpp"
#include "symq/hilbert.hpp"
#include "symq/inference.hpp"
#include "symq/reduction.hpp"
#include "symq/scenario.hpp"
#include "symq/states.hpp"
#include "symq/tolerances.hpp"

namespace symq {

struct PipelineResult {
  int exit_code = 0;  // 0 all checks pass, 1 a check failed
  std::string report;
  std::vector<std::pair<std::string, std::string>> files;  // name -> content
};

// Everything the quantum commands share: assumption report, transition
// family, representation, states, and operators. Construction failures are
// captured as notes instead of escaping, so reports can show them.
struct QuantumContext {
  std::optional<AssumptionReport> assumptions;
  std::optional<TransitionFamily> family;
  std::optional<AbstractRep> w;
  std::optional<BaseStructure> base;
  std::optional<StateTable> states;
  std::vector<std::optional<Matrix>> operators;  // per experiment
  std::string failure;                            // empty when fully built
  int base_index = -1;
};

QuantumContext build_context(const BuiltScenario& scn, const Tolerances& tol);

PipelineResult run_validate(const BuiltScenario& scn, const Tolerances& tol);
PipelineResult run_build(const BuiltScenario& scn, const Tolerances& tol);
PipelineResult run_born(const BuiltScenario& scn, const std::string& a, const std::string& b,
                        const Tolerances& tol);
PipelineResult run_states(const BuiltScenario& scn, const Tolerances& tol);

struct SimulateOptions {
  std::string channel;               // empty = first declared channel
  std::string hypothesis;            // empty = drawn per lifetime
  long n = 1000;
  std::uint64_t seed = 1;
  long lifetime = 0;                 // trials per apparatus, 0 = whole run
};

PipelineResult run_simulate(const BuiltScenario& scn, const SimulateOptions& opt);

struct ReduceOptions {
  std::optional<std::vector<int>> subset;  // orbit-closure candidate
  std::optional<int> zero_patterns;        // coordinate count for the census
  std::string pattern;                     // single symbolic pattern to vet
};

PipelineResult run_reduce(const BuiltScenario& scn, const ReduceOptions& opt,
                          const Tolerances& tol);

// 12-significant-digit number formatting used by every report and CSV.
std::string fmt(double x);

}  // namespace symq
