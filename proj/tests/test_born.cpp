#include <cmath>

#include "doctest.h"
#include "symq/born.hpp"
#include "symq/errors.hpp"
#include "symq/scenario.hpp"

using namespace symq;

namespace {

std::string scenario_path(const std::string& name) {
  return std::string(SYMQ_SCENARIO_DIR) + "/" + name;
}

struct QuantumFixture {
  BuiltScenario scn;
  TransitionFamily family;
  AbstractRep w;
  StateTable table;
  int base;
  int experiments;

  explicit QuantumFixture(const std::string& name)
      : scn(load_and_build(scenario_path(name))), base(scn.file.base_index()) {
    const auto fs = build_transition_family(scn.file.parameters, scn.group, base);
    REQUIRE(fs.family.has_value());
    family = *fs.family;
    w = build_w_explicit(scn.file.explicit_rep->generator_images, scn.file.generators, scn.group,
                         scn.file.explicit_rep->projective);
    table = build_states(scn.file.parameters, w, family, base);
    experiments = static_cast<int>(scn.file.parameters.size());
  }
};

}  // namespace

TEST_SUITE("born") {

TEST_CASE("squared overlap with clamping band") {
  Vector a(2), b(2);
  a << 1.0, 0.0;
  b << 0.0, 1.0;
  CHECK(transition_probability(a, a) == 1.0);
  CHECK(transition_probability(a, b) == 0.0);

  // drift inside the band is clamped, drift beyond it is an error
  Vector slightly_long = a * std::sqrt(1.0 + 5e-13);
  CHECK(transition_probability(slightly_long, a) == 1.0);
  Vector too_long = a * std::sqrt(1.0 + 5e-11);
  CHECK_THROWS_AS(transition_probability(too_long, a), ValidationError);

  Vector c(3);
  c << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(transition_probability(a, c), DimensionMismatch);
}

TEST_CASE("transition matrices are doubly stochastic") {
  for (const char* name : {"qubit-tetra.scn", "spin-octa.scn"}) {
    QuantumFixture fx(name);
    for (int a = 0; a < fx.experiments; ++a)
      for (int b = 0; b < fx.experiments; ++b) {
        const TransitionMatrix m = transition_matrix(a, b, fx.table);
        CHECK(m.source == a);
        CHECK(m.target == b);
        const auto rep = check_doubly_stochastic(m);
        CHECK(rep.pass);
        CHECK(rep.worst_row < 1e-10);
        CHECK(rep.worst_col < 1e-10);
      }
  }
}

TEST_CASE("same experiment twice is the identity matrix") {
  QuantumFixture fx("qubit-tetra.scn");
  for (int a = 0; a < fx.experiments; ++a) {
    const TransitionMatrix m = transition_matrix(a, a, fx.table);
    CHECK((m.entries - RealMatrix::Identity(2, 2)).norm() < 1e-12);
  }
}

TEST_CASE("swapping the experiments transposes the matrix") {
  QuantumFixture fx("qubit-tetra.scn");
  for (int a = 0; a < fx.experiments; ++a)
    for (int b = 0; b < fx.experiments; ++b) {
      const TransitionMatrix ab = transition_matrix(a, b, fx.table);
      const TransitionMatrix ba = transition_matrix(b, a, fx.table);
      CHECK((ab.entries - ba.entries.transpose()).norm() < 1e-12);
    }
}

TEST_CASE("tetra cross-experiment probabilities are exactly one third") {
  QuantumFixture fx("qubit-tetra.scn");
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      const TransitionMatrix m = transition_matrix(a, b, fx.table);
      for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
          CHECK(m.entries(k, i) ==
                doctest::Approx(k == i ? 1.0 / 3.0 : 2.0 / 3.0).epsilon(1e-9));
    }
}

TEST_CASE("stochasticity check flags a broken matrix") {
  TransitionMatrix m;
  m.source = 0;
  m.target = 1;
  m.entries = RealMatrix::Zero(2, 2);
  m.entries << 0.6, 0.3, 0.4, 0.7;  // rows sum to 0.9 and 1.1
  const auto rep = check_doubly_stochastic(m);
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst_row == doctest::Approx(0.1));
}

TEST_CASE("densities reproduce distributions through measurement") {
  QuantumFixture fx("qubit-tetra.scn");

  RealVector uniform(2);
  uniform << 0.5, 0.5;
  const DensityMatrixT rho = density_from_distribution(uniform, 0, fx.table);
  for (int b = 0; b < fx.experiments; ++b) {
    const RealVector probs = born_with_density(rho, b, fx.table);
    for (int i = 0; i < probs.size(); ++i) CHECK(probs[i] == doctest::Approx(0.5).epsilon(1e-10));
  }

  // a crisp answer to experiment 1, interrogated by experiment 1
  RealVector point(2);
  point << 0.0, 1.0;
  const DensityMatrixT pure = density_from_distribution(point, 1, fx.table);
  const RealVector same = born_with_density(pure, 1, fx.table);
  CHECK(same[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(same[1] == doctest::Approx(1.0).epsilon(1e-12));
  // interrogated by another experiment it spreads one-third / two-thirds
  const RealVector other = born_with_density(pure, 2, fx.table);
  CHECK(other[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(other[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("conditional expectations interpolate the readings") {
  QuantumFixture fx("qubit-tetra.scn");
  const Matrix t_c = build_S(fx.scn.file.parameters[fx.base]);
  for (int a = 0; a < 4; ++a) {
    const Matrix t_a = build_T(a, fx.w, t_c, fx.family);
    for (int k = 0; k < 2; ++k) {
      // crisp answer to the same question: the declared reading itself
      const double own = conditional_expectation(fx.table.at(a, k).vector, t_a);
      CHECK(own == doctest::Approx(k == 0 ? 1.0 : -1.0).epsilon(1e-9));
    }
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      const Matrix t_b = build_T(b, fx.w, t_c, fx.family);
      // answer "up" to question a, asked about reading b:
      // (+1)(1/3) + (-1)(2/3) = -1/3
      const double cross = conditional_expectation(fx.table.at(a, 0).vector, t_b);
      CHECK(cross == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("probabilities are invariant under every relabeling") {
  for (const char* name : {"qubit-tetra.scn", "spin-octa.scn"}) {
    QuantumFixture fx(name);
    const InvarianceReport rep = check_probability_invariance(fx.w, fx.table);
    CHECK(rep.pass);
    CHECK(rep.worst < 1e-12);
    CHECK(rep.bad_element == -1);
  }
}

}  // TEST_SUITE
