#include <numeric>

#include "doctest.h"
#include "symq/errors.hpp"
#include "symq/reduction.hpp"

using namespace symq;

namespace {

std::vector<int> dims_of(const StrataReport& rep) {
  std::vector<int> out;
  for (const auto& s : rep.strata) out.push_back(s.dimension);
  return out;
}

}  // namespace

TEST_SUITE("reduction") {

TEST_CASE("closure under generators certifies closure under the group") {
  const FiniteGroup g = generate_group({Perm{3, 5, 1, 4, 0, 2}, Perm{1, 0, 3, 2, 5, 4}}, 6);
  const GroupAction act = defining_action(g);
  CHECK(orbit_closure_check({0, 1, 2, 3, 4, 5}, act).closed);
  CHECK(orbit_closure_check({}, act).closed);

  const ClosureVerdict open = orbit_closure_check({0, 1}, act);
  REQUIRE_FALSE(open.closed);
  // the witness actually escapes
  const int gen = g.generator_indices[open.generator];
  CHECK(act.act(gen, open.point) != 0);
  CHECK(act.act(gen, open.point) != 1);

  // closed subsets have closed complements
  const FiniteGroup rot = generate_group({Perm{3, 5, 1, 4, 0, 2}}, 6);
  const GroupAction rot_act = defining_action(rot);
  const std::vector<int> orbit{0, 3, 4};
  CHECK(orbit_closure_check(orbit, rot_act).closed);
  CHECK(orbit_closure_check({1, 2, 5}, rot_act).closed);

  CHECK_THROWS_AS(orbit_closure_check({9}, act), ValidationError);
}

TEST_CASE("every zero pattern is scaling-invariant") {
  const ZeroPatternCensus census = zero_pattern_census(3);
  CHECK(census.coordinates == 3);
  CHECK(census.patterns == 8);
  CHECK(census.all_closed);

  CHECK(zero_pattern_census(1).patterns == 2);
  CHECK(zero_pattern_census(20).patterns == 1048576);
  CHECK_THROWS_AS(zero_pattern_census(0), ValidationError);
  CHECK_THROWS_AS(zero_pattern_census(21), TooLarge);
}

TEST_CASE("the symbolic checker accepts only zero patterns") {
  const auto parsed = parse_zero_pattern("p_ab = 0, p_cd != 0");
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0] == std::make_pair(std::string("p_ab"), true));
  CHECK(parsed[1] == std::make_pair(std::string("p_cd"), false));

  // ties between coordinates are outside the certified class
  CHECK_THROWS_AS(parse_zero_pattern("p_ab = p_cd"), ValidationError);
  CHECK_THROWS_AS(parse_zero_pattern("p_ab < 0"), ValidationError);
  CHECK_THROWS_AS(parse_zero_pattern(""), ValidationError);
  CHECK_THROWS_AS(parse_zero_pattern(" , "), ValidationError);
}

TEST_CASE("single group of units: mean line plus contrasts") {
  const StrataReport rep = randomization_strata(8, {});
  CHECK(rep.units == 8);
  CHECK(rep.pair_classes == 2);  // diagonal and off-diagonal
  CHECK(rep.symmetry_group_order == 40320);
  CHECK(rep.transitive);
  CHECK(rep.checked_every_element);  // 8! is under the enumeration budget
  CHECK(rep.pattern_invariant);
  CHECK(rep.numeric_invariance_worst == 0.0);

  REQUIRE(dims_of(rep) == std::vector<int>{1, 7});
  CHECK(rep.strata[0].eigenvalue == doctest::Approx(23.0));  // 2 + 7*3
  CHECK(rep.strata[1].eigenvalue == doctest::Approx(-1.0));  // 2 - 3
  CHECK(rep.projector_sum_residual < 1e-10);
  CHECK(rep.strata_invariance_worst < 1e-10);
}

TEST_CASE("three equal blocks: mean, within-block, between-block") {
  const StrataReport rep =
      randomization_strata(12, {{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11}});
  CHECK(rep.pair_classes == 3);
  CHECK(rep.symmetry_group_order == 82944);  // (4!)^3 * 3!
  CHECK(rep.transitive);
  CHECK(rep.checked_every_element);
  CHECK(rep.pattern_invariant);

  REQUIRE(dims_of(rep) == std::vector<int>{1, 9, 2});
  CHECK(rep.strata[0].eigenvalue == doctest::Approx(51.0));  // 2 + 3*3 + 8*5
  CHECK(rep.strata[1].eigenvalue == doctest::Approx(-1.0));  // 2 - 3
  CHECK(rep.strata[2].eigenvalue == doctest::Approx(-9.0));  // 2 + 3*3 - 4*5
  CHECK(rep.projector_sum_residual < 1e-10);
  CHECK(rep.strata_invariance_worst < 1e-10);

  // strata projectors commute with the instantiated pattern matrix itself
  RealMatrix c(12, 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) c(i, j) = rep.instantiation[rep.class_of[i][j]];
  for (const auto& s : rep.strata)
    CHECK(frobenius(c.cast<Complex>() * s.projector - s.projector * c.cast<Complex>()) < 1e-9);
}

TEST_CASE("unequal blocks fall back to finer classes") {
  const StrataReport rep = randomization_strata(5, {{0, 1, 2}, {3, 4}});
  CHECK_FALSE(rep.transitive);  // no relabeling can move a size-3 unit to a size-2 block
  CHECK(rep.symmetry_group_order == 12);  // 3! * 2!, no block swap
  CHECK(rep.checked_every_element);
  CHECK(rep.pattern_invariant);
  CHECK(rep.projector_sum_residual < 1e-10);
  const std::vector<int> dims = dims_of(rep);
  CHECK(std::accumulate(dims.begin(), dims.end(), 0) == 5);
  // distinct diagonal classes for the two block sizes
  CHECK(rep.class_of[0][0] != rep.class_of[3][3]);
  CHECK(rep.class_of[0][1] != rep.class_of[3][4]);
}

TEST_CASE("large groups are certified through their generators") {
  std::vector<std::vector<int>> blocks(2);
  for (int u = 0; u < 8; ++u) blocks[0].push_back(u);
  for (int u = 8; u < 16; ++u) blocks[1].push_back(u);
  const StrataReport rep = randomization_strata(16, std::move(blocks));
  CHECK(rep.symmetry_group_order == 3251404800LL);  // (8!)^2 * 2!
  CHECK_FALSE(rep.checked_every_element);
  CHECK(rep.pattern_invariant);
  CHECK(rep.numeric_invariance_worst == 0.0);
  REQUIRE(dims_of(rep) == std::vector<int>{1, 14, 1});
  CHECK(rep.projector_sum_residual < 1e-10);
}

TEST_CASE("degenerate designs still resolve the identity") {
  const StrataReport lone = randomization_strata(1, {});
  CHECK(lone.checked_every_element);
  CHECK(dims_of(lone) == std::vector<int>{1});
  CHECK(lone.projector_sum_residual < 1e-12);

  const StrataReport singletons = randomization_strata(3, {{0}, {1}, {2}});
  const std::vector<int> singleton_dims = dims_of(singletons);
  CHECK(std::accumulate(singleton_dims.begin(), singleton_dims.end(), 0) == 3);
  CHECK(singletons.projector_sum_residual < 1e-10);
  CHECK(singletons.pattern_invariant);
}

TEST_CASE("malformed designs are rejected") {
  CHECK_THROWS_AS(randomization_strata(0, {}), ValidationError);
  CHECK_THROWS_AS(randomization_strata(65, {}), TooLarge);
  CHECK_THROWS_AS(randomization_strata(4, {{0, 1}, {1, 2, 3}}), ValidationError);
  CHECK_THROWS_AS(randomization_strata(4, {{0, 1}}), ValidationError);  // unit 2, 3 uncovered
  CHECK_THROWS_AS(randomization_strata(4, {{0, 1}, {2, 5}}), ValidationError);
}

}  // TEST_SUITE
