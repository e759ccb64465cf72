#include <algorithm>
#include <set>

#include "doctest.h"
#include "symq/errors.hpp"
#include "symq/group.hpp"
#include "symq/scenario.hpp"

using namespace symq;

namespace {

// hexagon-window relabelings of the six orderings of three symbols
const Perm kRot{3, 5, 1, 4, 0, 2};   // cyclic shift of the three symbols
const Perm kSwap{1, 0, 3, 2, 5, 4};  // swap of the last two symbols

Perm cycles(const std::string& text, int degree) {
  return parse_perm_text(text, degree, "test perm");
}

}  // namespace

TEST_SUITE("group") {

TEST_CASE("identity and composition convention") {
  const Perm e = identity_perm(4);
  CHECK(e == Perm{0, 1, 2, 3});
  CHECK(is_permutation(e));
  CHECK_FALSE(is_permutation(Perm{0, 0, 1}));

  // compose(f, s) applies f first: x -> s[f[x]]
  const Perm f{1, 2, 0};
  const Perm s{0, 2, 1};
  const Perm fs = compose_perms(f, s);
  for (int x = 0; x < 3; ++x) CHECK(fs[x] == s[f[x]]);
  CHECK(compose_perms(f, invert_perm(f)) == identity_perm(3));
  CHECK(compose_perms(invert_perm(f), f) == identity_perm(3));
}

TEST_CASE("cycle notation round trip") {
  CHECK(cycle_notation(identity_perm(6)) == "()");
  CHECK(cycle_notation(kRot) == "(0 3 4)(1 5 2)");
  CHECK(cycle_notation(kSwap) == "(0 1)(2 3)(4 5)");
  CHECK(cycles("(0 3 4)(1 5 2)", 6) == kRot);
  CHECK(cycles("()", 6) == identity_perm(6));
  CHECK(cycles("[1, 0, 3, 2, 5, 4]", 6) == kSwap);
}

TEST_CASE("closure of the order-6 relabeling group is deterministic") {
  const FiniteGroup g = generate_group({kRot, kSwap}, 6);
  REQUIRE(g.order() == 6);
  CHECK(g.identity_index == 0);
  CHECK(g.degree() == 6);
  CHECK(g.generator_indices == std::vector<int>{1, 2});

  // breadth-first from the identity, right-multiplying by the generators in
  // input order, fixes the enumeration completely
  CHECK(g.elements[0] == identity_perm(6));
  CHECK(g.elements[1] == kRot);
  CHECK(g.elements[2] == kSwap);
  CHECK(g.elements[3] == compose_perms(kRot, kRot));
  CHECK(g.elements[4] == compose_perms(kRot, kSwap));
  CHECK(g.elements[5] == compose_perms(kSwap, kRot));
  CHECK(g.elements[3] == Perm{4, 2, 5, 0, 3, 1});
  CHECK(g.elements[4] == Perm{2, 4, 0, 5, 1, 3});
  CHECK(g.elements[5] == Perm{5, 3, 4, 1, 2, 0});
}

TEST_CASE("cayley table and inverses agree with direct composition") {
  const FiniteGroup g = generate_group({kRot, kSwap}, 6);
  for (int i = 0; i < g.order(); ++i) {
    CHECK(compose_perms(g.elements[i], g.elements[g.inverse[i]]) == identity_perm(6));
    for (int j = 0; j < g.order(); ++j)
      CHECK(g.elements[g.compose(i, j)] == compose_perms(g.elements[i], g.elements[j]));
  }
  for (int i = 0; i < g.order(); ++i) CHECK(g.index_of(g.elements[i]) == i);
  CHECK(g.index_of(Perm{0, 1, 2, 3, 5, 4}) == -1);
}

TEST_CASE("act matches the right-action law") {
  const FiniteGroup g = generate_group({kRot, kSwap}, 6);
  for (int i = 0; i < g.order(); ++i)
    for (int j = 0; j < g.order(); ++j)
      for (int x = 0; x < 6; ++x)
        CHECK(g.act(g.compose(i, j), x) == g.act(j, g.act(i, x)));
}

TEST_CASE("cube-corner rotation group closes to order 24") {
  const Perm quarter = cycles("(0 2 6 4)(1 3 7 5)", 8);
  const Perm third = cycles("(1 2 4)(3 6 5)", 8);
  const FiniteGroup g = generate_group({quarter, third}, 8);
  CHECK(g.order() == 24);

  int fixing_corner0 = 0;
  for (const auto& p : g.elements)
    if (p[0] == 0) ++fixing_corner0;
  CHECK(fixing_corner0 == 3);  // orbit-stabilizer: 24 / 8

  std::set<Perm> distinct(g.elements.begin(), g.elements.end());
  CHECK(static_cast<int>(distinct.size()) == g.order());
}

TEST_CASE("empty generator list gives the trivial group") {
  const FiniteGroup g = generate_group({}, 5);
  CHECK(g.order() == 1);
  CHECK(g.elements[0] == identity_perm(5));
  CHECK(g.compose(0, 0) == 0);
  CHECK(g.inverse[0] == 0);
}

TEST_CASE("generation failures") {
  CHECK_THROWS_AS(generate_group({Perm{0, 0, 1}}, 3), NotBijective);
  // adjacent transpositions generate the full symmetric group; on six
  // points that is order 720, past any smaller cap
  std::vector<Perm> adjacent;
  for (int i = 0; i + 1 < 6; ++i) {
    Perm p = identity_perm(6);
    std::swap(p[i], p[i + 1]);
    adjacent.push_back(p);
  }
  CHECK_THROWS_AS(generate_group(adjacent, 6, 100), CapExceeded);
  CHECK(generate_group(adjacent, 6, 720).order() == 720);
}

TEST_CASE("subgroup carved from a parent keeps back-references") {
  const FiniteGroup g = generate_group({kRot, kSwap}, 6);
  const FiniteGroup flips = subgroup_from(g, {2});
  REQUIRE(flips.order() == 2);
  CHECK(flips.parent_index == std::vector<int>{0, 2});
  CHECK(flips.elements[1] == kSwap);
  CHECK(flips.compose(1, 1) == 0);

  const FiniteGroup rotations = subgroup_from(g, {1});
  REQUIRE(rotations.order() == 3);
  std::vector<int> parents = rotations.parent_index;
  std::sort(parents.begin(), parents.end());
  CHECK(parents == std::vector<int>{0, 1, 3});
}

TEST_CASE("orbit partition of a defining action") {
  const FiniteGroup g = generate_group({kRot, kSwap}, 6);
  const FiniteGroup flips = subgroup_from(g, {2});
  const Partition orbits = orbit_partition(defining_action(flips));
  REQUIRE(orbits.blocks.size() == 3);
  CHECK(orbits.blocks[0] == std::vector<int>{0, 1});
  CHECK(orbits.blocks[1] == std::vector<int>{2, 3});
  CHECK(orbits.blocks[2] == std::vector<int>{4, 5});
  CHECK(orbits.block_of(3) == 1);

  const Partition whole = orbit_partition(defining_action(g));
  CHECK(whole.blocks.size() == 1);  // transitive on all six orderings
}

TEST_CASE("canonical partition sorts blocks and members") {
  const Partition p = canonical_partition({{5, 3}, {0, 2}, {1, 4}});
  CHECK(p.blocks[0] == std::vector<int>{0, 2});
  CHECK(p.blocks[1] == std::vector<int>{1, 4});
  CHECK(p.blocks[2] == std::vector<int>{3, 5});
}

}  // TEST_SUITE
